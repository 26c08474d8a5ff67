#include "fusionmod/core.hpp"

#include <Eigen/Eigenvalues>

namespace fusionmod {

bool is_permutation_matrix(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Int row_sum = 0, col_sum = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Int r = m(i, j), c = m(j, i);
            if (r < 0 || r > 1 || c < 0 || c > 1) return false;
            row_sum += r;
            col_sum += c;
        }
        if (row_sum != 1 || col_sum != 1) return false;
    }
    return true;
}

std::vector<Int> flatten(const IntMatrix& m) {
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

std::vector<Int> flatten(const std::vector<IntMatrix>& ms) {
    std::vector<Int> out;
    for (const auto& m : ms) {
        auto f = flatten(m);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

double perron_eigenvalue_symmetric(const IntMatrix& m) {
    if (!is_symmetric(m)) throw Error("perron_eigenvalue_symmetric: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.cast<double>());
    if (solver.info() != Eigen::Success) throw Error("eigenvalue computation failed");
    return solver.eigenvalues().maxCoeff();
}

double spectral_radius(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error("spectral_radius: matrix not square");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m.cast<double>());
    if (solver.info() != Eigen::Success) throw Error("eigenvalue computation failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace fusionmod
