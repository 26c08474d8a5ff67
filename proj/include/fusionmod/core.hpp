#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusionmod {

// All module/ring data lives in dense integer matrices. Entries in this
// problem stay in single digits, but arithmetic is still guarded: products
// are bounds-checked before they are formed so a wraparound can never
// silently corrupt a classification.
using Int = std::int64_t;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FileError : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

// A check that found problems reports them all; an empty report means valid.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) {
            s += v;
            s += '\n';
        }
        return s;
    }
};

inline Int checked_mul(Int a, Int b) {
    if (a != 0 && (std::abs(a) > std::numeric_limits<Int>::max() / std::abs(b == 0 ? 1 : b))) {
        throw Error("integer overflow in multiplication");
    }
    return a * b;
}

inline Int checked_add(Int a, Int b) {
    if ((b > 0 && a > std::numeric_limits<Int>::max() - b) ||
        (b < 0 && a < std::numeric_limits<Int>::min() - b)) {
        throw Error("integer overflow in addition");
    }
    return a + b;
}

// Overflow-guarded product. Matrix dimensions and entries are tiny here, so
// the guard is a cheap max-entry bound rather than per-element checks.
inline IntMatrix checked_product(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix shape mismatch in product");
    const Int amax = a.size() ? a.cwiseAbs().maxCoeff() : 0;
    const Int bmax = b.size() ? b.cwiseAbs().maxCoeff() : 0;
    if (amax > 0 && bmax > 0) {
        const Int per_term = checked_mul(amax, bmax);
        checked_mul(per_term, static_cast<Int>(a.cols()));
    }
    return a * b;
}

inline bool is_identity(const IntMatrix& m) {
    return m.rows() == m.cols() && m == IntMatrix::Identity(m.rows(), m.cols());
}

inline bool is_symmetric(const IntMatrix& m) {
    return m.rows() == m.cols() && m == IntMatrix(m.transpose());
}

// 0/1 matrix with exactly one 1 per row and column.
bool is_permutation_matrix(const IntMatrix& m);

// Row-major flattening, the building block of canonical keys.
std::vector<Int> flatten(const IntMatrix& m);
std::vector<Int> flatten(const std::vector<IntMatrix>& ms);

// Largest eigenvalue of a symmetric integer matrix, in floating point.
double perron_eigenvalue_symmetric(const IntMatrix& m);

// Spectral radius of a general nonnegative integer matrix.
double spectral_radius(const IntMatrix& m);

}  // namespace fusionmod
