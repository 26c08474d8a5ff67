#pragma once

#include "fusionmod/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace fusionmod {

// A permutation of {0..n-1} stored as an image vector: p[i] is where i goes.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Composition acts rightmost-first: (a*b)(x) = a(b(x)).
inline Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

inline Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
}

inline IntMatrix perm_matrix(const Perm& p) {
    const int n = static_cast<int>(p.size());
    IntMatrix m = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(p[static_cast<std::size_t>(i)], i) = 1;
    return m;
}

// Simultaneous conjugation P M P^T where row/column i of the result is
// row/column sigma(i) of the input, sigma = inverse image map of p.
inline IntMatrix conjugate(const IntMatrix& m, const Perm& p) {
    const int n = static_cast<int>(p.size());
    IntMatrix r(n, n);
    const Perm q = inverse(p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = m(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]);
    return r;
}

inline std::vector<IntMatrix> conjugate(const std::vector<IntMatrix>& ms, const Perm& p) {
    std::vector<IntMatrix> r;
    r.reserve(ms.size());
    for (const auto& m : ms) r.push_back(conjugate(m, p));
    return r;
}

std::vector<Perm> all_permutations(int n);

// All permutations p with conjugate(m, p) == m for every m in ms.
std::vector<Perm> matrix_stabilizer(const std::vector<IntMatrix>& ms, int n);

// Cycle notation parsing/printing over points 1..n, e.g. "(12)(34)" or "()".
Perm parse_cycles(const std::string& word, int n);
std::string cycle_string(const Perm& p);

// Sorted cycle lengths >= 2; the conjugacy invariant in a full symmetric group.
std::vector<int> cycle_type(const Perm& p);

int perm_order(const Perm& p);

}  // namespace fusionmod
