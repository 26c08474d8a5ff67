#pragma once

#include "fusionmod/catalog.hpp"

#include <initializer_list>
#include <random>

namespace testsupport {

using namespace fusionmod;

inline const Catalog& catalog() {
    static Catalog c = load_catalog(default_catalog_root());
    return c;
}

inline RingPtr s4_ring() { return catalog().ring_ptr("s4"); }

inline IntMatrix mat(std::initializer_list<std::initializer_list<Int>> rows) {
    const int n = static_cast<int>(rows.size());
    IntMatrix m(n, static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (Int v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline BasedModule s4_module(const IntMatrix& t, const IntMatrix& q, const IntMatrix& u) {
    const auto ring = s4_ring();
    const int n = static_cast<int>(t.rows());
    std::vector<IntMatrix> mats(5);
    mats[static_cast<std::size_t>(ring->index_of("1"))] = IntMatrix::Identity(n, n);
    mats[static_cast<std::size_t>(ring->index_of("psi"))] = t;
    mats[static_cast<std::size_t>(ring->index_of("rho1"))] = q;
    mats[static_cast<std::size_t>(ring->index_of("rho2"))] = u;
    mats[static_cast<std::size_t>(ring->index_of("rho3"))] = t * u;
    return make_module(ring, std::move(mats));
}

inline const Fixture& fixture(const std::string& label) {
    const Fixture* f = catalog().fixture_by_label(label);
    if (!f) throw Error("no fixture " + label);
    return *f;
}

// All symmetric matrices of the given size with entries in 0..bound, in a
// deterministic order. The building block of the brute-force enumerators.
inline std::vector<IntMatrix> all_symmetric(int n, Int bound) {
    const int vars = n * (n + 1) / 2;
    std::vector<IntMatrix> out;
    std::vector<Int> v(static_cast<std::size_t>(vars), 0);
    for (;;) {
        IntMatrix m(n, n);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                m(i, j) = v[static_cast<std::size_t>(idx)];
                m(j, i) = v[static_cast<std::size_t>(idx)];
                ++idx;
            }
        out.push_back(std::move(m));
        int k = vars - 1;
        while (k >= 0 && v[static_cast<std::size_t>(k)] == bound) v[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
        ++v[static_cast<std::size_t>(k)];
    }
    return out;
}

// Naive full enumerator of based modules over r(s4): the unit acts as the
// identity, every other matrix ranges over all bounded symmetric candidates,
// and the full representation property is the only filter. The psi*rho2
// identity pins the last matrix, so its loop collapses to a bound check.
inline std::vector<BasedModule> brute_force_s4_modules(int rank, Int bound) {
    const auto ring = s4_ring();
    const IntMatrix identity = IntMatrix::Identity(rank, rank);
    std::vector<BasedModule> found;
    const auto candidates = all_symmetric(rank, bound);
    for (const auto& t : candidates) {
        if (t * t != identity) continue;
        for (const auto& q : candidates) {
            if (t * q != q || q * t != q) continue;
            if (q * q != identity + t + q) continue;
            for (const auto& u : candidates) {
                const IntMatrix w = t * u;
                if (u * t != w) continue;
                if (q * u != u + w) continue;
                if (u * u != identity + q + u + w) continue;
                if (w.maxCoeff() > bound) continue;
                BasedModule m = s4_module(t, q, u);
                if (!check_representation(m).ok() || !check_based(m).ok()) continue;
                found.push_back(std::move(m));
            }
        }
    }
    return found;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, int n, Int bound) {
    std::uniform_int_distribution<Int> dist(0, bound);
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Int v = dist(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

inline Perm random_perm(std::mt19937_64& rng, int n) {
    Perm p = identity_perm(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace testsupport
