#pragma once

#include "fusionmod/perm.hpp"
#include "fusionmod/ring.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace fusionmod {

struct RingMismatch : Error {
    using Error::Error;
};

struct NotAnAutomorphism : Error {
    using Error::Error;
};

// A module over a fusion ring given by one nonnegative-integer n x n matrix
// per ring basis element (the unit's matrix is stored too and must be the
// identity). Immutable in spirit: operations return new modules.
struct BasedModule {
    RingPtr ring;
    int rank = 0;
    std::vector<IntMatrix> matrices;  // indexed by ring basis order

    bool same_ring(const BasedModule& o) const {
        return ring.get() == o.ring.get() || (ring && o.ring && ring->id() == o.ring->id());
    }
};

// The complete equivalence invariant: the row-major concatenation of the
// matrix tuple in ring-basis order, minimized lexicographically over
// simultaneous conjugation by all n x n permutation matrices.
struct CanonicalKey {
    std::vector<Int> flat;

    friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) { return a.flat == b.flat; }
    friend bool operator!=(const CanonicalKey& a, const CanonicalKey& b) { return !(a == b); }
    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) { return a.flat < b.flat; }
};

BasedModule make_module(RingPtr ring, std::vector<IntMatrix> matrices);

// Reports every pair (i, j) where M_i M_j != sum_k c_{ij}^k M_k, and whether
// the unit acts as the identity.
ValidationReport check_representation(const BasedModule& m);

// Reports every i with M_{i*} != M_i^T. For a ring with all basis elements
// self-dual this means all matrices must be symmetric.
ValidationReport check_based(const BasedModule& m);

IntMatrix support_sum(const BasedModule& m);

// Connected components of the support graph (edge wherever some action
// matrix has a positive entry), each sorted, ordered by smallest member.
std::vector<std::vector<int>> support_components(const BasedModule& m);

// Connectivity of the support graph. Only claimed for based modules, so the
// based condition is a hard precondition here.
bool is_irreducible(const BasedModule& m);

std::vector<BasedModule> decompose(const BasedModule& m);

CanonicalKey canonical_key(const BasedModule& m);
CanonicalKey canonical_key_of_tuple(const std::vector<IntMatrix>& matrices, int rank);

// The module conjugated into its canonical-key form.
BasedModule canonicalize(const BasedModule& m);

bool are_equivalent(const BasedModule& m1, const BasedModule& m2);

// Exchanges the matrices of basis elements i and j. Legal only when the
// transposition (i j) is an automorphism of the ring's structure constants.
BasedModule swap_rho(const BasedModule& m, int i, int j);

nlohmann::json module_to_json(const BasedModule& m);
BasedModule module_from_json(const nlohmann::json& j, RingPtr ring);

BasedModule regular_module(const RingPtr& ring);

// Block-diagonal direct sum; basis of `b` is appended after basis of `a`.
BasedModule direct_sum(const BasedModule& a, const BasedModule& b);

}  // namespace fusionmod
