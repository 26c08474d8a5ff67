#pragma once

#include "fusionmod/core.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fusionmod {

struct NotIntegral : Error {
    using Error::Error;
};

// A fusion ring: finite Z_+-basis, unit basis element, duality involution,
// and sparse structure constants c_{ij}^k (absent means zero). Immutable
// after construction and freely shareable across threads.
class FusionRing {
public:
    FusionRing(std::string id, std::vector<std::string> labels, int unit, std::vector<int> dual,
               std::map<std::array<int, 3>, Int> struct_consts);

    const std::string& id() const { return id_; }
    int rank() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    int unit() const { return unit_; }
    int dual(int i) const { return dual_.at(static_cast<std::size_t>(i)); }

    // c_{ij}^k, the coefficient of b_k in b_i * b_j.
    Int c(int i, int j, int k) const;

    int index_of(const std::string& label) const;  // throws on unknown label

    // Left multiplication by b_i in matrix form: (N_i)_{kj} = c_{ij}^k, so
    // column j is b_i * b_j expanded in the basis.
    IntMatrix mult_matrix(int i) const;

private:
    std::string id_;
    std::vector<std::string> labels_;
    int unit_;
    std::vector<int> dual_;
    std::map<std::array<int, 3>, Int> struct_consts_;
};

using RingPtr = std::shared_ptr<const FusionRing>;

// Checks all based-ring axioms exhaustively; every violation becomes a
// report entry, so a broken ring is fully described in one pass.
ValidationReport validate_ring(const FusionRing& ring);

struct FpdimVector {
    std::vector<Int> dims;
};

// The unique character with positive integer values on the basis. The Perron
// root of each multiplication matrix is only a floating-point hint; the
// candidate vector is certified exactly in integer arithmetic, and failure
// to certify means the ring is not integral.
FpdimVector fpdim_character(const FusionRing& ring);

struct BasedModule;
BasedModule regular_module(const RingPtr& ring);

}  // namespace fusionmod
