#include "fusionmod/ring.hpp"

#include <algorithm>
#include <cmath>

namespace fusionmod {

FusionRing::FusionRing(std::string id, std::vector<std::string> labels, int unit,
                       std::vector<int> dual, std::map<std::array<int, 3>, Int> struct_consts)
    : id_(std::move(id)),
      labels_(std::move(labels)),
      unit_(unit),
      dual_(std::move(dual)),
      struct_consts_(std::move(struct_consts)) {
    const int n = rank();
    if (n <= 0) throw Error("ring must have positive rank");
    if (unit_ < 0 || unit_ >= n) throw Error("unit index out of range");
    if (static_cast<int>(dual_.size()) != n) throw Error("dual map has wrong length");
    for (int d : dual_)
        if (d < 0 || d >= n) throw Error("dual index out of range");
    for (const auto& [key, value] : struct_consts_) {
        for (int idx : key)
            if (idx < 0 || idx >= n) throw Error("structure constant index out of range");
        if (value < 0) throw Error("structure constants must be nonnegative");
    }
}

Int FusionRing::c(int i, int j, int k) const {
    auto it = struct_consts_.find({i, j, k});
    return it == struct_consts_.end() ? 0 : it->second;
}

int FusionRing::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("ring '" + id_ + "' has no basis element '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

IntMatrix FusionRing::mult_matrix(int i) const {
    const int n = rank();
    if (i < 0 || i >= n) throw std::out_of_range("mult_matrix: basis index out of range");
    IntMatrix m(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) m(k, j) = c(i, j, k);
    return m;
}

ValidationReport validate_ring(const FusionRing& ring) {
    ValidationReport report;
    const int n = ring.rank();
    const int e = ring.unit();

    for (int i = 0; i < n; ++i) {
        if (ring.dual(ring.dual(i)) != i)
            report.add("dual is not an involution at " + ring.label(i));
    }

    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Int want = (j == k) ? 1 : 0;
            if (ring.c(e, j, k) != want)
                report.add("unit fails on the left at (" + ring.label(j) + ", " + ring.label(k) + ")");
            if (ring.c(j, e, k) != want)
                report.add("unit fails on the right at (" + ring.label(j) + ", " + ring.label(k) + ")");
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Int want = (j == ring.dual(i)) ? 1 : 0;
            if (ring.c(i, j, e) != want)
                report.add("tau-condition fails at (" + ring.label(i) + ", " + ring.label(j) + ")");
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (ring.c(i, j, k) != ring.c(ring.dual(j), ring.dual(i), ring.dual(k)))
                    report.add("duality anti-involution fails at (" + ring.label(i) + ", " +
                               ring.label(j) + ", " + ring.label(k) + ")");

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    Int lhs = 0, rhs = 0;
                    for (int m = 0; m < n; ++m) {
                        lhs = checked_add(lhs, checked_mul(ring.c(i, j, m), ring.c(m, k, l)));
                        rhs = checked_add(rhs, checked_mul(ring.c(j, k, m), ring.c(i, m, l)));
                    }
                    if (lhs != rhs)
                        report.add("associativity fails at (" + ring.label(i) + ", " + ring.label(j) +
                                   ", " + ring.label(k) + ", " + ring.label(l) + ")");
                }
            }
        }
    }

    return report;
}

FpdimVector fpdim_character(const FusionRing& ring) {
    const int n = ring.rank();
    FpdimVector result;
    result.dims.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double hint = spectral_radius(ring.mult_matrix(i));
        result.dims[static_cast<std::size_t>(i)] = static_cast<Int>(std::llround(hint));
    }

    // Certification: the rounded vector must satisfy every invariant exactly.
    const auto& d = result.dims;
    auto fail = [&](const std::string& why) { throw NotIntegral("fpdim_character: " + why); };
    for (int i = 0; i < n; ++i)
        if (d[static_cast<std::size_t>(i)] <= 0) fail("entry at " + ring.label(i) + " not positive");
    if (d[static_cast<std::size_t>(ring.unit())] != 1) fail("unit does not map to 1");
    for (int i = 0; i < n; ++i)
        if (d[static_cast<std::size_t>(ring.dual(i))] != d[static_cast<std::size_t>(i)])
            fail("not dual-invariant at " + ring.label(i));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Int rhs = 0;
            for (int k = 0; k < n; ++k)
                rhs = checked_add(rhs, checked_mul(ring.c(i, j, k), d[static_cast<std::size_t>(k)]));
            if (checked_mul(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]) != rhs)
                fail("homomorphism identity fails at (" + ring.label(i) + ", " + ring.label(j) + ")");
        }
    }
    return result;
}

}  // namespace fusionmod
