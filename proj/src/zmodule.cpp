#include "fusionmod/zmodule.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace fusionmod {

BasedModule make_module(RingPtr ring, std::vector<IntMatrix> matrices) {
    if (!ring) throw Error("module needs a ring");
    if (static_cast<int>(matrices.size()) != ring->rank())
        throw Error("module needs one matrix per ring basis element");
    const Eigen::Index n = matrices.front().rows();
    for (const auto& m : matrices) {
        if (m.rows() != n || m.cols() != n) throw Error("module matrices must be square, same size");
        if (m.size() && m.minCoeff() < 0) throw Error("module matrices must be nonnegative");
    }
    BasedModule mod;
    mod.ring = std::move(ring);
    mod.rank = static_cast<int>(n);
    mod.matrices = std::move(matrices);
    return mod;
}

ValidationReport check_representation(const BasedModule& m) {
    ValidationReport report;
    const auto& ring = *m.ring;
    const int r = ring.rank();
    if (!is_identity(m.matrices[static_cast<std::size_t>(ring.unit())]))
        report.add("unit does not act as the identity");
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const IntMatrix lhs =
                checked_product(m.matrices[static_cast<std::size_t>(i)], m.matrices[static_cast<std::size_t>(j)]);
            IntMatrix rhs = IntMatrix::Zero(m.rank, m.rank);
            for (int k = 0; k < r; ++k) {
                const Int coeff = ring.c(i, j, k);
                if (coeff != 0) rhs += coeff * m.matrices[static_cast<std::size_t>(k)];
            }
            if (lhs != rhs)
                report.add("representation property fails at (" + ring.label(i) + ", " +
                           ring.label(j) + ")");
        }
    }
    return report;
}

ValidationReport check_based(const BasedModule& m) {
    ValidationReport report;
    const auto& ring = *m.ring;
    for (int i = 0; i < ring.rank(); ++i) {
        const IntMatrix t = m.matrices[static_cast<std::size_t>(i)].transpose();
        if (m.matrices[static_cast<std::size_t>(ring.dual(i))] != t)
            report.add("based condition fails at " + ring.label(i));
    }
    return report;
}

IntMatrix support_sum(const BasedModule& m) {
    IntMatrix s = IntMatrix::Zero(m.rank, m.rank);
    for (const auto& mat : m.matrices) s += mat;
    return s;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<std::vector<int>> support_components(const BasedModule& m) {
    const IntMatrix s = support_sum(m);
    UnionFind uf(m.rank);
    for (int i = 0; i < m.rank; ++i)
        for (int j = 0; j < m.rank; ++j)
            if (s(i, j) > 0) uf.unite(i, j);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < m.rank; ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> comps;
    for (auto& [root, members] : groups) comps.push_back(std::move(members));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

bool is_irreducible(const BasedModule& m) {
    if (!check_based(m).ok())
        throw PreconditionViolated("is_irreducible requires the based condition");
    return support_components(m).size() == 1;
}

std::vector<BasedModule> decompose(const BasedModule& m) {
    if (!check_based(m).ok())
        throw PreconditionViolated("decompose requires the based condition");
    std::vector<BasedModule> parts;
    for (const auto& comp : support_components(m)) {
        const int k = static_cast<int>(comp.size());
        std::vector<IntMatrix> mats;
        mats.reserve(m.matrices.size());
        for (const auto& mat : m.matrices) {
            IntMatrix sub(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    sub(a, b) = mat(comp[static_cast<std::size_t>(a)], comp[static_cast<std::size_t>(b)]);
            mats.push_back(std::move(sub));
        }
        parts.push_back(make_module(m.ring, std::move(mats)));
    }
    return parts;
}

namespace {

// Lexicographic minimization of the flattened tuple over simultaneous
// conjugation. sigma maps new index -> old index; the flat value at
// (r, i, j) is M_r(sigma(i), sigma(j)).
class KeySearch {
public:
    KeySearch(const std::vector<IntMatrix>& ms, int n) : ms_(ms), n_(n) {
        sigma_.assign(static_cast<std::size_t>(n), -1);
        used_.assign(static_cast<std::size_t>(n), false);
        cells();
    }

    std::vector<Int> run() {
        // Refinement-respecting orders first, to seed a tight bound, then the
        // unrestricted search proves minimality.
        dfs(0, true);
        dfs(0, false);
        return best_;
    }

    Perm best_sigma() const { return best_sigma_; }

private:
    // Indices with distinct invariants (diagonal entries and row multisets
    // across all matrices) can only beat each other in invariant order.
    void cells() {
        std::vector<std::vector<Int>> inv(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            auto& key = inv[static_cast<std::size_t>(v)];
            for (const auto& m : ms_) {
                key.push_back(m(v, v));
                std::vector<Int> row;
                for (int j = 0; j < n_; ++j) row.push_back(m(v, j));
                std::sort(row.begin(), row.end());
                key.insert(key.end(), row.begin(), row.end());
            }
        }
        std::vector<int> order(static_cast<std::size_t>(n_));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return inv[static_cast<std::size_t>(a)] < inv[static_cast<std::size_t>(b)];
        });
        cell_of_pos_.assign(static_cast<std::size_t>(n_), 0);
        cell_of_index_.assign(static_cast<std::size_t>(n_), 0);
        int cell = 0;
        for (int p = 0; p < n_; ++p) {
            if (p > 0 && inv[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] !=
                             inv[static_cast<std::size_t>(order[static_cast<std::size_t>(p - 1)])])
                ++cell;
            cell_of_pos_[static_cast<std::size_t>(p)] = cell;
            cell_of_index_[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = cell;
        }
    }

    void dfs(int k, bool restricted) {
        if (k == n_) {
            std::vector<Int> flat = flatten_sigma();
            if (best_.empty() || flat < best_) {
                best_ = std::move(flat);
                best_sigma_ = sigma_as_perm();
            }
            return;
        }
        if (!prefix_viable(k)) return;
        for (int o = 0; o < n_; ++o) {
            if (used_[static_cast<std::size_t>(o)]) continue;
            if (restricted && cell_of_index_[static_cast<std::size_t>(o)] != cell_of_pos_[static_cast<std::size_t>(k)])
                continue;
            sigma_[static_cast<std::size_t>(k)] = o;
            used_[static_cast<std::size_t>(o)] = true;
            dfs(k + 1, restricted);
            used_[static_cast<std::size_t>(o)] = false;
            sigma_[static_cast<std::size_t>(k)] = -1;
        }
    }

    // With k indices placed, the flat positions determined so far that form a
    // prefix in flat order are the first k entries of matrix 0's first row.
    // If that prefix already exceeds the incumbent, no completion can win.
    bool prefix_viable(int k) const {
        if (best_.empty() || k == 0) return true;
        const IntMatrix& m0 = ms_.front();
        const int s0 = sigma_[0];
        for (int j = 0; j < k; ++j) {
            const Int v = m0(s0, sigma_[static_cast<std::size_t>(j)]);
            if (v < best_[static_cast<std::size_t>(j)]) return true;
            if (v > best_[static_cast<std::size_t>(j)]) return false;
        }
        return true;
    }

    std::vector<Int> flatten_sigma() const {
        std::vector<Int> flat;
        flat.reserve(ms_.size() * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
        for (const auto& m : ms_)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    flat.push_back(m(sigma_[static_cast<std::size_t>(i)], sigma_[static_cast<std::size_t>(j)]));
        return flat;
    }

    Perm sigma_as_perm() const {
        Perm p(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(i)] = sigma_[static_cast<std::size_t>(i)];
        return p;
    }

    const std::vector<IntMatrix>& ms_;
    int n_;
    std::vector<int> sigma_;
    std::vector<bool> used_;
    std::vector<int> cell_of_pos_, cell_of_index_;
    std::vector<Int> best_;
    Perm best_sigma_;
};

}  // namespace

CanonicalKey canonical_key_of_tuple(const std::vector<IntMatrix>& matrices, int rank) {
    if (matrices.empty() || rank <= 0) throw Error("canonical key needs a nonempty tuple");
    KeySearch search(matrices, rank);
    return CanonicalKey{search.run()};
}

CanonicalKey canonical_key(const BasedModule& m) {
    return canonical_key_of_tuple(m.matrices, m.rank);
}

BasedModule canonicalize(const BasedModule& m) {
    KeySearch search(m.matrices, m.rank);
    search.run();
    // sigma maps new -> old; conjugate() wants the image map old -> new.
    const Perm relabel = inverse(search.best_sigma());
    return make_module(m.ring, conjugate(m.matrices, relabel));
}

bool are_equivalent(const BasedModule& m1, const BasedModule& m2) {
    if (!m1.same_ring(m2)) throw RingMismatch("modules live over different rings");
    if (m1.rank != m2.rank) return false;
    return canonical_key(m1) == canonical_key(m2);
}

BasedModule swap_rho(const BasedModule& m, int i, int j) {
    const auto& ring = *m.ring;
    const int r = ring.rank();
    if (i < 0 || i >= r || j < 0 || j >= r) throw std::out_of_range("swap_rho: index out of range");
    auto pi = [&](int x) { return x == i ? j : (x == j ? i : x); };
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int k = 0; k < r; ++k)
                if (ring.c(pi(a), pi(b), pi(k)) != ring.c(a, b, k))
                    throw NotAnAutomorphism("relabeling " + ring.label(i) + " <-> " + ring.label(j) +
                                            " is not a ring automorphism");
    auto mats = m.matrices;
    std::swap(mats[static_cast<std::size_t>(i)], mats[static_cast<std::size_t>(j)]);
    return make_module(m.ring, std::move(mats));
}

nlohmann::json module_to_json(const BasedModule& m) {
    nlohmann::json j;
    j["schema"] = 1;
    j["ring"] = m.ring->id();
    j["rank"] = m.rank;
    nlohmann::json mats = nlohmann::json::object();
    for (int i = 0; i < m.ring->rank(); ++i) {
        nlohmann::json rows = nlohmann::json::array();
        const auto& mat = m.matrices[static_cast<std::size_t>(i)];
        for (int a = 0; a < m.rank; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int b = 0; b < m.rank; ++b) row.push_back(mat(a, b));
            rows.push_back(std::move(row));
        }
        mats[m.ring->label(i)] = std::move(rows);
    }
    j["matrices"] = std::move(mats);
    return j;
}

BasedModule module_from_json(const nlohmann::json& j, RingPtr ring) {
    if (!ring) throw Error("module_from_json needs a ring");
    if (j.contains("ring") && j.at("ring").get<std::string>() != ring->id())
        throw Error("module file names ring '" + j.at("ring").get<std::string>() +
                    "', expected '" + ring->id() + "'");
    const int n = j.at("rank").get<int>();
    if (n <= 0) throw Error("module rank must be positive");

    const int r = ring->rank();
    std::vector<IntMatrix> mats(static_cast<std::size_t>(r));
    std::vector<bool> have(static_cast<std::size_t>(r), false);

    auto read_matrix = [&](const nlohmann::json& rows) {
        if (static_cast<int>(rows.size()) != n) throw Error("matrix has wrong number of rows");
        IntMatrix m(n, n);
        for (int a = 0; a < n; ++a) {
            const auto& row = rows.at(static_cast<std::size_t>(a));
            if (static_cast<int>(row.size()) != n) throw Error("matrix has wrong number of columns");
            for (int b = 0; b < n; ++b) m(a, b) = row.at(static_cast<std::size_t>(b)).get<Int>();
        }
        return m;
    };

    for (const auto& [label, rows] : j.at("matrices").items()) {
        const int idx = ring->index_of(label);
        mats[static_cast<std::size_t>(idx)] = read_matrix(rows);
        have[static_cast<std::size_t>(idx)] = true;
    }

    if (!have[static_cast<std::size_t>(ring->unit())]) {
        mats[static_cast<std::size_t>(ring->unit())] = IntMatrix::Identity(n, n);
        have[static_cast<std::size_t>(ring->unit())] = true;
    }

    // Optional "derive" entries name a matrix as a product of two stored ones,
    // e.g. "rho3": "psi*rho2" when a file lists only the generating matrices.
    if (j.contains("derive")) {
        for (const auto& [label, expr] : j.at("derive").items()) {
            const std::string text = expr.get<std::string>();
            const auto star = text.find('*');
            if (star == std::string::npos) throw Error("derive expression must be a product: " + text);
            const int lhs = ring->index_of(text.substr(0, star));
            const int rhs = ring->index_of(text.substr(star + 1));
            if (!have[static_cast<std::size_t>(lhs)] || !have[static_cast<std::size_t>(rhs)])
                throw Error("derive expression references a missing matrix: " + text);
            const int idx = ring->index_of(label);
            mats[static_cast<std::size_t>(idx)] =
                checked_product(mats[static_cast<std::size_t>(lhs)], mats[static_cast<std::size_t>(rhs)]);
            have[static_cast<std::size_t>(idx)] = true;
        }
    }

    for (int i = 0; i < r; ++i)
        if (!have[static_cast<std::size_t>(i)])
            throw Error("module file is missing a matrix for '" + ring->label(i) + "'");
    return make_module(std::move(ring), std::move(mats));
}

BasedModule regular_module(const RingPtr& ring) {
    std::vector<IntMatrix> mats;
    mats.reserve(static_cast<std::size_t>(ring->rank()));
    for (int i = 0; i < ring->rank(); ++i) mats.push_back(ring->mult_matrix(i));
    return make_module(ring, std::move(mats));
}

BasedModule direct_sum(const BasedModule& a, const BasedModule& b) {
    if (!a.same_ring(b)) throw RingMismatch("direct sum needs modules over the same ring");
    const int n = a.rank + b.rank;
    std::vector<IntMatrix> mats;
    mats.reserve(a.matrices.size());
    for (std::size_t i = 0; i < a.matrices.size(); ++i) {
        IntMatrix m = IntMatrix::Zero(n, n);
        m.topLeftCorner(a.rank, a.rank) = a.matrices[i];
        m.bottomRightCorner(b.rank, b.rank) = b.matrices[i];
        mats.push_back(std::move(m));
    }
    return make_module(a.ring, std::move(mats));
}

}  // namespace fusionmod
