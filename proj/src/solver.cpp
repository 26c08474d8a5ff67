#include "fusionmod/solver.hpp"

#include "fusionmod/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace fusionmod {

IntMatrix eval_expr(const Expr& e, const std::map<int, IntMatrix>& assign, int n) {
    IntMatrix total = IntMatrix::Zero(n, n);
    for (const auto& t : e.terms) {
        switch (t.kind) {
            case Term::Kind::Identity:
                total += IntMatrix::Identity(n, n);
                break;
            case Term::Kind::Symbol:
                total += assign.at(t.a);
                break;
            case Term::Kind::Product:
                total += checked_product(assign.at(t.a), assign.at(t.b));
                break;
        }
    }
    return total;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Term parse_term(const std::string& raw, const FusionRing& ring) {
    const std::string text = strip(raw);
    if (text.empty()) throw Error("empty term in constraint");
    const auto star = text.find('*');
    Term t;
    if (star == std::string::npos) {
        if (text == "E") {
            t.kind = Term::Kind::Identity;
        } else {
            t.kind = Term::Kind::Symbol;
            t.a = ring.index_of(text);
        }
        return t;
    }
    t.kind = Term::Kind::Product;
    const std::string lhs = strip(text.substr(0, star));
    const std::string rhs = strip(text.substr(star + 1));
    if (rhs.find('*') != std::string::npos)
        throw Error("constraint terms are at most products of two symbols: " + text);
    t.a = ring.index_of(lhs);
    t.b = ring.index_of(rhs);
    return t;
}

}  // namespace

Expr parse_expr(const std::string& text, const FusionRing& ring) {
    Expr e;
    e.text = strip(text);
    std::size_t start = 0;
    for (std::size_t pos = 0; pos <= text.size(); ++pos) {
        if (pos == text.size() || text[pos] == '+') {
            e.terms.push_back(parse_term(text.substr(start, pos - start), ring));
            start = pos + 1;
        }
    }
    return e;
}

Equation parse_equation(const std::string& text, const FusionRing& ring) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw Error("constraint must be a single equation: " + text);
    Equation out;
    out.text = strip(text);
    out.lhs = parse_expr(text.substr(0, eq), ring);
    out.rhs = parse_expr(text.substr(eq + 1), ring);
    return out;
}

SolvePlan plan_from_json(const nlohmann::json& j, const FusionRing& ring) {
    SolvePlan plan;
    plan.id = j.value("id", std::string("plan"));
    plan.ring_id = j.at("ring").get<std::string>();
    if (plan.ring_id != ring.id())
        throw Error("plan '" + plan.id + "' targets ring '" + plan.ring_id + "', got '" +
                    ring.id() + "'");
    for (const auto& js : j.at("stages")) {
        Stage st;
        st.target = ring.index_of(js.at("target").get<std::string>());
        const std::string sym = js.value("symmetry", std::string("symmetric"));
        if (sym == "permutation")
            st.symmetry = StageSymmetry::Permutation;
        else if (sym == "symmetric")
            st.symmetry = StageSymmetry::SymmetricZPlus;
        else
            throw Error("unknown stage symmetry '" + sym + "'");
        for (const auto& c : js.at("constraints"))
            st.constraints.push_back(parse_equation(c.get<std::string>(), ring));
        plan.stages.push_back(std::move(st));
    }
    if (j.contains("derived")) {
        for (const auto& [label, expr] : j.at("derived").items()) {
            const Term t = parse_term(expr.get<std::string>(), ring);
            if (t.kind != Term::Kind::Product)
                throw Error("derived entries must be products: " + expr.get<std::string>());
            plan.derived[ring.index_of(label)] = t;
        }
    }
    validate_plan(plan, ring);
    return plan;
}

void validate_plan(const SolvePlan& plan, const FusionRing& ring) {
    std::set<int> covered{ring.unit()};
    std::set<int> solvable{ring.unit()};
    for (const auto& st : plan.stages) {
        if (st.target == ring.unit()) throw Error("plan may not target the unit");
        if (!covered.insert(st.target).second)
            throw Error("plan assigns '" + ring.label(st.target) + "' twice");
        auto check_term = [&](const Term& t) {
            if (t.kind == Term::Kind::Identity) return;
            const auto ok = [&](int idx) { return solvable.count(idx) || idx == st.target; };
            if (t.kind == Term::Kind::Symbol && !ok(t.a))
                throw Error("constraint references unsolved '" + ring.label(t.a) + "'");
            if (t.kind == Term::Kind::Product && (!ok(t.a) || !ok(t.b)))
                throw Error("constraint references an unsolved product factor");
        };
        for (const auto& eq : st.constraints) {
            for (const auto& t : eq.lhs.terms) check_term(t);
            for (const auto& t : eq.rhs.terms) check_term(t);
        }
        solvable.insert(st.target);
    }
    for (const auto& [idx, term] : plan.derived) {
        if (!covered.insert(idx).second)
            throw Error("plan assigns '" + ring.label(idx) + "' twice");
        if (!solvable.count(term.a) || !solvable.count(term.b))
            throw Error("derived '" + ring.label(idx) + "' uses an unsolved factor");
    }
    for (int i = 0; i < ring.rank(); ++i)
        if (!covered.count(i))
            throw Error("plan leaves '" + ring.label(i) + "' unassigned");
}

std::vector<IntMatrix> involution_representatives(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("involution_representatives: rank must be in 1..12");
    std::vector<IntMatrix> reps;
    for (int k = 0; k <= n / 2; ++k) {
        Perm p = identity_perm(n);
        for (int t = 0; t < k; ++t) std::swap(p[static_cast<std::size_t>(2 * t)], p[static_cast<std::size_t>(2 * t + 1)]);
        reps.push_back(perm_matrix(p));
    }
    return reps;
}

Int involution_count(int n) {
    // Telephone numbers: a(n) = a(n-1) + (n-1) a(n-2).
    Int prev2 = 1, prev1 = 1;
    if (n <= 1) return 1;
    for (int k = 2; k <= n; ++k) {
        const Int cur = checked_add(prev1, checked_mul(static_cast<Int>(k - 1), prev2));
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

namespace {

struct Interval {
    Int lo = 0, hi = 0;
};

Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval mul(Interval a, Interval b) {
    // All quantities here are nonnegative.
    return {a.lo * b.lo, a.hi * b.hi};
}

// Backtracking search for one stage.
class StageSolver {
public:
    StageSolver(const Stage& stage, const std::map<int, IntMatrix>& solved, const FusionRing& ring,
                int rank)
        : stage_(stage), ring_(ring), n_(rank) {
        solved_ = solved;
        solved_[ring.unit()] = IntMatrix::Identity(n_, n_);
        index_vars();
        derive_bounds();
        if (feasible_) merge_linear();
    }

    std::vector<IntMatrix> run() {
        if (!feasible_) return {};
        values_.assign(static_cast<std::size_t>(var_count_), -1);
        for (int v = 0; v < var_count_; ++v)
            if (pinned_[static_cast<std::size_t>(v)] >= 0 && rep_of(v) == v)
                values_[static_cast<std::size_t>(v)] = pinned_[static_cast<std::size_t>(v)];
        search(0);
        return std::move(solutions_);
    }

private:
    void index_vars() {
        var_of_.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), -1));
        for (int i = 0; i < n_; ++i) {
            for (int j = i; j < n_; ++j) {
                var_pos_.emplace_back(i, j);
                var_of_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = var_count_;
                var_of_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = var_count_;
                ++var_count_;
            }
        }
        parent_.resize(static_cast<std::size_t>(var_count_));
        std::iota(parent_.begin(), parent_.end(), 0);
        pinned_.assign(static_cast<std::size_t>(var_count_), -1);
    }

    int var(int i, int j) const { return var_of_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    int rep_of(int v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }

    // Smaller var index wins as representative, keeping row-major search order.
    void unite(int a, int b) {
        a = rep_of(a);
        b = rep_of(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        if (pinned_[static_cast<std::size_t>(b)] >= 0) {
            if (pinned_[static_cast<std::size_t>(a)] >= 0 &&
                pinned_[static_cast<std::size_t>(a)] != pinned_[static_cast<std::size_t>(b)])
                feasible_ = false;
            pinned_[static_cast<std::size_t>(a)] = pinned_[static_cast<std::size_t>(b)];
        }
        bounds_[static_cast<std::size_t>(a)] =
            std::min(bounds_[static_cast<std::size_t>(a)], bounds_[static_cast<std::size_t>(b)]);
    }

    bool term_is_quadratic(const Term& t) const {
        return t.kind == Term::Kind::Product && t.a == stage_.target && t.b == stage_.target;
    }
    bool term_mentions_target(const Term& t) const {
        if (t.kind == Term::Kind::Symbol) return t.a == stage_.target;
        if (t.kind == Term::Kind::Product) return t.a == stage_.target || t.b == stage_.target;
        return false;
    }

    // Entry bounds from diagonal identities of equations shaped X*X = <terms
    // without X*X>: every row-l entry x satisfies x^2 <= C_l + L_l * x with
    // C_l the solved part of the diagonal and L_l the total linear
    // coefficient of row-l unknowns.
    void derive_bounds() {
        bounds_.assign(static_cast<std::size_t>(var_count_), -1);
        std::vector<Int> row_bound(static_cast<std::size_t>(n_), -1);
        bool found = false;
        for (const auto& eq : stage_.constraints) {
            const Expr* rest = nullptr;
            auto single_quad = [&](const Expr& e) {
                return e.terms.size() == 1 && term_is_quadratic(e.terms.front());
            };
            auto has_quad = [&](const Expr& e) {
                return std::any_of(e.terms.begin(), e.terms.end(),
                                   [&](const Term& t) { return term_is_quadratic(t); });
            };
            if (single_quad(eq.lhs) && !has_quad(eq.rhs)) {
                rest = &eq.rhs;
            } else if (single_quad(eq.rhs) && !has_quad(eq.lhs)) {
                rest = &eq.lhs;
            } else {
                continue;
            }
            found = true;
            for (int l = 0; l < n_; ++l) {
                Int c = 0, lin = 0;
                for (const auto& t : rest->terms) {
                    switch (t.kind) {
                        case Term::Kind::Identity:
                            c += 1;
                            break;
                        case Term::Kind::Symbol:
                            if (t.a == stage_.target)
                                lin += 1;
                            else
                                c += solved_.at(t.a)(l, l);
                            break;
                        case Term::Kind::Product:
                            if (t.a == stage_.target || t.b == stage_.target) {
                                const IntMatrix& s = solved_.at(t.a == stage_.target ? t.b : t.a);
                                Int coeff = 0;
                                for (int k = 0; k < n_; ++k)
                                    coeff += (t.a == stage_.target) ? s(k, l) : s(l, k);
                                lin += coeff;
                            } else {
                                c += checked_product(solved_.at(t.a), solved_.at(t.b))(l, l);
                            }
                            break;
                    }
                }
                Int x = 0;
                while ((x + 1) * (x + 1) <= c + lin * (x + 1)) ++x;
                row_bound[static_cast<std::size_t>(l)] =
                    row_bound[static_cast<std::size_t>(l)] < 0
                        ? x
                        : std::min(row_bound[static_cast<std::size_t>(l)], x);
            }
        }
        if (!found)
            throw UnboundedSearch("stage for '" + ring_.label(stage_.target) +
                                  "' has no diagonal quadratic identity to bound the search");
        for (int v = 0; v < var_count_; ++v) {
            const auto [i, j] = var_pos_[static_cast<std::size_t>(v)];
            bounds_[static_cast<std::size_t>(v)] = std::min(row_bound[static_cast<std::size_t>(i)],
                                                            row_bound[static_cast<std::size_t>(j)]);
        }
    }

    // Exact rational elimination of the linear constraints. Entry equalities
    // that hold across the whole solution space become union-find merges;
    // variables that are constant across it get pinned.
    void merge_linear() {
        std::vector<std::vector<Rational>> rows;  // coefficients per var, then constant
        for (const auto& eq : stage_.constraints) {
            const bool quad =
                std::any_of(eq.lhs.terms.begin(), eq.lhs.terms.end(),
                            [&](const Term& t) { return term_is_quadratic(t); }) ||
                std::any_of(eq.rhs.terms.begin(), eq.rhs.terms.end(),
                            [&](const Term& t) { return term_is_quadratic(t); });
            if (quad) continue;
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    std::vector<Rational> row(static_cast<std::size_t>(var_count_) + 1, Rational(0));
                    accumulate_linear(eq.lhs, i, j, Rational(1), row);
                    accumulate_linear(eq.rhs, i, j, Rational(-1), row);
                    if (std::any_of(row.begin(), row.end(), [](const Rational& r) { return r != 0; }))
                        rows.push_back(std::move(row));
                }
            }
        }
        if (rows.empty()) return;

        // Row-reduce; fail fast on 0 = c.
        std::size_t rank_rows = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < var_count_ && rank_rows < rows.size(); ++col) {
            std::size_t piv = rank_rows;
            while (piv < rows.size() && rows[piv][static_cast<std::size_t>(col)] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank_rows], rows[piv]);
            const Rational inv = rows[rank_rows][static_cast<std::size_t>(col)];
            for (auto& x : rows[rank_rows]) x /= inv;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == rank_rows) continue;
                const Rational f = rows[r][static_cast<std::size_t>(col)];
                if (f == 0) continue;
                for (std::size_t c = 0; c < rows[r].size(); ++c)
                    rows[r][c] -= f * rows[rank_rows][c];
            }
            pivot_col.push_back(col);
            ++rank_rows;
        }
        for (std::size_t r = rank_rows; r < rows.size(); ++r) {
            if (rows[r][static_cast<std::size_t>(var_count_)] != 0) {
                feasible_ = false;
                return;
            }
        }
        rows.resize(rank_rows);

        // Particular solution: free vars 0; pivot var = constant term.
        std::vector<Rational> particular(static_cast<std::size_t>(var_count_), Rational(0));
        for (std::size_t r = 0; r < rank_rows; ++r)
            particular[static_cast<std::size_t>(pivot_col[r])] =
                rows[r][static_cast<std::size_t>(var_count_)];

        // Nullspace basis: one vector per free variable.
        std::vector<bool> is_pivot(static_cast<std::size_t>(var_count_), false);
        for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
        std::vector<std::vector<Rational>> null_basis;
        for (int f = 0; f < var_count_; ++f) {
            if (is_pivot[static_cast<std::size_t>(f)]) continue;
            std::vector<Rational> vec(static_cast<std::size_t>(var_count_), Rational(0));
            vec[static_cast<std::size_t>(f)] = Rational(1);
            for (std::size_t r = 0; r < rank_rows; ++r)
                vec[static_cast<std::size_t>(pivot_col[r])] = -rows[r][static_cast<std::size_t>(f)];
            null_basis.push_back(std::move(vec));
        }

        // Pin variables that are constant over the solution space.
        for (int v = 0; v < var_count_; ++v) {
            bool constant = true;
            for (const auto& vec : null_basis)
                if (vec[static_cast<std::size_t>(v)] != 0) {
                    constant = false;
                    break;
                }
            if (!constant) continue;
            const auto value = as_int(particular[static_cast<std::size_t>(v)]);
            if (!value || *value < 0 || *value > bounds_[static_cast<std::size_t>(v)]) {
                feasible_ = false;
                return;
            }
            pinned_[static_cast<std::size_t>(v)] = *value;
        }

        // Merge variable pairs equal across the whole solution space.
        for (int a = 0; a < var_count_; ++a) {
            for (int b = a + 1; b < var_count_; ++b) {
                if (particular[static_cast<std::size_t>(a)] != particular[static_cast<std::size_t>(b)])
                    continue;
                bool equal = true;
                for (const auto& vec : null_basis) {
                    if (vec[static_cast<std::size_t>(a)] != vec[static_cast<std::size_t>(b)]) {
                        equal = false;
                        break;
                    }
                }
                if (equal) unite(a, b);
            }
        }
        if (!feasible_) return;
    }

    void accumulate_linear(const Expr& e, int i, int j, const Rational& sign,
                           std::vector<Rational>& row) const {
        for (const auto& t : e.terms) {
            switch (t.kind) {
                case Term::Kind::Identity:
                    if (i == j) row[static_cast<std::size_t>(var_count_)] -= sign;
                    break;
                case Term::Kind::Symbol:
                    if (t.a == stage_.target)
                        row[static_cast<std::size_t>(var(i, j))] += sign;
                    else
                        row[static_cast<std::size_t>(var_count_)] -= sign * Rational(solved_.at(t.a)(i, j));
                    break;
                case Term::Kind::Product: {
                    if (t.a == stage_.target) {
                        const IntMatrix& s = solved_.at(t.b);
                        for (int k = 0; k < n_; ++k)
                            if (s(k, j) != 0)
                                row[static_cast<std::size_t>(var(i, k))] += sign * Rational(s(k, j));
                    } else if (t.b == stage_.target) {
                        const IntMatrix& s = solved_.at(t.a);
                        for (int k = 0; k < n_; ++k)
                            if (s(i, k) != 0)
                                row[static_cast<std::size_t>(var(k, j))] += sign * Rational(s(i, k));
                    } else {
                        row[static_cast<std::size_t>(var_count_)] -=
                            sign * Rational(checked_product(solved_.at(t.a), solved_.at(t.b))(i, j));
                    }
                    break;
                }
            }
        }
    }

    Interval entry_interval(int v) {
        const int r = rep_of(v);
        const Int val = values_[static_cast<std::size_t>(r)];
        if (val >= 0) return {val, val};
        return {0, bounds_[static_cast<std::size_t>(r)]};
    }

    Interval eval_interval(const Expr& e, int i, int j) {
        Interval total{0, 0};
        for (const auto& t : e.terms) {
            switch (t.kind) {
                case Term::Kind::Identity:
                    if (i == j) total = total + Interval{1, 1};
                    break;
                case Term::Kind::Symbol:
                    if (t.a == stage_.target)
                        total = total + entry_interval(var(i, j));
                    else {
                        const Int x = solved_.at(t.a)(i, j);
                        total = total + Interval{x, x};
                    }
                    break;
                case Term::Kind::Product: {
                    const bool la = t.a == stage_.target, lb = t.b == stage_.target;
                    for (int k = 0; k < n_; ++k) {
                        Interval fa = la ? entry_interval(var(i, k))
                                         : Interval{solved_.at(t.a)(i, k), solved_.at(t.a)(i, k)};
                        if (fa.hi == 0) continue;
                        Interval fb = lb ? entry_interval(var(k, j))
                                         : Interval{solved_.at(t.b)(k, j), solved_.at(t.b)(k, j)};
                        total = total + mul(fa, fb);
                    }
                    break;
                }
            }
        }
        return total;
    }

    bool consistent() {
        for (const auto& eq : stage_.constraints) {
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) {
                    const Interval l = eval_interval(eq.lhs, i, j);
                    const Interval r = eval_interval(eq.rhs, i, j);
                    if (l.lo > r.hi || r.lo > l.hi) return false;
                }
            }
        }
        return true;
    }

    void search(int from_var) {
        if (!consistent()) return;
        int v = from_var;
        while (v < var_count_ && (rep_of(v) != v || values_[static_cast<std::size_t>(v)] >= 0)) ++v;
        if (v == var_count_) {
            emit();
            return;
        }
        for (Int x = 0; x <= bounds_[static_cast<std::size_t>(v)]; ++x) {
            values_[static_cast<std::size_t>(v)] = x;
            search(v + 1);
        }
        values_[static_cast<std::size_t>(v)] = -1;
    }

    void emit() {
        IntMatrix m(n_, n_);
        for (int v = 0; v < var_count_; ++v) {
            const auto [i, j] = var_pos_[static_cast<std::size_t>(v)];
            const Int x = values_[static_cast<std::size_t>(rep_of(v))];
            m(i, j) = x;
            m(j, i) = x;
        }
        solutions_.push_back(std::move(m));
    }

    const Stage& stage_;
    const FusionRing& ring_;
    int n_;
    std::map<int, IntMatrix> solved_;

    int var_count_ = 0;
    std::vector<std::pair<int, int>> var_pos_;
    std::vector<std::vector<int>> var_of_;
    std::vector<int> parent_;
    std::vector<Int> pinned_;
    std::vector<Int> bounds_;
    bool feasible_ = true;

    std::vector<Int> values_;
    std::vector<IntMatrix> solutions_;
};

}  // namespace

std::vector<IntMatrix> solve_stage(const Stage& stage, const std::map<int, IntMatrix>& solved,
                                   const FusionRing& ring, int rank) {
    StageSolver solver(stage, solved, ring, rank);
    return solver.run();
}

namespace {

// Orbit decomposition of a solution list under a fixed permutation group.
// Representatives are the lexicographically smallest orbit members, listed
// in ascending flat order.
struct OrbitSplit {
    std::vector<IntMatrix> reps;
    Int class_count = 0;
};

OrbitSplit split_into_classes(const std::vector<IntMatrix>& sols, const std::vector<Perm>& group) {
    std::map<std::vector<Int>, IntMatrix> reps;
    for (const auto& s : sols) {
        std::vector<Int> canon = flatten(s);
        IntMatrix canon_m = s;
        for (const auto& p : group) {
            IntMatrix c = conjugate(s, p);
            std::vector<Int> f = flatten(c);
            if (f < canon) {
                canon = std::move(f);
                canon_m = std::move(c);
            }
        }
        reps.emplace(std::move(canon), std::move(canon_m));
    }
    OrbitSplit out;
    out.class_count = static_cast<Int>(reps.size());
    for (auto& [flat, m] : reps) out.reps.push_back(std::move(m));
    return out;
}

std::vector<Perm> refine_stabilizer(const std::vector<Perm>& group, const IntMatrix& fixed) {
    std::vector<Perm> out;
    for (const auto& p : group)
        if (conjugate(fixed, p) == fixed) out.push_back(p);
    return out;
}

bool ring_forces_involution(const FusionRing& ring, int target) {
    for (int k = 0; k < ring.rank(); ++k) {
        const Int want = (k == ring.unit()) ? 1 : 0;
        if (ring.c(target, target, k) != want) return false;
    }
    return true;
}

class Enumerator {
public:
    Enumerator(const RingPtr& ring, int rank, const SolvePlan& plan)
        : ring_(ring), rank_(rank), plan_(plan) {}

    ClassificationResult run() {
        ClassificationResult result;
        result.rank = rank_;
        result.trace.rank = rank_;

        const Stage& first = plan_.stages.front();
        std::vector<IntMatrix> t_reps;
        if (first.symmetry == StageSymmetry::Permutation &&
            ring_forces_involution(*ring_, first.target)) {
            t_reps = involution_representatives(rank_);
            for (const auto& t : t_reps) {
                std::map<int, IntMatrix> assign{{first.target, t},
                                                {ring_->unit(), IntMatrix::Identity(rank_, rank_)}};
                for (const auto& eq : first.constraints)
                    if (eval_expr(eq.lhs, assign, rank_) != eval_expr(eq.rhs, assign, rank_))
                        throw Error("involution representative violates stage constraint " + eq.text);
            }
            result.trace.stage0_raw = involution_count(rank_);
            result.trace.stage0_classes = static_cast<Int>(t_reps.size());
        } else {
            auto sols = solve_stage(first, {}, *ring_, rank_);
            if (first.symmetry == StageSymmetry::Permutation) {
                sols.erase(std::remove_if(sols.begin(), sols.end(),
                                          [](const IntMatrix& m) { return !is_permutation_matrix(m); }),
                           sols.end());
            }
            result.trace.stage0_raw = static_cast<Int>(sols.size());
            auto split = split_into_classes(sols, all_permutations(rank_));
            result.trace.stage0_classes = split.class_count;
            t_reps = std::move(split.reps);
        }

        const auto everyone = all_permutations(rank_);
        for (const auto& t : t_reps) {
            SolveNode root;
            root.rep = t;
            std::map<int, IntMatrix> solved;
            solved[plan_.stages.front().target] = t;
            process(1, solved, refine_stabilizer(everyone, t), root);
            result.trace.roots.push_back(std::move(root));
        }

        for (auto& [key, module] : found_) {
            result.keys.push_back(key);
            result.modules.push_back(std::move(module));
        }
        return result;
    }

private:
    void process(std::size_t level, std::map<int, IntMatrix>& solved,
                 const std::vector<Perm>& stabilizer, SolveNode& node) {
        if (level == plan_.stages.size()) {
            assemble(solved, node);
            return;
        }
        const Stage& stage = plan_.stages[level];
        auto sols = solve_stage(stage, solved, *ring_, rank_);
        node.next_raw = static_cast<Int>(sols.size());
        auto split = split_into_classes(sols, stabilizer);
        node.next_classes = split.class_count;
        for (auto& rep : split.reps) {
            SolveNode child;
            child.rep = rep;
            solved[stage.target] = rep;
            process(level + 1, solved, refine_stabilizer(stabilizer, rep), child);
            solved.erase(stage.target);
            node.children.push_back(std::move(child));
        }
    }

    void assemble(const std::map<int, IntMatrix>& solved, SolveNode& leaf) {
        std::vector<IntMatrix> mats(static_cast<std::size_t>(ring_->rank()));
        std::map<int, IntMatrix> full = solved;
        full[ring_->unit()] = IntMatrix::Identity(rank_, rank_);
        for (const auto& [idx, term] : plan_.derived)
            full[idx] = checked_product(full.at(term.a), full.at(term.b));
        for (int i = 0; i < ring_->rank(); ++i) mats[static_cast<std::size_t>(i)] = full.at(i);

        BasedModule module = make_module(ring_, std::move(mats));
        const auto rep_report = check_representation(module);
        const auto based_report = check_based(module);
        if (!rep_report.ok() || !based_report.ok()) {
            throw Error("solver assembled an invalid module (plan or solver bug):\n" +
                        rep_report.summary() + based_report.summary());
        }
        leaf.assembled = true;
        leaf.irreducible = is_irreducible(module);
        if (leaf.irreducible) {
            BasedModule canon = canonicalize(module);
            CanonicalKey key{flatten(canon.matrices)};
            found_.emplace(std::move(key), std::move(canon));
        }
    }

    RingPtr ring_;
    int rank_;
    const SolvePlan& plan_;
    std::map<CanonicalKey, BasedModule, std::less<CanonicalKey>> found_;
};

}  // namespace

ClassificationResult enumerate_based_modules(const RingPtr& ring, int rank, const SolvePlan& plan) {
    if (rank < 1) throw Error("rank must be positive");
    if (plan.stages.empty()) throw Error("plan has no stages");
    validate_plan(plan, *ring);
    Enumerator e(ring, rank, plan);
    return e.run();
}

std::vector<ClassificationResult> classify(const RingPtr& ring, int max_rank, const SolvePlan& plan) {
    if (max_rank < 1) throw Error("max_rank must be at least 1");
    std::vector<ClassificationResult> out;
    for (int r = 1; r <= max_rank; ++r) out.push_back(enumerate_based_modules(ring, r, plan));
    return out;
}

}  // namespace fusionmod
