#include "fusionmod/chars.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace fusionmod {

int CharacterTable::class_index(const std::string& label) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].label == label) return static_cast<int>(i);
    throw CharError("table '" + id + "' has no class '" + label + "'");
}

int CharacterTable::char_index(const std::string& label) const {
    for (std::size_t i = 0; i < chars.size(); ++i)
        if (chars[i].label == label) return static_cast<int>(i);
    throw CharError("table '" + id + "' has no character '" + label + "'");
}

int CharacterTable::identity_class() const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& w = classes[i].rep_word;
        if (w == "e" || w == "()" || w.empty()) return static_cast<int>(i);
    }
    throw CharError("table '" + id + "' has no identity class");
}

ClassFn char_values(const CharacterTable& table, int char_idx) {
    return table.chars.at(static_cast<std::size_t>(char_idx)).values;
}

ClassFn pointwise_product(const ClassFn& a, const ClassFn& b) {
    if (a.size() != b.size()) throw CharError("class functions live on different class sets");
    ClassFn out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
    return out;
}

Rational inner_product(const CharacterTable& table, const ClassFn& chi, const ClassFn& phi) {
    if (static_cast<int>(chi.size()) != table.num_classes() ||
        static_cast<int>(phi.size()) != table.num_classes())
        throw CharError("class function has wrong length for table '" + table.id + "'");
    Cyclotomic sum = Cyclotomic::zero(table.conductor);
    for (int c = 0; c < table.num_classes(); ++c) {
        Cyclotomic term = chi[static_cast<std::size_t>(c)] * phi[static_cast<std::size_t>(c)].conj();
        term *= Rational(table.classes[static_cast<std::size_t>(c)].size);
        sum += term;
    }
    sum /= Rational(table.order);
    const auto value = sum.as_rational();
    if (!value)
        throw CharError("inner product over '" + table.id + "' is not rational: " + sum.str());
    return *value;
}

std::vector<Rational> decompose_class_fn(const CharacterTable& table, const ClassFn& fn) {
    std::vector<Rational> mults;
    mults.reserve(table.chars.size());
    for (std::size_t a = 0; a < table.chars.size(); ++a)
        mults.push_back(inner_product(table, fn, table.chars[a].values));
    return mults;
}

ValidationReport validate_table(const CharacterTable& table) {
    ValidationReport report;
    Int size_sum = 0;
    for (const auto& c : table.classes) size_sum += c.size;
    if (size_sum != table.order)
        report.add("table '" + table.id + "': class sizes sum to " + std::to_string(size_sum) +
                   ", order is " + std::to_string(table.order));
    for (const auto& ch : table.chars)
        if (static_cast<int>(ch.values.size()) != table.num_classes())
            report.add("table '" + table.id + "': character '" + ch.label + "' has wrong length");
    if (!report.ok()) return report;

    const std::size_t nch = table.chars.size();
    for (std::size_t a = 0; a < nch; ++a) {
        for (std::size_t b = a; b < nch; ++b) {
            Rational got;
            try {
                got = inner_product(table, table.chars[a].values, table.chars[b].values);
            } catch (const CharError& e) {
                report.add(e.what());
                continue;
            }
            const Rational want = (a == b) ? 1 : 0;
            if (got != want)
                report.add("table '" + table.id + "': <" + table.chars[a].label + ", " +
                           table.chars[b].label + "> = " + to_string(got));
        }
    }

    // Column orthogonality; catalog tables are complete, so this is exact.
    const int nc = table.num_classes();
    for (int c = 0; c < nc; ++c) {
        for (int d = c; d < nc; ++d) {
            Cyclotomic sum = Cyclotomic::zero(table.conductor);
            for (std::size_t a = 0; a < nch; ++a)
                sum += table.chars[a].values[static_cast<std::size_t>(c)] *
                       table.chars[a].values[static_cast<std::size_t>(d)].conj();
            Cyclotomic want = Cyclotomic::zero(table.conductor);
            if (c == d)
                want = Cyclotomic(table.conductor,
                                  Rational(table.order) /
                                      Rational(table.classes[static_cast<std::size_t>(c)].size));
            if (sum != want)
                report.add("table '" + table.id + "': column orthogonality fails at (" +
                           table.classes[static_cast<std::size_t>(c)].label + ", " +
                           table.classes[static_cast<std::size_t>(d)].label + ")");
        }
    }
    return report;
}

ValidationReport validate_double_cover(const CharacterTable& cover, const CharacterTable& base) {
    ValidationReport report;
    if (cover.kind != TableKind::DoubleCover) {
        report.add("table '" + cover.id + "' is not marked as a double cover");
        return report;
    }
    if (cover.order != 2 * base.order)
        report.add("cover '" + cover.id + "' order is not twice the base order");

    std::map<std::string, Int> fiber_size;
    std::map<std::string, std::vector<int>> fiber_classes;
    for (int c = 0; c < cover.num_classes(); ++c) {
        const auto& cls = cover.classes[static_cast<std::size_t>(c)];
        if (cls.base_class.empty()) {
            report.add("cover class '" + cls.label + "' has no base class");
            continue;
        }
        base.class_index(cls.base_class);  // throws on unknown label
        fiber_size[cls.base_class] += cls.size;
        fiber_classes[cls.base_class].push_back(c);
    }
    for (const auto& bc : base.classes) {
        if (fiber_size[bc.label] != 2 * bc.size)
            report.add("fiber over base class '" + bc.label + "' has size " +
                       std::to_string(fiber_size[bc.label]) + ", expected " +
                       std::to_string(2 * bc.size));
    }

    const int e = cover.identity_class();
    const std::string base_identity =
        base.classes[static_cast<std::size_t>(base.identity_class())].label;
    int center = -1;
    for (int c : fiber_classes[base_identity])
        if (c != e) center = c;
    if (center < 0 || cover.classes[static_cast<std::size_t>(center)].size != 1) {
        report.add("cover '" + cover.id + "' has no central class of size 1 over the identity");
        return report;
    }

    for (const auto& ch : cover.chars) {
        const Cyclotomic at_e = ch.values[static_cast<std::size_t>(e)];
        const Cyclotomic at_z = ch.values[static_cast<std::size_t>(center)];
        if (ch.spin) {
            if (at_z != -at_e)
                report.add("spin character '" + ch.label + "' is not negated on the center");
        } else if (at_z != at_e) {
            report.add("lifted character '" + ch.label + "' is not trivial on the center");
        }
        for (const auto& [bc, members] : fiber_classes) {
            if (members.size() == 1) {
                // Non-split fiber: g and zg are conjugate, so spin values vanish.
                if (ch.spin && !ch.values[static_cast<std::size_t>(members[0])].is_zero())
                    report.add("spin character '" + ch.label + "' nonzero on non-split fiber '" +
                               bc + "'");
            } else if (members.size() == 2) {
                const Cyclotomic v0 = ch.values[static_cast<std::size_t>(members[0])];
                const Cyclotomic v1 = ch.values[static_cast<std::size_t>(members[1])];
                if (ch.spin ? (v1 != -v0) : (v1 != v0))
                    report.add("character '" + ch.label + "' inconsistent on fiber '" + bc + "'");
            } else {
                report.add("fiber over '" + bc + "' has " + std::to_string(members.size()) +
                           " classes");
            }
        }
    }
    return report;
}

ValidationReport validate_embedding(const Embedding& emb, const CharacterTable& sub,
                                    const CharacterTable& super, int npoints) {
    ValidationReport report;

    for (const auto& word : emb.relations) {
        Perm prod = identity_perm(npoints);
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            auto gen = emb.generators.find(*it);
            if (gen == emb.generators.end()) {
                report.add("relation references unknown generator '" + *it + "'");
                prod = identity_perm(npoints);
                break;
            }
            prod = compose(parse_cycles(gen->second, npoints), prod);
        }
        if (prod != identity_perm(npoints)) {
            std::string w;
            for (const auto& g : word) w += g;
            report.add("relation '" + w + "' does not compose to the identity");
        }
    }

    for (const auto& cls : sub.classes) {
        auto it = emb.class_map.find(cls.label);
        if (it == emb.class_map.end()) {
            report.add("class '" + cls.label + "' of '" + sub.id + "' is unmapped");
            continue;
        }
        const int sup = super.class_index(it->second);
        // Elements map to themselves under inclusion, so cycle types agree.
        const auto sub_type = cycle_type(parse_cycles(cls.rep_word, npoints));
        const auto super_type = cycle_type(
            parse_cycles(super.classes[static_cast<std::size_t>(sup)].rep_word, npoints));
        if (sub_type != super_type)
            report.add("class map sends '" + cls.label + "' to '" + it->second +
                       "' with a different cycle type");
    }

    // Restrictions of supergroup irreducibles must decompose integrally.
    if (report.ok()) {
        for (std::size_t a = 0; a < super.chars.size(); ++a) {
            const ClassFn res = restrict_char(emb, sub, super, static_cast<int>(a));
            for (const Rational& m : decompose_class_fn(sub, res)) {
                if (!is_integer(m) || m < 0) {
                    report.add("restriction of '" + super.chars[a].label + "' to '" + sub.id +
                               "' has multiplicity " + to_string(m));
                    break;
                }
            }
        }
    }
    return report;
}

ClassFn restrict_char(const Embedding& emb, const CharacterTable& sub, const CharacterTable& super,
                      int super_char) {
    const ClassFn& values = super.chars.at(static_cast<std::size_t>(super_char)).values;
    ClassFn out;
    out.reserve(sub.classes.size());
    for (const auto& cls : sub.classes) {
        auto it = emb.class_map.find(cls.label);
        if (it == emb.class_map.end())
            throw CharError("embedding " + emb.sub_id + " <= " + emb.super_id +
                            " does not map class '" + cls.label + "'");
        out.push_back(values[static_cast<std::size_t>(super.class_index(it->second))]);
    }
    return out;
}

namespace {

Int certify_nonneg_int(const Rational& r, const std::string& context) {
    const auto v = as_int(r);
    if (!v || *v < 0) throw NonIntegralMultiplicity(context + " = " + to_string(r));
    return *v;
}

void require_valid_module(const BasedModule& m, const std::string& what) {
    const auto rep = check_representation(m);
    const auto based = check_based(m);
    if (!rep.ok() || !based.ok())
        throw CharError(what + " is not a based module:\n" + rep.summary() + based.summary());
}

}  // namespace

BasedModule restriction_module(const CharacterTable& G, const CharacterTable& H,
                               const Embedding& emb, const RingPtr& ring) {
    if (H.kind != TableKind::Ordinary)
        throw CharError("restriction_module needs an ordinary table for '" + H.id + "'");
    const int n = static_cast<int>(H.chars.size());
    std::vector<ClassFn> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) basis.push_back(H.chars[static_cast<std::size_t>(k)].values);

    std::vector<IntMatrix> mats;
    mats.reserve(static_cast<std::size_t>(ring->rank()));
    for (int i = 0; i < ring->rank(); ++i) {
        const ClassFn res = restrict_char(emb, H, G, G.char_index(ring->label(i)));
        IntMatrix m(n, n);
        for (int k = 0; k < n; ++k) {
            const ClassFn prod = pointwise_product(res, basis[static_cast<std::size_t>(k)]);
            for (int l = 0; l < n; ++l) {
                const Rational mult = inner_product(H, prod, basis[static_cast<std::size_t>(l)]);
                m(l, k) = certify_nonneg_int(mult, "<Res(" + ring->label(i) + ") " +
                                                       H.chars[static_cast<std::size_t>(k)].label +
                                                       ", " +
                                                       H.chars[static_cast<std::size_t>(l)].label +
                                                       ">");
            }
        }
        mats.push_back(std::move(m));
    }
    BasedModule module = make_module(ring, std::move(mats));
    require_valid_module(module, "r(" + H.id + ") over r(" + G.id + ")");
    return module;
}

BasedModule projective_module(const CharacterTable& G, const CharacterTable& cover,
                              const Embedding& emb, const RingPtr& ring) {
    if (cover.kind != TableKind::DoubleCover)
        throw CharError("projective_module needs a double-cover table, got '" + cover.id + "'");
    if (emb.sub_id != cover.base_id)
        throw CharError("embedding is for '" + emb.sub_id + "', cover sits over '" + cover.base_id +
                        "'");

    std::vector<int> spin;
    for (int a = 0; a < static_cast<int>(cover.chars.size()); ++a)
        if (cover.chars[static_cast<std::size_t>(a)].spin) spin.push_back(a);
    if (spin.empty()) throw CharError("cover '" + cover.id + "' has no spin characters");
    const int n = static_cast<int>(spin.size());

    // Res chi_i lives on the base group's classes; pull it back through the
    // covering map so it becomes a class function on the cover.
    auto lift_restricted = [&](int ring_idx) {
        const ClassFn& values =
            G.chars.at(static_cast<std::size_t>(G.char_index(ring->label(ring_idx)))).values;
        ClassFn out;
        out.reserve(cover.classes.size());
        for (const auto& cls : cover.classes) {
            auto it = emb.class_map.find(cls.base_class);
            if (it == emb.class_map.end())
                throw CharError("embedding does not map base class '" + cls.base_class + "'");
            out.push_back(values[static_cast<std::size_t>(G.class_index(it->second))]);
        }
        return out;
    };

    std::vector<IntMatrix> mats;
    mats.reserve(static_cast<std::size_t>(ring->rank()));
    for (int i = 0; i < ring->rank(); ++i) {
        const ClassFn lifted = lift_restricted(i);
        IntMatrix m(n, n);
        for (int k = 0; k < n; ++k) {
            const ClassFn prod = pointwise_product(
                lifted, cover.chars[static_cast<std::size_t>(spin[static_cast<std::size_t>(k)])].values);
            const auto mults = decompose_class_fn(cover, prod);
            for (int a = 0; a < static_cast<int>(cover.chars.size()); ++a) {
                const bool is_spin = cover.chars[static_cast<std::size_t>(a)].spin;
                const Rational& mult = mults[static_cast<std::size_t>(a)];
                if (!is_spin) {
                    if (mult != 0)
                        throw SpinClosureViolation(
                            "Res(" + ring->label(i) + ") x " +
                            cover.chars[static_cast<std::size_t>(spin[static_cast<std::size_t>(k)])].label +
                            " has non-spin component " + cover.chars[static_cast<std::size_t>(a)].label);
                }
            }
            for (int l = 0; l < n; ++l) {
                m(l, k) = certify_nonneg_int(
                    mults[static_cast<std::size_t>(spin[static_cast<std::size_t>(l)])],
                    "spin multiplicity in Res(" + ring->label(i) + ") over '" + cover.id + "'");
            }
        }
        mats.push_back(std::move(m));
    }
    BasedModule module = make_module(ring, std::move(mats));
    require_valid_module(module, "r(" + cover.base_id + ", alpha) over r(" + G.id + ")");
    return module;
}

namespace {

CycMatrix cyc_identity(int d, int conductor) {
    CycMatrix m(static_cast<std::size_t>(d),
                std::vector<Cyclotomic>(static_cast<std::size_t>(d), Cyclotomic::zero(conductor)));
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Cyclotomic::one(conductor);
    return m;
}

CycMatrix cyc_mul(const CycMatrix& a, const CycMatrix& b, int conductor) {
    const std::size_t n = a.size();
    CycMatrix out(n, std::vector<Cyclotomic>(n, Cyclotomic::zero(conductor)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

CycMatrix cyc_scale(const Cyclotomic& s, const CycMatrix& m) {
    CycMatrix out = m;
    for (auto& row : out)
        for (auto& x : row) x = s * x;
    return out;
}

Cyclotomic cyc_trace(const CycMatrix& m, int conductor) {
    Cyclotomic t = Cyclotomic::zero(conductor);
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

}  // namespace

CycMatrix proj_matrix(const ProjRepData& data, const ProjRep& rep, int i, int j) {
    const int d = static_cast<int>(rep.gen_r.size());
    CycMatrix m = cyc_identity(d, data.conductor);
    for (int t = 0; t < i; ++t) m = cyc_mul(m, rep.gen_r, data.conductor);
    for (int t = 0; t < j; ++t) m = cyc_mul(m, rep.gen_s, data.conductor);
    return m;
}

Cyclotomic cocycle_value(const ProjRepData& data, const ProjElement& g, const ProjElement& h) {
    return Cyclotomic::root_of_unity(g.j * h.i, data.cocycle_root, data.conductor);
}

namespace {

int element_by_perm(const ProjRepData& data, const Perm& p) {
    for (std::size_t e = 0; e < data.elements.size(); ++e)
        if (data.elements[e].perm == p) return static_cast<int>(e);
    throw CharError("projective data '" + data.id + "': product leaves the element list");
}

}  // namespace

ValidationReport verify_projective_rep(const ProjRepData& data, const CharacterTable& group) {
    ValidationReport report;
    const std::size_t n = data.elements.size();
    if (static_cast<Int>(n) != group.order)
        report.add("element list has " + std::to_string(n) + " entries, group order is " +
                   std::to_string(group.order));

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (data.elements[a].perm == data.elements[b].perm)
                report.add("elements '" + data.elements[a].label + "' and '" +
                           data.elements[b].label + "' have the same permutation image");

    // Class labels: each element must be conjugate to its class representative
    // inside the group itself (cycle type alone does not separate D4 classes).
    for (const auto& el : data.elements) {
        const int cls = group.class_index(el.class_label);
        const Perm rep = parse_cycles(group.classes[static_cast<std::size_t>(cls)].rep_word,
                                      static_cast<int>(el.perm.size()));
        bool conjugate_in_group = false;
        for (const auto& other : data.elements) {
            if (compose(other.perm, compose(el.perm, inverse(other.perm))) == rep) {
                conjugate_in_group = true;
                break;
            }
        }
        if (!conjugate_in_group)
            report.add("element '" + el.label + "' is not in class '" + el.class_label + "'");
    }

    // pi(g) pi(h) = alpha(g, h) pi(gh), exactly, for every pair and rep.
    std::vector<std::vector<CycMatrix>> mats(data.reps.size());
    for (std::size_t r = 0; r < data.reps.size(); ++r)
        for (const auto& el : data.elements)
            mats[r].push_back(proj_matrix(data, data.reps[r], el.i, el.j));

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const int ab = element_by_perm(data, compose(data.elements[a].perm, data.elements[b].perm));
            const Cyclotomic alpha = cocycle_value(data, data.elements[a], data.elements[b]);
            for (std::size_t r = 0; r < data.reps.size(); ++r) {
                const CycMatrix lhs = cyc_mul(mats[r][a], mats[r][b], data.conductor);
                const CycMatrix rhs = cyc_scale(alpha, mats[r][static_cast<std::size_t>(ab)]);
                if (lhs != rhs)
                    report.add("rep '" + data.reps[r].label + "': pi(" + data.elements[a].label +
                               ") pi(" + data.elements[b].label + ") != alpha * pi(product)");
            }
        }
    }

    // Cocycle identity alpha(g,h) alpha(gh,k) = alpha(h,k) alpha(g,hk).
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const int ab = element_by_perm(data, compose(data.elements[a].perm, data.elements[b].perm));
            for (std::size_t c = 0; c < n; ++c) {
                const int bc =
                    element_by_perm(data, compose(data.elements[b].perm, data.elements[c].perm));
                const Cyclotomic lhs = cocycle_value(data, data.elements[a], data.elements[b]) *
                                       cocycle_value(data, data.elements[static_cast<std::size_t>(ab)],
                                                     data.elements[c]);
                const Cyclotomic rhs = cocycle_value(data, data.elements[b], data.elements[c]) *
                                       cocycle_value(data, data.elements[a],
                                                     data.elements[static_cast<std::size_t>(bc)]);
                if (lhs != rhs)
                    report.add("cocycle identity fails at (" + data.elements[a].label + ", " +
                               data.elements[b].label + ", " + data.elements[c].label + ")");
            }
        }
    }
    return report;
}

BasedModule twisted_module_from_projrep(const ProjRepData& data, const CharacterTable& G,
                                        const CharacterTable& H, const Embedding& emb,
                                        const RingPtr& ring) {
    const int n = static_cast<int>(data.reps.size());
    const Int order = static_cast<Int>(data.elements.size());

    // Route one: recorded tensor rules composed with the ordinary
    // restriction rules Res(chi_i) = sum_w r_iw W_w.
    std::vector<IntMatrix> symbolic;
    for (int i = 0; i < ring->rank(); ++i) {
        const ClassFn res = restrict_char(emb, H, G, G.char_index(ring->label(i)));
        const auto mults = decompose_class_fn(H, res);
        IntMatrix m = IntMatrix::Zero(n, n);
        for (std::size_t w = 0; w < H.chars.size(); ++w) {
            const Int r_iw =
                certify_nonneg_int(mults[w], "restriction multiplicity of " + H.chars[w].label);
            if (r_iw == 0) continue;
            auto rules = data.tensor.find(H.chars[w].label);
            if (rules == data.tensor.end())
                throw CharError("no tensor rule for '" + H.chars[w].label + "' in '" + data.id + "'");
            for (int l = 0; l < n; ++l) {
                for (const auto& target : rules->second.at(static_cast<std::size_t>(l))) {
                    bool hit = false;
                    for (int mrep = 0; mrep < n; ++mrep) {
                        if (data.reps[static_cast<std::size_t>(mrep)].label == target) {
                            m(mrep, l) += r_iw;
                            hit = true;
                        }
                    }
                    if (!hit) throw CharError("tensor rule names unknown rep '" + target + "'");
                }
            }
        }
        symbolic.push_back(std::move(m));
    }

    // Route two: projective characters as traces of the explicit matrices,
    // with multiplicities summed over group elements.
    std::vector<std::vector<Cyclotomic>> traces(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        for (const auto& el : data.elements)
            traces[static_cast<std::size_t>(r)].push_back(
                cyc_trace(proj_matrix(data, data.reps[static_cast<std::size_t>(r)], el.i, el.j),
                          data.conductor));

    const int npoints = static_cast<int>(data.elements.front().perm.size());
    auto g_class_value = [&](int ring_idx, const Perm& p) {
        const auto type = cycle_type(p);
        for (int c = 0; c < G.num_classes(); ++c) {
            if (cycle_type(parse_cycles(G.classes[static_cast<std::size_t>(c)].rep_word, npoints)) ==
                type)
                return G.chars[static_cast<std::size_t>(G.char_index(ring->label(ring_idx)))]
                    .values[static_cast<std::size_t>(c)];
        }
        throw CharError("no class of '" + G.id + "' matches an element of '" + data.id + "'");
    };

    std::vector<IntMatrix> traced;
    for (int i = 0; i < ring->rank(); ++i) {
        IntMatrix m(n, n);
        for (int l = 0; l < n; ++l) {
            for (int mrep = 0; mrep < n; ++mrep) {
                Cyclotomic sum = Cyclotomic::zero(data.conductor);
                for (std::size_t e = 0; e < data.elements.size(); ++e) {
                    sum += g_class_value(i, data.elements[e].perm) *
                           traces[static_cast<std::size_t>(l)][e] *
                           traces[static_cast<std::size_t>(mrep)][e].conj();
                }
                sum /= Rational(order);
                const auto value = sum.as_rational();
                if (!value) throw CharError("trace route gives an irrational multiplicity");
                m(mrep, l) = certify_nonneg_int(*value, "trace-route multiplicity in '" + data.id + "'");
            }
        }
        traced.push_back(std::move(m));
    }

    for (int i = 0; i < ring->rank(); ++i)
        if (symbolic[static_cast<std::size_t>(i)] != traced[static_cast<std::size_t>(i)])
            throw CharError("twisted module for '" + data.id +
                            "': tensor-rule route and trace route disagree at " + ring->label(i));

    BasedModule module = make_module(ring, std::move(symbolic));
    require_valid_module(module, "r(" + H.id + ", alpha) over r(" + G.id + ")");
    return module;
}

CharacterTable table_from_json(const nlohmann::json& j) {
    CharacterTable t;
    t.id = j.at("id").get<std::string>();
    t.order = j.at("order").get<Int>();
    t.conductor = j.value("conductor", 24);
    const std::string kind = j.value("kind", std::string("ordinary"));
    if (kind == "ordinary")
        t.kind = TableKind::Ordinary;
    else if (kind == "double-cover")
        t.kind = TableKind::DoubleCover;
    else
        throw CharError("table '" + t.id + "': unknown kind '" + kind + "'");
    if (t.kind == TableKind::DoubleCover) t.base_id = j.at("base").get<std::string>();

    for (const auto& jc : j.at("classes")) {
        ConjClass c;
        c.label = jc.at("label").get<std::string>();
        c.size = jc.at("size").get<Int>();
        c.rep_word = jc.value("rep", std::string());
        c.base_class = jc.value("base_class", std::string());
        t.classes.push_back(std::move(c));
    }
    for (const auto& jc : j.at("characters")) {
        Character ch;
        ch.label = jc.at("label").get<std::string>();
        ch.spin = jc.value("spin", false);
        for (const auto& v : jc.at("values"))
            ch.values.push_back(parse_cyclo(v.get<std::string>(), t.conductor));
        t.chars.push_back(std::move(ch));
    }
    return t;
}

Embedding embedding_from_json(const nlohmann::json& j) {
    Embedding e;
    e.sub_id = j.at("subgroup").get<std::string>();
    e.super_id = j.at("supergroup").get<std::string>();
    if (j.contains("generators"))
        for (const auto& [name, word] : j.at("generators").items())
            e.generators[name] = word.get<std::string>();
    if (j.contains("relations"))
        for (const auto& rel : j.at("relations"))
            e.relations.push_back(rel.get<std::vector<std::string>>());
    for (const auto& [sub_cls, super_cls] : j.at("class_map").items())
        e.class_map[sub_cls] = super_cls.get<std::string>();
    return e;
}

ProjRepData projrep_from_json(const nlohmann::json& j, int npoints) {
    ProjRepData d;
    d.id = j.at("id").get<std::string>();
    d.group_id = j.at("group").get<std::string>();
    d.conductor = j.value("conductor", 24);
    d.cocycle_root = j.at("cocycle_root").get<int>();
    for (const auto& [name, word] : j.at("generators").items())
        d.generators[name] = word.get<std::string>();
    if (j.contains("relations"))
        for (const auto& rel : j.at("relations"))
            d.relations.push_back(rel.get<std::vector<std::string>>());

    // Elements are normal forms r^i s^j; their permutations come from the
    // generator images, rightmost factor acting first.
    const Perm r = parse_cycles(d.generators.at("r"), npoints);
    const Perm s = parse_cycles(d.generators.at("s"), npoints);
    for (const auto& je : j.at("elements")) {
        ProjElement el;
        el.label = je.at("label").get<std::string>();
        el.i = je.at("i").get<int>();
        el.j = je.at("j").get<int>();
        el.class_label = je.at("class").get<std::string>();
        Perm p = identity_perm(npoints);
        for (int t = 0; t < el.j; ++t) p = compose(s, p);
        for (int t = 0; t < el.i; ++t) p = compose(r, p);
        el.perm = std::move(p);
        d.elements.push_back(std::move(el));
    }

    auto read_cyc_matrix = [&](const nlohmann::json& rows) {
        CycMatrix m;
        for (const auto& row : rows) {
            std::vector<Cyclotomic> out;
            for (const auto& v : row) out.push_back(parse_cyclo(v.get<std::string>(), d.conductor));
            m.push_back(std::move(out));
        }
        return m;
    };
    for (const auto& jr : j.at("reps")) {
        ProjRep rep;
        rep.label = jr.at("label").get<std::string>();
        rep.gen_r = read_cyc_matrix(jr.at("r"));
        rep.gen_s = read_cyc_matrix(jr.at("s"));
        d.reps.push_back(std::move(rep));
    }
    for (const auto& [label, images] : j.at("tensor").items()) {
        std::vector<std::vector<std::string>> per_rep;
        for (const auto& image : images) per_rep.push_back(image.get<std::vector<std::string>>());
        d.tensor[label] = std::move(per_rep);
    }
    return d;
}

}  // namespace fusionmod
