#pragma once

#include "fusionmod/cyclo.hpp"
#include "fusionmod/perm.hpp"
#include "fusionmod/zmodule.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

namespace fusionmod {

struct CharError : Error {
    using Error::Error;
};
struct NonIntegralMultiplicity : CharError {
    using CharError::CharError;
};
struct SpinClosureViolation : CharError {
    using CharError::CharError;
};

struct ConjClass {
    std::string label;
    Int size = 0;
    std::string rep_word;    // permutation word for ordinary tables
    std::string base_class;  // double covers: image class under the covering map
};

struct Character {
    std::string label;
    std::vector<Cyclotomic> values;  // one per class, table order
    bool spin = false;               // double covers: faithful on the central Z_2
};

enum class TableKind { Ordinary, DoubleCover };

struct CharacterTable {
    std::string id;
    Int order = 0;
    int conductor = 24;
    TableKind kind = TableKind::Ordinary;
    std::string base_id;  // double covers only
    std::vector<ConjClass> classes;
    std::vector<Character> chars;

    int class_index(const std::string& label) const;
    int char_index(const std::string& label) const;
    int identity_class() const;  // the class whose representative word is "e" / "()"
    int num_classes() const { return static_cast<int>(classes.size()); }
};

// A class function, one exact value per conjugacy class in table order.
using ClassFn = std::vector<Cyclotomic>;

ClassFn char_values(const CharacterTable& table, int char_idx);
ClassFn pointwise_product(const ClassFn& a, const ClassFn& b);

// (1/|G|) sum over classes of size * chi * conj(phi), exact. Throws CharError
// when the value is not rational.
Rational inner_product(const CharacterTable& table, const ClassFn& chi, const ClassFn& phi);

// Multiplicity of each listed irreducible in the class function.
std::vector<Rational> decompose_class_fn(const CharacterTable& table, const ClassFn& fn);

// Class sizes, row orthogonality, and column orthogonality, all exact.
ValidationReport validate_table(const CharacterTable& table);

// Cover-specific structure: class sizes against fibers, fiber-constant
// lifted rows, and spin rows negated on the central element.
ValidationReport validate_double_cover(const CharacterTable& cover, const CharacterTable& base);

// A subgroup inclusion H <= G recorded as generator images plus an explicit
// class map; the class map is cross-checked against cycle types and the
// generator relations are verified by composing permutations.
struct Embedding {
    std::string sub_id, super_id;
    std::map<std::string, std::string> generators;        // name -> permutation word in G
    std::vector<std::vector<std::string>> relations;      // generator words composing to identity
    std::map<std::string, std::string> class_map;         // H class label -> G class label
};

// npoints: how many points the supergroup's permutations act on.
ValidationReport validate_embedding(const Embedding& emb, const CharacterTable& sub,
                                    const CharacterTable& super, int npoints);

// Values of a supergroup character pulled back to the subgroup's classes.
ClassFn restrict_char(const Embedding& emb, const CharacterTable& sub, const CharacterTable& super,
                      int super_char);

// The module over r(G) on the irreducibles of H: entry (l, k) of the matrix
// of basis element i is <Res(chi_i) phi_k, phi_l>_H, certified a nonnegative
// integer. The result must pass the representation and based checks.
BasedModule restriction_module(const CharacterTable& G, const CharacterTable& H,
                               const Embedding& emb, const RingPtr& ring);

// Twisted analogue via the double cover: the module on the spin characters,
// with restricted characters lifted through the covering map. Products of a
// lifted character with a spin character must decompose into spin characters
// only.
BasedModule projective_module(const CharacterTable& G, const CharacterTable& cover,
                              const Embedding& emb, const RingPtr& ring);

// Explicit projective representation data for the small twisted cases:
// elements r^i s^j with permutation images, generator matrices over
// Q(zeta_N), tensor rules, and the diagonal cocycle
// alpha(r^i s^j, r^i' s^j') = zeta_root^(j i').
struct ProjElement {
    std::string label;
    int i = 0, j = 0;
    std::string class_label;
    Perm perm;
};

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

struct ProjRep {
    std::string label;
    CycMatrix gen_r, gen_s;  // images of the two generators
};

struct ProjRepData {
    std::string id;
    std::string group_id;  // ordinary table id
    int conductor = 24;
    std::map<std::string, std::string> generators;
    std::vector<std::vector<std::string>> relations;
    int cocycle_root = 2;
    std::vector<ProjElement> elements;
    std::vector<ProjRep> reps;
    // ordinary irrep label -> per projective rep, the multiset it tensors to
    std::map<std::string, std::vector<std::vector<std::string>>> tensor;
};

CycMatrix proj_matrix(const ProjRepData& data, const ProjRep& rep, int i, int j);
Cyclotomic cocycle_value(const ProjRepData& data, const ProjElement& g, const ProjElement& h);

// Checks pi(g) pi(h) = alpha(g, h) pi(gh) for all pairs and the cocycle
// identity for all triples, exactly. Violations are reported, not thrown.
ValidationReport verify_projective_rep(const ProjRepData& data, const CharacterTable& group);

// Module over r(G) on the projective irreducibles, computed two ways: from
// the recorded tensor rules composed with the ordinary restriction rules,
// and from projective characters taken as traces of the explicit matrices.
// The two routes must agree exactly.
BasedModule twisted_module_from_projrep(const ProjRepData& data, const CharacterTable& G,
                                        const CharacterTable& H, const Embedding& emb,
                                        const RingPtr& ring);

CharacterTable table_from_json(const nlohmann::json& j);
Embedding embedding_from_json(const nlohmann::json& j);
ProjRepData projrep_from_json(const nlohmann::json& j, int npoints);

}  // namespace fusionmod
