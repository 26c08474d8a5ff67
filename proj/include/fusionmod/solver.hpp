#pragma once

#include "fusionmod/zmodule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fusionmod {

struct UnboundedSearch : Error {
    using Error::Error;
};

// Constraint expressions over the ring's basis symbols: sums of terms, each
// term the identity E, a single symbol, or a product of two symbols.
struct Term {
    enum class Kind { Identity, Symbol, Product };
    Kind kind = Kind::Identity;
    int a = -1, b = -1;  // basis indices; Symbol uses a, Product uses a*b
};

struct Expr {
    std::vector<Term> terms;
    std::string text;
};

struct Equation {
    Expr lhs, rhs;
    std::string text;
};

enum class StageSymmetry { Permutation, SymmetricZPlus };

struct Stage {
    int target = -1;
    StageSymmetry symmetry = StageSymmetry::SymmetricZPlus;
    std::vector<Equation> constraints;
};

// A staged search strategy: one stage per unknown matrix, remaining basis
// elements derived as products of solved ones. Correctness never rests on
// the plan: every assembled module is re-verified against the full
// representation property.
struct SolvePlan {
    std::string id;
    std::string ring_id;
    std::vector<Stage> stages;
    std::map<int, Term> derived;  // basis index -> product of solved symbols
};

Expr parse_expr(const std::string& text, const FusionRing& ring);
Equation parse_equation(const std::string& text, const FusionRing& ring);

SolvePlan plan_from_json(const nlohmann::json& j, const FusionRing& ring);

// Evaluates an expression under a complete assignment of its symbols.
IntMatrix eval_expr(const Expr& e, const std::map<int, IntMatrix>& assign, int n);

// Checks stage/derived coverage and that constraints reference only E, the
// unit, earlier targets, or the stage's own target.
void validate_plan(const SolvePlan& plan, const FusionRing& ring);

// One symmetric permutation matrix per conjugacy class of involutions
// (identity included): (12), (12)(34), ... Count is floor(n/2) + 1.
std::vector<IntMatrix> involution_representatives(int n);

// Number of involutions (including the identity) in S_n.
Int involution_count(int n);

// All symmetric nonnegative-integer matrices satisfying the stage's
// constraints given the already-solved assignment, in row-major
// lexicographic order. Backtracking over the upper-triangular unknowns with
// entry bounds read off diagonal quadratic identities, entry merges implied
// by the linear constraints, and interval pruning of partial sums.
std::vector<IntMatrix> solve_stage(const Stage& stage, const std::map<int, IntMatrix>& solved,
                                   const FusionRing& ring, int rank);

// Search trace: for each processed class representative, how many raw
// solutions the next stage had and how they split into conjugacy classes
// under the stabilizer of everything solved so far.
struct SolveNode {
    IntMatrix rep;
    Int next_raw = 0;
    Int next_classes = 0;
    std::vector<SolveNode> children;
    bool assembled = false;     // leaf: full module built and verified
    bool irreducible = false;   // leaf: survived the irreducibility filter
};

struct SolveTrace {
    int rank = 0;
    Int stage0_raw = 0;
    Int stage0_classes = 0;
    std::vector<SolveNode> roots;
};

struct ClassificationResult {
    int rank = 0;
    std::vector<BasedModule> modules;  // irreducible, canonical form, sorted by key
    std::vector<CanonicalKey> keys;    // parallel to modules
    SolveTrace trace;
};

ClassificationResult enumerate_based_modules(const RingPtr& ring, int rank, const SolvePlan& plan);

std::vector<ClassificationResult> classify(const RingPtr& ring, int max_rank, const SolvePlan& plan);

}  // namespace fusionmod
