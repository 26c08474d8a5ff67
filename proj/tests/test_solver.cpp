#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <set>

using namespace fusionmod;
using namespace testsupport;

namespace {

const SolvePlan& s4_plan() { return catalog().plan("s4"); }

std::map<int, IntMatrix> solved_t(const IntMatrix& t) {
    return {{s4_ring()->index_of("psi"), t}};
}

std::map<int, IntMatrix> solved_tq(const IntMatrix& t, const IntMatrix& q) {
    auto m = solved_t(t);
    m[s4_ring()->index_of("rho1")] = q;
    return m;
}

std::set<std::vector<Int>> key_set(const ClassificationResult& r) {
    std::set<std::vector<Int>> out;
    for (const auto& k : r.keys) out.insert(k.flat);
    return out;
}

}  // namespace

TEST_CASE("involution representatives") {
    CHECK(involution_representatives(1).size() == 1);
    CHECK(involution_representatives(4).size() == 3);
    CHECK(involution_representatives(5).size() == 3);
    CHECK(involution_representatives(8).size() == 5);
    const auto reps = involution_representatives(4);
    CHECK(is_identity(reps[0]));
    CHECK(reps[1] == mat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK(reps[2] == mat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
    for (const auto& r : reps) {
        CHECK(is_permutation_matrix(r));
        CHECK(is_symmetric(r));
        CHECK(is_identity(r * r));
    }
    CHECK_THROWS_AS(involution_representatives(0), std::invalid_argument);
    CHECK_THROWS_AS(involution_representatives(13), std::invalid_argument);
}

TEST_CASE("involution counts") {
    CHECK(involution_count(1) == 1);
    CHECK(involution_count(2) == 2);
    CHECK(involution_count(3) == 4);
    CHECK(involution_count(4) == 10);
    CHECK(involution_count(5) == 26);
}

TEST_CASE("constraint parsing") {
    const auto& ring = *s4_ring();
    const Equation eq = parse_equation("rho2*rho2 = E + rho1 + rho2 + psi*rho2", ring);
    CHECK(eq.lhs.terms.size() == 1);
    CHECK(eq.lhs.terms[0].kind == Term::Kind::Product);
    CHECK(eq.rhs.terms.size() == 4);
    CHECK(eq.rhs.terms[0].kind == Term::Kind::Identity);

    CHECK_THROWS_AS(parse_equation("psi*psi*psi = E", ring), Error);
    CHECK_THROWS_AS(parse_equation("psi = E = E", ring), Error);
    CHECK_THROWS_AS(parse_equation("bogus = E", ring), Error);
}

TEST_CASE("plan validation") {
    const auto& ring = *s4_ring();
    SolvePlan incomplete = s4_plan();
    incomplete.derived.clear();  // rho3 now unassigned
    CHECK_THROWS_AS(validate_plan(incomplete, ring), Error);

    SolvePlan doubled = s4_plan();
    doubled.derived[ring.index_of("rho2")] = doubled.derived.begin()->second;
    CHECK_THROWS_AS(validate_plan(doubled, ring), Error);
}

TEST_CASE("stage solution counts, rank 4") {
    const auto& ring = *s4_ring();
    const auto& q_stage = s4_plan().stages[1];
    const auto& u_stage = s4_plan().stages[2];
    const auto t_reps = involution_representatives(4);

    const auto q_at_identity = solve_stage(q_stage, solved_t(t_reps[0]), ring, 4);
    CHECK(q_at_identity.size() == 5);

    // All five appear symmetric with the right square.
    for (const auto& q : q_at_identity) {
        CHECK(is_symmetric(q));
        CHECK(q * q == IntMatrix::Identity(4, 4) + t_reps[0] + q);
    }

    const IntMatrix q_diag = 2 * IntMatrix::Identity(4, 4);
    CHECK(std::count(q_at_identity.begin(), q_at_identity.end(), q_diag) == 1);
    const auto u_for_diag = solve_stage(u_stage, solved_tq(t_reps[0], q_diag), ring, 4);
    CHECK(u_for_diag.size() == 11);

    const auto q_at_transposition = solve_stage(q_stage, solved_t(t_reps[1]), ring, 4);
    CHECK(q_at_transposition.size() == 3);

    const auto q_at_double = solve_stage(q_stage, solved_t(t_reps[2]), ring, 4);
    REQUIRE(q_at_double.size() == 1);
    CHECK(q_at_double[0] == mat({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}));
    CHECK(solve_stage(u_stage, solved_tq(t_reps[2], q_at_double[0]), ring, 4).size() == 8);
}

TEST_CASE("stage solution counts, rank 5") {
    const auto& ring = *s4_ring();
    const auto& q_stage = s4_plan().stages[1];
    const auto t_reps = involution_representatives(5);

    CHECK(solve_stage(q_stage, solved_t(t_reps[0]), ring, 5).size() == 11);
    CHECK(solve_stage(q_stage, solved_t(t_reps[1]), ring, 5).size() == 5);
    CHECK(solve_stage(q_stage, solved_t(t_reps[2]), ring, 5).size() == 3);
}

TEST_CASE("stage solutions come out deterministically ordered") {
    const auto& ring = *s4_ring();
    const auto& q_stage = s4_plan().stages[1];
    const IntMatrix t = IntMatrix::Identity(4, 4);
    const auto once = solve_stage(q_stage, solved_t(t), ring, 4);
    const auto twice = solve_stage(q_stage, solved_t(t), ring, 4);
    CHECK(once == twice);
    for (std::size_t i = 1; i < once.size(); ++i) CHECK(flatten(once[i - 1]) < flatten(once[i]));
}

TEST_CASE("stage solutions transform along commuting conjugations") {
    const auto& ring = *s4_ring();
    const auto& q_stage = s4_plan().stages[1];
    const IntMatrix t = involution_representatives(4)[1];  // (12)

    // (34) commutes with (12): conjugating every solution must permute the
    // solution set of the conjugated (here identical) input.
    Perm p = identity_perm(4);
    std::swap(p[2], p[3]);
    REQUIRE(conjugate(t, p) == t);

    const auto sols = solve_stage(q_stage, solved_t(t), ring, 4);
    std::set<std::vector<Int>> as_set, conjugated;
    for (const auto& s : sols) {
        as_set.insert(flatten(s));
        conjugated.insert(flatten(conjugate(s, p)));
    }
    CHECK(as_set == conjugated);
}

TEST_CASE("a stage without a quadratic diagonal identity is rejected") {
    const auto& ring = *s4_ring();
    Stage bare;
    bare.target = ring.index_of("rho1");
    bare.symmetry = StageSymmetry::SymmetricZPlus;
    bare.constraints.push_back(parse_equation("psi*rho1 = rho1", ring));
    CHECK_THROWS_AS(solve_stage(bare, solved_t(IntMatrix::Identity(3, 3)), ring, 3),
                    UnboundedSearch);
}

TEST_CASE("full enumeration per rank") {
    const auto ring = s4_ring();

    const auto rank1 = enumerate_based_modules(ring, 1, s4_plan());
    REQUIRE(rank1.modules.size() == 1);
    const auto& m = rank1.modules[0];
    CHECK(m.matrices[static_cast<std::size_t>(ring->index_of("psi"))](0, 0) == 1);
    CHECK(m.matrices[static_cast<std::size_t>(ring->index_of("rho1"))](0, 0) == 2);
    CHECK(m.matrices[static_cast<std::size_t>(ring->index_of("rho2"))](0, 0) == 3);
    CHECK(m.matrices[static_cast<std::size_t>(ring->index_of("rho3"))](0, 0) == 3);

    const auto rank4 = enumerate_based_modules(ring, 4, s4_plan());
    CHECK(rank4.modules.size() == 7);
    std::set<std::vector<Int>> fixture_keys;
    for (const auto& f : catalog().fixtures)
        if (f.rank == 4) fixture_keys.insert(f.key.flat);
    CHECK(key_set(rank4) == fixture_keys);

    const auto rank5 = enumerate_based_modules(ring, 5, s4_plan());
    CHECK(rank5.modules.size() == 2);
}

TEST_CASE("classification aggregates ranks") {
    const auto results = classify(s4_ring(), 2, s4_plan());
    REQUIRE(results.size() == 2);
    CHECK(results[0].modules.size() == 1);
    CHECK(results[1].modules.size() == 3);
    CHECK_THROWS_AS(classify(s4_ring(), 0, s4_plan()), Error);
}

TEST_CASE("staged search agrees with naive enumeration at small rank") {
    for (int rank = 1; rank <= 2; ++rank) {
        const auto naive = brute_force_s4_modules(rank, 3);
        std::set<std::vector<Int>> naive_keys;
        for (const auto& m : naive)
            if (is_irreducible(m)) naive_keys.insert(canonical_key(m).flat);
        const auto staged = enumerate_based_modules(s4_ring(), rank, s4_plan());
        CHECK(key_set(staged) == naive_keys);
    }
}

TEST_CASE("every emitted module verifies and is irreducible") {
    for (int rank = 1; rank <= 4; ++rank) {
        const auto result = enumerate_based_modules(s4_ring(), rank, s4_plan());
        for (const auto& m : result.modules) {
            CHECK(check_representation(m).ok());
            CHECK(check_based(m).ok());
            CHECK(is_irreducible(m));
        }
        // Keys are strictly increasing, hence pairwise distinct.
        for (std::size_t i = 1; i < result.keys.size(); ++i)
            CHECK(result.keys[i - 1] < result.keys[i]);
    }
}
