#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionmod/cyclo.hpp"

#include <random>

using namespace fusionmod;

namespace {

constexpr int kN = 24;

Cyclotomic rat(int v) { return Cyclotomic(kN, Rational(v)); }

Cyclotomic random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    Cyclotomic x = Cyclotomic::zero(kN);
    for (int k = 0; k < 8; ++k) {
        Cyclotomic term = Cyclotomic::root_of_unity(k, kN, kN);
        term *= Rational(num(rng)) / Rational(den(rng));
        x += term;
    }
    return x;
}

}  // namespace

TEST_CASE("roots of unity and standard identities") {
    const Cyclotomic w = Cyclotomic::root_of_unity(1, 3, kN);
    const Cyclotomic w2 = Cyclotomic::root_of_unity(2, 3, kN);
    CHECK(w + w2 == rat(-1));

    const Cyclotomic sqrt2 =
        Cyclotomic::root_of_unity(1, 8, kN) + Cyclotomic::root_of_unity(7, 8, kN);
    CHECK(sqrt2 * sqrt2 == rat(2));

    const Cyclotomic i = Cyclotomic::root_of_unity(1, 4, kN);
    CHECK(i * i == rat(-1));

    CHECK(w * w.conj() == rat(1));
    CHECK(Cyclotomic::root_of_unity(24, 24, kN) == rat(1));

    CHECK_THROWS_AS(Cyclotomic::root_of_unity(1, 5, kN), Error);
}

TEST_CASE("the cyclotomic polynomial vanishes at the generator") {
    for (int n : {1, 2, 3, 4, 8, 12, 24}) {
        const auto& phi = cyclotomic_polynomial(n);
        const Cyclotomic zeta = Cyclotomic::root_of_unity(1, n, n);
        Cyclotomic value = Cyclotomic::zero(n);
        Cyclotomic power = Cyclotomic::one(n);
        for (const auto& coeff : phi) {
            value += power * coeff;
            power *= zeta;
        }
        CHECK(value.is_zero());
    }
    CHECK(euler_phi(24) == 8);
    CHECK(static_cast<int>(cyclotomic_polynomial(24).size()) == 9);
}

TEST_CASE("rationality detection") {
    CHECK(rat(-1).as_rational() == Rational(-1));
    CHECK(!Cyclotomic::root_of_unity(1, 3, kN).as_rational().has_value());
    CHECK(rat(0).is_zero());
}

TEST_CASE("field axioms and conjugation on random elements") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const Cyclotomic a = random_element(rng);
        const Cyclotomic b = random_element(rng);
        const Cyclotomic c = random_element(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
    }
}

TEST_CASE("conjugation inverts roots of unity") {
    for (int k = 0; k < 8; ++k)
        CHECK(Cyclotomic::root_of_unity(k, 8, kN).conj() == Cyclotomic::root_of_unity(-k, 8, kN));
}

TEST_CASE("conductor mismatch is rejected") {
    Cyclotomic a = Cyclotomic::one(24);
    const Cyclotomic b = Cyclotomic::one(12);
    CHECK_THROWS_AS(a += b, ConductorMismatch);
}

TEST_CASE("value expression parser") {
    CHECK(parse_cyclo("w", kN) == Cyclotomic::root_of_unity(1, 3, kN));
    CHECK(parse_cyclo("i", kN) == Cyclotomic::root_of_unity(1, 4, kN));
    CHECK(parse_cyclo("sqrt2", kN) * parse_cyclo("sqrt2", kN) == rat(2));
    CHECK(parse_cyclo("w^2", kN) == Cyclotomic::root_of_unity(2, 3, kN));
    CHECK(parse_cyclo("-w^2", kN) == -Cyclotomic::root_of_unity(2, 3, kN));
    CHECK(parse_cyclo("w + w^2", kN) == rat(-1));
    CHECK(parse_cyclo("z8^2", kN) == Cyclotomic::root_of_unity(1, 4, kN));
    CHECK(parse_cyclo("1/2 * i * i", kN) == Cyclotomic(kN, Rational(-1) / Rational(2)));
    CHECK(parse_cyclo("(1 + w) * (1 + w^2)", kN) == rat(1));
    CHECK(parse_cyclo("2*w + 1 - w - w", kN) == rat(1));
    CHECK_THROWS_AS(parse_cyclo("q", kN), Error);
    CHECK_THROWS_AS(parse_cyclo("1 +", kN), Error);
}

// The 2.A4 spin character has norm one against the sizes that the catalog
// carries for the double cover; computed here from scratch.
TEST_CASE("spin character norm over the double cover of A4") {
    const Cyclotomic w = Cyclotomic::root_of_unity(1, 3, kN);
    const Cyclotomic w2 = Cyclotomic::root_of_unity(2, 3, kN);
    const std::vector<Int> sizes = {1, 1, 6, 4, 4, 4, 4};
    const std::vector<Cyclotomic> gamma1 = {rat(2), rat(-2), rat(0), rat(1), rat(-1), rat(1), rat(-1)};
    const std::vector<Cyclotomic> gamma2 = {rat(2), rat(-2), rat(0), w, -w, w2, -w2};

    auto pairing = [&](const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
        Cyclotomic sum = Cyclotomic::zero(kN);
        for (std::size_t c = 0; c < sizes.size(); ++c)
            sum += a[c] * b[c].conj() * Rational(sizes[c]);
        sum /= Rational(24);
        return sum;
    };
    CHECK(pairing(gamma1, gamma1) == rat(1));
    CHECK(pairing(gamma2, gamma2) == rat(1));
    CHECK(pairing(gamma1, gamma2) == rat(0));
}
