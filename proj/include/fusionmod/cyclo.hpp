#pragma once

#include "fusionmod/rational.hpp"

#include <string>
#include <vector>

namespace fusionmod {

struct ConductorMismatch : Error {
    using Error::Error;
};

// An element of Q(zeta_N) for a fixed conductor N, stored as a rational
// coefficient vector over the power basis zeta^0..zeta^{phi(N)-1}, always
// fully reduced modulo the N-th cyclotomic polynomial. Reduction is
// canonical, so equality is coefficient equality.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeffs_(1, Rational(0)) {}
    Cyclotomic(int conductor, Rational rational_value);

    static Cyclotomic zero(int conductor) { return Cyclotomic(conductor, Rational(0)); }
    static Cyclotomic one(int conductor) { return Cyclotomic(conductor, Rational(1)); }

    // zeta_n^k viewed inside Q(zeta_N); n must divide N.
    static Cyclotomic root_of_unity(int k, int n, int conductor);

    int conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // The rational value when this element lies in Q, nullopt otherwise.
    std::optional<Rational> as_rational() const;

    Cyclotomic conj() const;  // complex conjugation zeta -> zeta^{N-1}

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic& operator/=(const Rational& r);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    std::string str() const;

private:
    // Unreduced power-basis vector of arbitrary length; reduces in place.
    Cyclotomic(int conductor, std::vector<Rational> raw, bool reduce_tag);

    void check_same_field(const Cyclotomic& o) const;

    int conductor_;
    std::vector<Rational> coeffs_;  // length phi(conductor)
};

int euler_phi(int n);

// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<Rational>& cyclotomic_polynomial(int n);

// Parses the table-file value syntax: integer/rational literals, `w` (zeta_3),
// `i` (zeta_4), `sqrt2` (zeta_8 + zeta_8^-1), `z<n>` (zeta_n), with `+ - * ^`
// and parentheses.
Cyclotomic parse_cyclo(const std::string& text, int conductor);

}  // namespace fusionmod
