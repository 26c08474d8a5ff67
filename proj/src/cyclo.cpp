#include "fusionmod/cyclo.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace fusionmod {

int euler_phi(int n) {
    if (n <= 0) throw Error("euler_phi: conductor must be positive");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Quotient of monic polynomials, exact. Coefficients constant-term first.
std::vector<Rational> poly_divide_exact(std::vector<Rational> num, const std::vector<Rational>& den) {
    const int dn = static_cast<int>(num.size()) - 1;
    const int dd = static_cast<int>(den.size()) - 1;
    std::vector<Rational> q(static_cast<std::size_t>(dn - dd + 1), Rational(0));
    for (int i = dn; i >= dd; --i) {
        const Rational c = num[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        q[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j)
            num[static_cast<std::size_t>(i - dd + j)] -= c * den[static_cast<std::size_t>(j)];
    }
    for (const auto& c : num)
        if (c != 0) throw Error("cyclotomic polynomial division not exact");
    return q;
}

std::map<int, std::vector<Rational>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

std::vector<Rational> compute_cyclotomic(int n);

const std::vector<Rational>& cached_cyclotomic(int n) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(n);
    if (it == g_cyclo_cache.end()) it = g_cyclo_cache.emplace(n, compute_cyclotomic(n)).first;
    return it->second;
}

// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
std::vector<Rational> compute_cyclotomic(int n) {
    if (n == 1) return {Rational(-1), Rational(1)};
    std::vector<Rational> num(static_cast<std::size_t>(n) + 1, Rational(0));
    num[0] = Rational(-1);
    num[static_cast<std::size_t>(n)] = Rational(1);
    std::vector<Rational> result = num;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto it = g_cyclo_cache.find(d);
        if (it == g_cyclo_cache.end()) it = g_cyclo_cache.emplace(d, compute_cyclotomic(d)).first;
        result = poly_divide_exact(result, it->second);
    }
    return result;
}

// Reduce a raw power-basis vector modulo Phi_N down to degree < phi(N).
std::vector<Rational> reduce_mod_phi(std::vector<Rational> raw, int conductor) {
    const std::vector<Rational>& phi = cached_cyclotomic(conductor);
    const int d = static_cast<int>(phi.size()) - 1;
    if (static_cast<int>(raw.size()) < d) raw.resize(static_cast<std::size_t>(d), Rational(0));
    for (int i = static_cast<int>(raw.size()) - 1; i >= d; --i) {
        const Rational c = raw[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j)
            raw[static_cast<std::size_t>(i - d + j)] -= c * phi[static_cast<std::size_t>(j)];
    }
    raw.resize(static_cast<std::size_t>(d));
    return raw;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(int n) { return cached_cyclotomic(n); }

Cyclotomic::Cyclotomic(int conductor, Rational rational_value) : conductor_(conductor) {
    if (conductor <= 0) throw Error("conductor must be positive");
    coeffs_.assign(static_cast<std::size_t>(euler_phi(conductor)), Rational(0));
    coeffs_[0] = std::move(rational_value);
}

Cyclotomic::Cyclotomic(int conductor, std::vector<Rational> raw, bool) : conductor_(conductor) {
    coeffs_ = reduce_mod_phi(std::move(raw), conductor);
}

Cyclotomic Cyclotomic::root_of_unity(int k, int n, int conductor) {
    if (n <= 0 || conductor % n != 0)
        throw Error("root_of_unity: order " + std::to_string(n) + " does not divide conductor " +
                    std::to_string(conductor));
    const int e = ((k % n) + n) % n * (conductor / n);
    std::vector<Rational> raw(static_cast<std::size_t>(e) + 1, Rational(0));
    raw[static_cast<std::size_t>(e)] = Rational(1);
    return Cyclotomic(conductor, std::move(raw), true);
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeffs_[0];
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<Rational> raw(static_cast<std::size_t>(conductor_), Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        const int e = static_cast<int>((conductor_ - static_cast<int>(k)) % conductor_);
        raw[static_cast<std::size_t>(e)] += coeffs_[k];
    }
    return Cyclotomic(conductor_, std::move(raw), true);
}

void Cyclotomic::check_same_field(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_)
        throw ConductorMismatch("conductor mismatch: " + std::to_string(conductor_) + " vs " +
                                std::to_string(o.conductor_));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    check_same_field(o);
    const std::size_t d = coeffs_.size();
    std::vector<Rational> raw(2 * d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (o.coeffs_[j] == 0) continue;
            raw[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    coeffs_ = reduce_mod_phi(std::move(raw), conductor_);
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r) {
    if (r == 0) throw Error("division by zero rational");
    for (auto& c : coeffs_) c /= r;
    return *this;
}

std::string Cyclotomic::str() const {
    if (is_rational()) return to_string(coeffs_[0]);
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        if (!s.empty()) s += " + ";
        s += to_string(coeffs_[k]);
        if (k > 0) s += "*z" + std::to_string(conductor_) + "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

namespace {

// Recursive-descent parser for character-value expressions.
class CycloParser {
public:
    CycloParser(const std::string& text, int conductor) : text_(text), conductor_(conductor) {}

    Cyclotomic parse() {
        Cyclotomic v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return v;
    }

private:
    Cyclotomic expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = (get() == '-');
        }
        Cyclotomic v = term();
        if (neg) v = -v;
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') break;
            get();
            Cyclotomic t = term();
            if (c == '+')
                v += t;
            else
                v -= t;
        }
        return v;
    }

    Cyclotomic term() {
        Cyclotomic v = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            get();
            v *= factor();
        }
        return v;
    }

    Cyclotomic factor() {
        Cyclotomic base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                get();
            }
            const long long e = integer();
            if (neg) fail("negative exponents are not supported");
            Cyclotomic v = Cyclotomic::one(conductor_);
            for (long long i = 0; i < e; ++i) v *= base;
            return v;
        }
        return base;
    }

    Cyclotomic atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            get();
            Cyclotomic v = expr();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return v;
        }
        if (c == '-') {
            get();
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const long long num = integer();
            skip_ws();
            if (peek() == '/') {
                get();
                const long long den = integer();
                if (den == 0) fail("zero denominator");
                return Cyclotomic(conductor_, Rational(num) / Rational(den));
            }
            return Cyclotomic(conductor_, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                name += text_[pos_++];
            if (name == "w") return Cyclotomic::root_of_unity(1, 3, conductor_);
            if (name == "i") return Cyclotomic::root_of_unity(1, 4, conductor_);
            if (name == "sqrt2")
                return Cyclotomic::root_of_unity(1, 8, conductor_) +
                       Cyclotomic::root_of_unity(-1, 8, conductor_);
            if (name.size() > 1 && name[0] == 'z') {
                const int n = std::stoi(name.substr(1));
                return Cyclotomic::root_of_unity(1, n, conductor_);
            }
            fail("unknown symbol '" + name + "'");
        }
        fail("unexpected character");
        return Cyclotomic::zero(conductor_);  // unreachable
    }

    long long integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& why) {
        throw Error("cyclotomic value '" + text_ + "': " + why);
    }

    const std::string& text_;
    int conductor_;
    std::size_t pos_ = 0;
};

}  // namespace

Cyclotomic parse_cyclo(const std::string& text, int conductor) {
    return CycloParser(text, conductor).parse();
}

}  // namespace fusionmod
