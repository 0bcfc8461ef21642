#include "geoelim/rational.hpp"

#include "geoelim/errors.hpp"

#include <cmath>

namespace geoelim::exactmath {

Rational make_rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

int sign(const Rational& r) { return mpq_sgn(r.get_mpq_t()); }

double to_double(const Rational& r) { return r.get_d(); }

Int floor_int(const Rational& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Int ceil_int(const Rational& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num, den;
        if (num.set_str(text.substr(0, slash), 10) != 0) return std::nullopt;
        if (den.set_str(text.substr(slash + 1), 10) != 0) return std::nullopt;
        if (den == 0) return std::nullopt;
        return make_rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        Int num;
        if (num.set_str(digits, 10) != 0) return std::nullopt;
        Int den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return make_rational(num, den);
    }
    Int num;
    if (num.set_str(text, 10) != 0) return std::nullopt;
    return Rational(num);
}

void squarefree_decompose(const Int& n, Int& s, Int& d) {
    if (n <= 0) throw DomainError("squarefree_decompose expects a positive integer");
    s = 1;
    d = 1;
    Int rest = n;
    // Pull out small prime squares by trial division.
    for (unsigned long p = 2; p <= 1000000ul && rest > 1; p = (p == 2 ? 3 : p + 2)) {
        Int pz(p);
        if (pz * pz > rest && mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) {
            if (pz > rest) break;
            continue;
        }
        unsigned exp = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++exp;
        }
        for (unsigned i = 0; i + 1 < exp; i += 2) s *= p;
        if (exp & 1u) d *= p;
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            Int root;
            mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
            s *= root;
        } else {
            d *= rest;
        }
    }
}

} // namespace geoelim::exactmath
