#include "geoelim/algebraic_number.hpp"

#include "geoelim/errors.hpp"

#include <cmath>
#include <sstream>

namespace geoelim::exactmath {

namespace {

MultiPoly rational_minpoly(const Rational& v) {
    // q*x - p
    MultiPoly x = MultiPoly::variable(1, 0);
    MultiPoly m = x * Rational(v.get_den()) - MultiPoly::constant(1, Rational(v.get_num()));
    return m.primitive_integer_form();
}

MultiPoly surd_minpoly(const Int& p, const Int& q, const Int& r, const Int& d) {
    // From x = (p + q*sqrt(d))/r: r^2 x^2 - 2 p r x + p^2 - q^2 d = 0.
    MultiPoly x = MultiPoly::variable(1, 0);
    MultiPoly m = x * x * Rational(r * r) - x * Rational(2 * p * r) +
                  MultiPoly::constant(1, Rational(p * p - q * q * d));
    return m.primitive_integer_form();
}

} // namespace

AlgebraicNumber AlgebraicNumber::rational(const Rational& value) {
    AlgebraicNumber n;
    n.kind_ = Kind::Rational;
    n.value_ = value;
    n.minpoly_ = rational_minpoly(value);
    return n;
}

AlgebraicNumber AlgebraicNumber::surd(Int p, Int q, Int r, Int d) {
    if (r == 0) throw DomainError("surd with zero denominator");
    if (d <= 0) throw DomainError("surd radicand must be positive");
    if (r < 0) {
        p = -p;
        q = -q;
        r = -r;
    }
    // Move square factors of the radicand into q.
    Int s, d0;
    squarefree_decompose(d, s, d0);
    q *= s;
    d = d0;
    if (q == 0) return rational(make_rational(p, r));
    if (d == 1) return rational(make_rational(p + q, r));
    Int g = gcd(gcd(abs(p), abs(q)), r);
    if (g > 1) {
        p /= g;
        q /= g;
        r /= g;
    }
    AlgebraicNumber n;
    n.kind_ = Kind::QuadraticSurd;
    n.p_ = p;
    n.q_ = q;
    n.r_ = r;
    n.d_ = d;
    n.minpoly_ = surd_minpoly(p, q, r, d);
    return n;
}

const Rational& AlgebraicNumber::rational_value() const {
    if (kind_ != Kind::Rational) throw DomainError("not a rational algebraic number");
    return value_;
}

double AlgebraicNumber::to_double() const {
    if (kind_ == Kind::Rational) return exactmath::to_double(value_);
    return (p_.get_d() + q_.get_d() * std::sqrt(d_.get_d())) / r_.get_d();
}

Rational AlgebraicNumber::square_as_rational() const {
    if (kind_ == Kind::Rational) return value_ * value_;
    if (p_ == 0) return make_rational(q_ * q_ * d_, r_ * r_);
    throw QueryError("not a rational square: (" + to_text() + ")^2 is irrational");
}

std::pair<Rational, Rational> AlgebraicNumber::evaluate(const MultiPoly& poly) const {
    if (poly.var_count() != 1) throw StructuralError("evaluate expects a univariate polynomial");
    if (kind_ == Kind::Rational) {
        return {poly.eval_exact({value_}), Rational(0)};
    }
    // Horner over Q(sqrt(d)): value = a + b*sqrt(d).
    Rational theta_a = make_rational(p_, r_);
    Rational theta_b = make_rational(q_, r_);
    Rational dq(d_);
    std::uint32_t deg = poly.degree_in(0);
    std::vector<Rational> coeffs(deg + 1, Rational(0));
    for (const auto& t : poly.terms()) coeffs[t.exps[0]] = t.coeff;
    Rational a(0), b(0);
    for (std::uint32_t k = deg + 1; k-- > 0;) {
        // (a + b*sqrt(d)) * theta + c_k
        Rational na = a * theta_a + b * theta_b * dq + coeffs[k];
        Rational nb = a * theta_b + b * theta_a;
        a = std::move(na);
        b = std::move(nb);
    }
    return {a, b};
}

std::string AlgebraicNumber::to_text() const {
    if (kind_ == Kind::Rational) return to_string(value_);
    std::ostringstream out;
    if (p_ == 0) {
        Rational scale = make_rational(q_, r_);
        if (scale == 1) {
            out << "sqrt(" << d_.get_str() << ")";
        } else if (scale == -1) {
            out << "-sqrt(" << d_.get_str() << ")";
        } else {
            out << to_string(scale) << "*sqrt(" << d_.get_str() << ")";
        }
        return out.str();
    }
    out << "(" << p_.get_str();
    Int qa = abs(q_);
    out << (q_ < 0 ? " - " : " + ");
    if (qa != 1) out << qa.get_str() << "*";
    out << "sqrt(" << d_.get_str() << ")";
    out << ")";
    if (r_ != 1) out << "/" << r_.get_str();
    return out.str();
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Rational) return value_ == o.value_;
    return p_ == o.p_ && q_ == o.q_ && r_ == o.r_ && d_ == o.d_;
}

} // namespace geoelim::exactmath
