#include "geoelim/multipoly.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace geoelim::exactmath {

namespace {

// Canonical storage order: plain lexicographic on exponent vectors, descending.
bool lex_greater(const Exponents& a, const Exponents& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void check_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (a.var_count() != b.var_count())
        throw StructuralError("polynomials from different rings (variable counts " +
                              std::to_string(a.var_count()) + " vs " +
                              std::to_string(b.var_count()) + ")");
}

} // namespace

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool exp_divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::uint32_t exp_total_degree(const Exponents& a) {
    std::uint32_t d = 0;
    for (auto e : a) d += e;
    return d;
}

MultiPoly MultiPoly::constant(std::size_t var_count, const Rational& c) {
    MultiPoly p(var_count);
    if (sign(c) != 0) p.terms_.push_back({Exponents(var_count, 0), c});
    return p;
}

MultiPoly MultiPoly::variable(std::size_t var_count, std::size_t index) {
    if (index >= var_count) throw StructuralError("variable index out of range");
    MultiPoly p(var_count);
    Exponents e(var_count, 0);
    e[index] = 1;
    p.terms_.push_back({std::move(e), Rational(1)});
    return p;
}

MultiPoly MultiPoly::monomial(Exponents exps, const Rational& c) {
    MultiPoly p(exps.size());
    if (sign(c) != 0) p.terms_.push_back({std::move(exps), c});
    return p;
}

MultiPoly MultiPoly::from_terms(std::size_t var_count, std::vector<Term> terms) {
    MultiPoly p(var_count);
    for (auto& t : terms) {
        if (t.exps.size() != var_count)
            throw StructuralError("term exponent vector has wrong length");
    }
    p.terms_ = std::move(terms);
    p.sort_and_prune();
    return p;
}

void MultiPoly::sort_and_prune() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return lex_greater(a.exps, b.exps); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return sign(t.coeff) == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exp_total_degree(terms_[0].exps) == 0);
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw DomainError("constant_value on a non-constant polynomial");
    return terms_[0].coeff;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[var]);
    return d;
}

std::uint32_t MultiPoly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, exp_total_degree(t.exps));
    return d;
}

std::vector<std::size_t> MultiPoly::used_vars() const {
    std::vector<bool> used(nvars_, false);
    for (const auto& t : terms_)
        for (std::size_t v = 0; v < nvars_; ++v)
            if (t.exps[v] > 0) used[v] = true;
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < nvars_; ++v)
        if (used[v]) out.push_back(v);
    return out;
}

std::optional<std::size_t> MultiPoly::sole_variable() const {
    auto u = used_vars();
    if (u.size() == 1) return u[0];
    return std::nullopt;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    check_same_ring(*this, rhs);
    MultiPoly r(nvars_);
    r.terms_.reserve(terms_.size() + rhs.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < rhs.terms_.size()) {
        if (terms_[i].exps == rhs.terms_[j].exps) {
            Rational c = terms_[i].coeff + rhs.terms_[j].coeff;
            if (sign(c) != 0) r.terms_.push_back({terms_[i].exps, std::move(c)});
            ++i;
            ++j;
        } else if (lex_greater(terms_[i].exps, rhs.terms_[j].exps)) {
            r.terms_.push_back(terms_[i++]);
        } else {
            r.terms_.push_back(rhs.terms_[j++]);
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < rhs.terms_.size()) r.terms_.push_back(rhs.terms_[j++]);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const { return *this + (-rhs); }

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    check_same_ring(*this, rhs);
    std::map<Exponents, Rational> acc;
    for (const auto& a : terms_)
        for (const auto& b : rhs.terms_) {
            Exponents e = exp_add(a.exps, b.exps);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), a.coeff * b.coeff);
            else
                it->second += a.coeff * b.coeff;
        }
    MultiPoly r(nvars_);
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (sign(c) != 0) r.terms_.push_back({e, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return lex_greater(a.exps, b.exps); });
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    if (sign(c) == 0) return MultiPoly(nvars_);
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
    if (nvars_ != rhs.nvars_ || terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != rhs.terms_[i].exps || terms_[i].coeff != rhs.terms_[i].coeff)
            return false;
    return true;
}

MultiPoly MultiPoly::substituted(std::size_t var, const MultiPoly& value) const {
    check_same_ring(*this, value);
    MultiPoly result(nvars_);
    std::vector<MultiPoly> powers; // powers[k] = value^k
    powers.push_back(MultiPoly::constant(nvars_, Rational(1)));
    for (const auto& t : terms_) {
        std::uint32_t e = t.exps[var];
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        Exponents rest = t.exps;
        rest[var] = 0;
        result += MultiPoly::monomial(std::move(rest), t.coeff) * powers[e];
    }
    return result;
}

MultiPoly MultiPoly::extended(std::size_t new_var_count) const {
    if (new_var_count < nvars_) throw StructuralError("extended() cannot shrink the ring");
    MultiPoly r(new_var_count);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e = t.exps;
        e.resize(new_var_count, 0);
        r.terms_.push_back({std::move(e), t.coeff});
    }
    r.sort_and_prune();
    return r;
}

MultiPoly MultiPoly::remapped(const std::vector<std::optional<std::size_t>>& mapping,
                              std::size_t new_var_count) const {
    if (mapping.size() != nvars_) throw StructuralError("remapped() mapping has wrong length");
    MultiPoly r(new_var_count);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(new_var_count, 0);
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (t.exps[v] == 0) continue;
            if (!mapping[v])
                throw StructuralError("remapped() drops a variable that occurs in the polynomial");
            e[*mapping[v]] = t.exps[v];
        }
        r.terms_.push_back({std::move(e), t.coeff});
    }
    r.sort_and_prune();
    return r;
}

double MultiPoly::eval(const std::vector<double>& point) const {
    if (point.size() != nvars_) throw StructuralError("evaluation point has wrong dimension");
    double acc = 0;
    for (const auto& t : terms_) {
        double m = to_double(t.coeff);
        for (std::size_t v = 0; v < nvars_; ++v)
            for (std::uint32_t k = 0; k < t.exps[v]; ++k) m *= point[v];
        acc += m;
    }
    return acc;
}

Rational MultiPoly::eval_exact(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw StructuralError("evaluation point has wrong dimension");
    Rational acc(0);
    for (const auto& t : terms_) {
        Rational m = t.coeff;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (t.exps[v] > 0) m *= rational_pow(point[v], t.exps[v]);
        acc += m;
    }
    return acc;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    MultiPoly r(nvars_);
    for (const auto& t : terms_) {
        if (t.exps[var] == 0) continue;
        Exponents e = t.exps;
        Rational c = t.coeff * Rational(e[var]);
        e[var] -= 1;
        r.terms_.push_back({std::move(e), std::move(c)});
    }
    r.sort_and_prune();
    return r;
}

MultiPoly MultiPoly::primitive_integer_form() const {
    if (terms_.empty()) return *this;
    Int den_lcm(1);
    for (const auto& t : terms_) {
        Int d = t.coeff.get_den();
        den_lcm = lcm(den_lcm, d);
    }
    Int content(0);
    for (const auto& t : terms_) {
        Int num = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
        content = gcd(content, num);
    }
    Rational scale = make_rational(den_lcm, content);
    if (sign(terms_.front().coeff) < 0) scale = -scale;
    return *this * scale;
}

Rational MultiPoly::max_abs_coeff() const {
    Rational m(0);
    for (const auto& t : terms_) {
        Rational a = abs(t.coeff);
        if (a > m) m = a;
    }
    return m;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    auto var_name = [&](std::size_t v) {
        if (v < names.size()) return names[v];
        return "v" + std::to_string(v);
    };
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (sign(c) < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (sign(c) < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        bool has_vars = exp_total_degree(t.exps) > 0;
        if (!has_vars || c != 1) {
            out << exactmath::to_string(c);
            if (has_vars) out << "*";
        }
        bool first_var = true;
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (t.exps[v] == 0) continue;
            if (!first_var) out << "*";
            first_var = false;
            out << var_name(v);
            if (t.exps[v] > 1) out << "^" << t.exps[v];
        }
    }
    return out.str();
}

bool equal_up_to_scale(const MultiPoly& f, const MultiPoly& g) {
    if (f.var_count() != g.var_count()) return false;
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    const auto& ft = f.terms();
    const auto& gt = g.terms();
    if (ft.size() != gt.size()) return false;
    // Cross-scale so that leading coefficients agree.
    return f * gt.front().coeff == g * ft.front().coeff;
}

namespace {

struct PolyLexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
            ++pos;
        return s.substr(start, pos - start);
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_' || s[pos] == '\''))
            ++pos;
        return s.substr(start, pos - start);
    }
};

} // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names) {
    PolyLexer lx{text};
    const std::size_t n = names.size();
    MultiPoly acc(n);
    bool any = false;
    while (!lx.eof()) {
        int sgn = 1;
        while (true) {
            if (lx.accept('+')) continue;
            if (lx.accept('-')) {
                sgn = -sgn;
                continue;
            }
            break;
        }
        Rational coeff(sgn);
        Exponents exps(n, 0);
        bool saw_factor = false;
        while (true) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                auto num = parse_rational(lx.number());
                if (!num) throw DomainError("bad number in polynomial: " + text);
                coeff *= *num;
                saw_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = lx.ident();
                auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end())
                    throw DomainError("unknown variable '" + name + "' in polynomial");
                std::uint32_t e = 1;
                if (lx.accept('^')) {
                    auto num = parse_rational(lx.number());
                    if (!num || num->get_den() != 1 || sign(*num) < 0)
                        throw DomainError("bad exponent in polynomial: " + text);
                    e = static_cast<std::uint32_t>(num->get_num().get_ui());
                }
                exps[static_cast<std::size_t>(it - names.begin())] += e;
                saw_factor = true;
            } else {
                break;
            }
            if (!lx.accept('*')) break;
        }
        if (!saw_factor) throw DomainError("malformed polynomial text: " + text);
        acc += MultiPoly::monomial(std::move(exps), coeff);
        any = true;
    }
    if (!any) throw DomainError("empty polynomial text");
    return acc;
}

} // namespace geoelim::exactmath
