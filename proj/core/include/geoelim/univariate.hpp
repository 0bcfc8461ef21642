#pragma once

#include "geoelim/algebraic_number.hpp"
#include "geoelim/multipoly.hpp"

#include <optional>
#include <vector>

namespace geoelim::exactmath {

/// One factor of a partial factorization.
struct UniFactor {
    MultiPoly poly; // univariate, primitive integer form, positive leading coefficient
    unsigned multiplicity = 1;
    /// False for degree >= 3 remainders that were left unfactored.
    bool known_irreducible = true;
};

struct UniFactorization {
    Rational content; // input == content * product(poly^multiplicity)
    std::vector<UniFactor> parts;
    bool fully_factored = true;

    MultiPoly expand() const; // exact round-trip product
};

/// Product of the distinct irreducible factors of f (Yun-style squarefree
/// decomposition via gcd with the derivative), primitive with positive
/// leading coefficient. The result lives in a one-variable ring.
MultiPoly squarefree_part(const MultiPoly& f);

/// Partial factorization over Q: rational roots come out as linear factors,
/// even polynomials are split through their degree-halved image, remaining
/// quadratics are kept as irreducible factors, and anything of degree >= 3
/// without rational roots is returned unfactored and flagged.
UniFactorization factor_univariate(const MultiPoly& f);

/// A positive real root of a univariate polynomial. `exact` is set whenever
/// the root comes from a linear or quadratic factor; roots of unfactored
/// higher-degree remainders are reported numerically only.
struct RootCandidate {
    double approx = 0;
    std::optional<AlgebraicNumber> exact;
    MultiPoly source; // the factor this root belongs to
};

/// All positive real roots of f, exact where linear/quadratic factors allow.
std::vector<RootCandidate> extract_algebraic(const MultiPoly& f);

/// All real roots to within tol via Sturm bracketing and exact bisection on a
/// Cauchy bound; sorted ascending.
std::vector<double> real_roots_numeric(const MultiPoly& f, double tol = 1e-9);

/// Number of distinct real roots (of the squarefree part) by Sturm's theorem.
int sturm_root_count(const MultiPoly& f);
int sturm_root_count(const MultiPoly& f, const Rational& lo, const Rational& hi);

/// Exact division check: returns the quotient when divisor divides f in Q[x].
std::optional<MultiPoly> divide_exact_univariate(const MultiPoly& f, const MultiPoly& divisor);

} // namespace geoelim::exactmath
