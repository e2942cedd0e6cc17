#pragma once

#include <vector>

#include "tiltmut/field.hpp"

namespace tiltmut {

/// Dense univariate polynomials over F_q; coefficients ascending, normalized
/// so the leading coefficient is nonzero (the zero polynomial is empty).
namespace poly {

using P = std::vector<Fel>;

P normalize(P a);
int degree(const P& a);  // -1 for the zero polynomial
P add(const Fq& F, const P& a, const P& b);
P sub(const Fq& F, const P& a, const P& b);
P mul(const Fq& F, const P& a, const P& b);
P scale(const Fq& F, const P& a, Fel c);
/// Division with remainder by a nonzero divisor: returns {quotient, remainder}.
std::pair<P, P> divmod(const Fq& F, const P& a, const P& b);
P mod(const Fq& F, const P& a, const P& b);
P monic(const Fq& F, const P& a);
P gcd(const Fq& F, P a, P b);
/// g = gcd(a,b) together with u,v satisfying u*a + v*b = g.
struct ExtGcd {
    P g, u, v;
};
ExtGcd extgcd(const Fq& F, const P& a, const P& b);
P derivative(const Fq& F, const P& a);
P powmod(const Fq& F, const P& base, uint64_t e, const P& modp);
Fel eval(const Fq& F, const P& a, Fel x);

/// Full factorization into monic irreducibles with multiplicities.
/// Deterministic (Berlekamp with exhaustive scalar search); intended for the
/// small fields and low degrees that arise from minimal polynomials.
std::vector<std::pair<P, int>> factor(const Fq& F, const P& a);

bool is_irreducible(const Fq& F, const P& a);

}  // namespace poly
}  // namespace tiltmut
