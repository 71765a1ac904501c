#pragma once

#include "sturmspec/rational.hpp"

#include <utility>
#include <vector>

namespace sturmspec {

/// Dense univariate polynomial over exact rationals, ascending degree.
/// The zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

void poly_trim(Poly& p);
int poly_degree(const Poly& p); // -1 for the zero polynomial

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& s);
Poly poly_shift_const(const Poly& a, const Rational& s); // a + s
Poly poly_derivative(const Poly& a);

Rational poly_eval(const Poly& p, const Rational& x);
double poly_eval_d(const Poly& p, double x);
bool poly_equal(const Poly& a, const Poly& b);

/// Remainder of a by b over the rationals (deg b >= 0).
Poly poly_rem(const Poly& a, const Poly& b);

/// Positive scaling to integer coefficients with content 1; keeps signs.
Poly poly_primitive(const Poly& p);

/// Sturm chain p, p', -rem(...), each made primitive.
std::vector<Poly> sturm_chain(const Poly& p);

/// Number of distinct real roots in (lo, hi].
long long sturm_count(const std::vector<Poly>& chain, const Rational& lo, const Rational& hi);

/// Isolating intervals (lo, hi] for every distinct root in (lo, hi], left to right.
std::vector<std::pair<Rational, Rational>>
isolate_roots(const Poly& p, const Rational& lo, const Rational& hi);

/// Bisect an isolating interval (sign change bracket) until width <= eps.
std::pair<Rational, Rational>
refine_root(const Poly& p, Rational lo, Rational hi, const Rational& eps);

} // namespace sturmspec
