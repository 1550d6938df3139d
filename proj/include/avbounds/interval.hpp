#pragma once
// Outward-rounded double-precision interval arithmetic plus correctly
// rounded directed log/exp (via MPFR).  Every operation widens its result
// so that the exact value is always contained; this is the enclosure layer
// under the certification search.  No rounding-mode switching: widening is
// done with nextafter, which is thread-safe under OpenMP.

#include "avbounds/exact.hpp"

namespace avbounds {

double next_down(double v);
double next_up(double v);

struct DInterval {
  double lo = 0.0;
  double hi = 0.0;
};

inline DInterval di_point(double v) { return {v, v}; }

DInterval di_add(const DInterval& a, const DInterval& b);
DInterval di_sub(const DInterval& a, const DInterval& b);
DInterval di_mul(const DInterval& a, const DInterval& b);
DInterval di_neg(const DInterval& a);
DInterval di_abs(const DInterval& a);
// 1/a; the whole line when a straddles zero.
DInterval di_inv(const DInterval& a);
DInterval di_div(const DInterval& a, const DInterval& b);
// Intersection of two enclosures of the same quantity (always nonempty).
DInterval di_intersect(const DInterval& a, const DInterval& b);

// Exact enclosures of arbitrary-precision values in doubles.
DInterval di_from_int(const Int& v);
DInterval di_from_rat(const Rat& v);
// Directed double approximations of an exact rational.
double rat_to_double_down(const Rat& v);
double rat_to_double_up(const Rat& v);

// Correctly rounded directed transcendentals (53-bit MPFR).
double log_down(double v);  // requires v > 0
double log_up(double v);
double exp_down(double v);
double exp_up(double v);

// log over a (partially) positive interval; lo <= 0 maps to -infinity.
DInterval di_log(const DInterval& x);

// Outward-rounded Horner evaluation of an integer polynomial.
DInterval di_eval(const IntPolynomial& p, const DInterval& x);
// Same with precomputed coefficient enclosures (ascending).
DInterval di_eval(const std::vector<DInterval>& coeffs, const DInterval& x);
std::vector<DInterval> di_coefficients(const IntPolynomial& p);

}  // namespace avbounds
