#pragma once
// Certified bounds for the auxiliary objective
//     lower side:  f(x) = x * prod_i |P_i(x)|^(-gamma_i)   (infimum wanted)
//     upper side:  g(x) = x * prod_j |Q_j(x)|^(beta_j)     (supremum wanted)
// over the Weil interval [A, B], via branch-and-bound with outward-rounded
// interval enclosures in the log domain.  Every reported bound is rigorous:
// the search can only be slow, not wrong.

#include "avbounds/interval.hpp"
#include "avbounds/orbits.hpp"

#include <string>
#include <utility>
#include <vector>

namespace avbounds {

struct AuxiliarySystem {
  FieldSize q;
  Side side = Side::Lower;
  std::vector<IntPolynomial> polynomials;
  std::vector<Rat> exponents;  // strictly positive exact rationals

  bool operator==(const AuxiliarySystem& o) const {
    return q == o.q && side == o.side && polynomials == o.polynomials &&
           exponents == o.exponents;
  }
};

// Builds a system from decimal exponent strings ("0.141" -> 141/1000).
AuxiliarySystem make_system(const FieldSize& q, Side side,
                            std::vector<IntPolynomial> polynomials,
                            const std::vector<std::string>& decimal_exponents);

struct ExceptionRecord {
  RealOrbit orbit;
  std::string normalized_norm;  // 6-decimal rendering
  bool violates = false;

  bool operator==(const ExceptionRecord& o) const {
    return orbit == o.orbit && normalized_norm == o.normalized_norm &&
           violates == o.violates;
  }
};

struct BoundCertificate {
  AuxiliarySystem system;
  std::string certified_bound;  // decimal, rounded toward safety
  std::string tolerance;        // decimal
  int subdivision_depth = 0;
  std::vector<ExceptionRecord> exceptions;
  std::vector<std::string> warnings;
  // Best point value seen by the search (the non-safety side of the
  // enclosure); informational, not serialized.
  double witness = 0.0;

  double value() const;  // certified_bound as a double

  bool operator==(const BoundCertificate& o) const {
    return system == o.system && certified_bound == o.certified_bound &&
           tolerance == o.tolerance && subdivision_depth == o.subdivision_depth &&
           exceptions == o.exceptions && warnings == o.warnings;
  }
};

// Full-interval certification (OpenMP wave evaluation, deterministic).
BoundCertificate certify(const AuxiliarySystem& system, double tolerance);
// Single-threaded reference with identical output.
BoundCertificate certify_serial(const AuxiliarySystem& system, double tolerance);

// Building block: rigorous extremum over an explicit window inside the Weil
// interval.  Used by certify itself and by the published-table audit to
// value the regions between system roots.
struct WindowBound {
  double value = 0.0;    // certified bound, safety side
  double witness = 0.0;  // best point value, other side
  int depth = 0;
};
WindowBound certify_window(const AuxiliarySystem& system, double tolerance,
                           double window_lo, double window_hi, bool parallel);

// The orbits of the system's own polynomials (where the bound lemma is
// silent), each tagged with whether its normalized norm violates the
// certified bound.  The pool must cover the system's degrees.
std::vector<ExceptionRecord> exception_set(const AuxiliarySystem& system,
                                           const OrbitSet& pool);

// Single-polynomial closed-form systems: P = x-n, gamma = 1/(n+1) with
// n = floor((sqrt q - 1)^2) on the lower side (empty system when n = 0,
// reported with an integrality floor of 1); Q = x-N, beta = 1/(N-1) with
// N = ceil((sqrt q + 1)^2) on the upper side.  Certified values n+1 / N-1.
BoundCertificate bound_theorem_easy(const FieldSize& q, Side side);
// The n and N above, exactly.
long easy_lower_n(const FieldSize& q);
long easy_upper_n(const FieldSize& q);

// Distinct real roots of p strictly inside the open Weil interval,
// isolated by exact dyadic Sturm bisection; outward-rounded double
// brackets of width <= eps, sorted ascending.  Roots equal to an interval
// endpoint are excluded.
std::vector<std::pair<double, double>> isolate_interior_roots(const IntPolynomial& p,
                                                              const FieldSize& q,
                                                              double eps = 1e-12);

// Outward-rounded double endpoints of the Weil interval.
double weil_lo_double(const FieldSize& q);  // <= (sqrt q - 1)^2
double weil_hi_double(const FieldSize& q);  // >= (sqrt q + 1)^2

// Certificate JSON document (schema-stable, deterministic bytes).
std::string certificate_to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const std::string& text);

}  // namespace avbounds
