#pragma once
// The alpha-side model: the Weil interval for a prime power q, membership of
// integer polynomials (all roots real inside the interval), the bijection
// between real orbits and Weil polynomials, point counts over the base field
// and its extensions, and quadratic twists.

#include "avbounds/exact.hpp"

#include <optional>
#include <utility>

namespace avbounds {

// ---------------------------------------------------------------------------
// FieldSize: a verified prime power q = p^e.
// ---------------------------------------------------------------------------
struct FieldSize {
  unsigned long q = 2;
  unsigned long p = 2;
  unsigned int exponent = 1;

  FieldSize() = default;
  explicit FieldSize(unsigned long q_);  // throws if q is not a prime power

  bool is_square() const { return exponent % 2 == 0; }
  bool operator==(const FieldSize& o) const { return q == o.q; }
};

// Endpoints (q+1-2*sqrt(q), q+1+2*sqrt(q)) of the Weil interval, exactly.
std::pair<QuadraticNumber, QuadraticNumber> weil_interval(const FieldSize& q);

// True iff p is monic with all roots real and inside the closed Weil
// interval.  Exact decision via Sturm counting in Q(sqrt q).
bool is_member(const IntPolynomial& p, const FieldSize& q);

// ---------------------------------------------------------------------------
// RealOrbit: a Galois orbit of a totally real algebraic integer with all
// conjugates in the Weil interval, represented by its minimal polynomial.
// Irreducibility is an input contract; membership is verified on
// construction via make_orbit.
// ---------------------------------------------------------------------------
struct RealOrbit {
  IntPolynomial minimal_polynomial;
  FieldSize q;

  int degree() const { return minimal_polynomial.degree(); }
  // |constant term| = Norm(alpha), a positive integer.
  Int norm() const;
  double normalized_norm() const;  // Norm^(1/deg), approximate
  bool operator==(const RealOrbit& o) const {
    return q == o.q && minimal_polynomial == o.minimal_polynomial;
  }
};

// Validating constructor; throws std::invalid_argument when p is not monic
// or fails membership.
RealOrbit make_orbit(IntPolynomial p, const FieldSize& q);
// Unchecked constructor for internal use where membership was already
// established.
RealOrbit make_orbit_unchecked(IntPolynomial p, const FieldSize& q);

// Exact comparison of normalized norms: norm(a)^(1/deg a) vs norm(b)^(1/deg b)
// via cross powers.  Returns -1, 0, +1.
int compare_normalized_norm(const RealOrbit& a, const RealOrbit& b);

// ---------------------------------------------------------------------------
// WeilPolynomial: the gamma-side polynomial of even degree 2d satisfying the
// functional equation x^(2d) f(q/x) = q^d f(x).
// ---------------------------------------------------------------------------
struct WeilPolynomial {
  IntPolynomial polynomial;
  FieldSize q;
};

bool satisfies_functional_equation(const IntPolynomial& f, const FieldSize& q);

// prod_i (x^2 - (1+q-alpha_i) x + q), computed exactly with no root
// extraction.
WeilPolynomial to_weil(const RealOrbit& orbit);
// Inverse of to_weil; throws std::invalid_argument if w fails the functional
// equation or does not arise from a real orbit.
RealOrbit from_weil(const WeilPolynomial& w);

// Norm(alpha) = (-1)^d p(0) = #A(F_q) for the dimension-d representative.
Int point_count(const RealOrbit& orbit);
// prod over Weil roots gamma of (1 - gamma^r) = #A(F_{q^r}); exact.
Int point_count_extension(const RealOrbit& orbit, unsigned int r);
// The orbit of 2(1+q) - alpha (Weil side: gamma -> -gamma); an involution.
RealOrbit quadratic_twist(const RealOrbit& orbit);

// Serialization: "q;c0,c1,...,1" (ascending coefficients).
std::string orbit_line(const RealOrbit& orbit);
RealOrbit parse_orbit_line(const std::string& line);

}  // namespace avbounds
