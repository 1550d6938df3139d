#pragma once
// Exact arithmetic kernel: arbitrary-precision integer polynomials, the
// quadratic field Q(sqrt(d)), Sturm sequences, subresultant resultants and
// Newton power sums.  Everything in this header is exact; no floating point
// is used for any decision.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace avbounds {

using Int = mpz_class;
using Rat = mpq_class;

int sign_of(const Int& v);
int sign_of(const Rat& v);

// ---------------------------------------------------------------------------
// IntPolynomial: polynomial with arbitrary-precision integer coefficients,
// stored in ascending degree order.  The zero polynomial has an empty
// coefficient vector.
// ---------------------------------------------------------------------------
struct IntPolynomial {
  std::vector<Int> c;  // c[i] multiplies x^i; trailing entry nonzero

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);
  static IntPolynomial from_ints(std::initializer_list<long> coeffs);
  // Parses "c0,c1,...,cd" (ascending).
  static IntPolynomial parse(const std::string& text);

  bool is_zero() const { return c.empty(); }
  int degree() const { return is_zero() ? -1 : static_cast<int>(c.size()) - 1; }
  const Int& leading() const;
  bool is_monic() const;
  const Int& constant_term() const;

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  double eval(double x) const;

  IntPolynomial derivative() const;
  IntPolynomial negate_variable() const;            // p(-x)
  IntPolynomial compose_shift(const Int& s) const;  // p(x + s)

  // Content (gcd of coefficients, sign of leading term preserved) and the
  // primitive part p / content.
  Int content() const;
  IntPolynomial primitive_part() const;

  bool operator==(const IntPolynomial& o) const { return c == o.c; }
  bool operator!=(const IntPolynomial& o) const { return c != o.c; }
  // Lexicographic on (degree, coefficient list); a deterministic total order.
  bool operator<(const IntPolynomial& o) const;

  std::string to_string() const;       // human form, e.g. "x^2 - 9x + 19"
  std::string coeff_list() const;      // "c0,c1,...,cd"
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const Int& s, const IntPolynomial& a);

// Exact division; throws std::domain_error if b does not divide a over Z.
IntPolynomial exact_divide(const IntPolynomial& a, const IntPolynomial& b);
// True iff b divides a exactly over Z (b monic or not).
bool divides_exactly(const IntPolynomial& b, const IntPolynomial& a);

// ---------------------------------------------------------------------------
// QuadraticNumber: a + b*sqrt(d) with exact rational a, b and a nonnegative
// integer radicand d.  The constructor pulls square factors out of d, so a
// perfect-square radicand collapses to a rational.  All arithmetic between
// two QuadraticNumbers requires equal (normalized) radicands.
// ---------------------------------------------------------------------------
struct QuadraticNumber {
  Rat a, b;
  unsigned long d = 1;  // squarefree after normalization; 1 means rational

  QuadraticNumber() : a(0), b(0), d(1) {}
  QuadraticNumber(Rat rational) : a(std::move(rational)), b(0), d(1) {}
  QuadraticNumber(Rat a_, Rat b_, unsigned long radicand);
  static QuadraticNumber sqrt_of(unsigned long n) {
    return QuadraticNumber(Rat(0), Rat(1), n);
  }

  bool is_rational() const { return d == 1 || sign_of(b) == 0; }
  Rat rational_value() const;  // throws if irrational
  int sign() const;            // exact
  double to_double() const;

  QuadraticNumber operator-() const;
  QuadraticNumber operator+(const QuadraticNumber& o) const;
  QuadraticNumber operator-(const QuadraticNumber& o) const;
  QuadraticNumber operator*(const QuadraticNumber& o) const;

  bool operator<(const QuadraticNumber& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadraticNumber& o) const { return (*this - o).sign() <= 0; }
  bool operator==(const QuadraticNumber& o) const { return (*this - o).sign() == 0; }
};

// Horner evaluation of an integer polynomial at a quadratic number.
QuadraticNumber eval_quadratic(const IntPolynomial& p, const QuadraticNumber& x);

// ---------------------------------------------------------------------------
// RationalInterval: closed interval with exact rational endpoints.
// ---------------------------------------------------------------------------
struct RationalInterval {
  Rat lo, hi;
  RationalInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
  }
};

// ---------------------------------------------------------------------------
// Root counting and resultants.
// ---------------------------------------------------------------------------

// Exact number of distinct real roots of p in the half-open interval
// (lo, hi].  Endpoints are evaluated exactly in Q(sqrt d); if p vanishes at
// an endpoint the count follows the half-open convention (a root at hi is
// counted, a root at lo is not).  Throws on the zero polynomial.
int sturm_count(const IntPolynomial& p, const QuadraticNumber& lo,
                const QuadraticNumber& hi);

// Number of distinct real roots over the whole real line.
int sturm_count_all(const IntPolynomial& p);

// The signed Sturm chain of squarefree(p) (primitive integer polynomials);
// exposed for reuse by root isolation.
std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p);
// Chain of a polynomial already known squarefree (skips the reduction).
std::vector<IntPolynomial> sturm_chain_squarefree(IntPolynomial squarefree_p);
// Sign-change count of a chain at x, zeros skipped; all-integer fast path
// when x has integer coordinates.
int sturm_sign_changes(const std::vector<IntPolynomial>& chain, const QuadraticNumber& x);
// Exact sign of p(x); integer fast path as above.
int sign_at(const IntPolynomial& p, const QuadraticNumber& x);
IntPolynomial squarefree_part(const IntPolynomial& p);

// Exact resultant via the subresultant pseudo-remainder sequence.
Int resultant(const IntPolynomial& p, const IntPolynomial& r);
// Naive rational-PRS resultant; slow reference used by tests.
Int resultant_reference(const IntPolynomial& p, const IntPolynomial& r);

// Newton power sums s_1..s_k of the roots of a monic p, exactly.
std::vector<Int> power_sums(const IntPolynomial& p, int up_to);

// ---------------------------------------------------------------------------
// Exact decimal handling.
// ---------------------------------------------------------------------------

// Parses a plain decimal such as "0.141", "-2.5", "13" into an exact rational.
Rat parse_decimal(const std::string& text);

enum class RoundDir { Down, Up, Nearest };

// Formats an exact rational with `digits` decimals, rounded in the given
// direction (used for safety-rounded certified bounds).
std::string format_decimal(const Rat& v, int digits, RoundDir dir);
// Same for a double, routed through an exact rational.
std::string format_decimal(double v, int digits, RoundDir dir);

// Rational "p/q" rendering used by the certificate JSON schema.
std::string rational_string(const Rat& v);
Rat parse_rational_string(const std::string& text);

}  // namespace avbounds
