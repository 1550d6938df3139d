#include "avbounds/weil.hpp"

#include <cmath>
#include <sstream>

namespace avbounds {

static bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

FieldSize::FieldSize(unsigned long q_) : q(q_) {
  if (q < 2) throw std::invalid_argument("FieldSize: q must be >= 2");
  unsigned long base = 0;
  for (unsigned long f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      base = f;
      break;
    }
  }
  if (base == 0) base = q;  // q itself prime
  if (!is_prime(base)) throw std::invalid_argument("FieldSize: q is not a prime power");
  unsigned long v = q;
  unsigned int e = 0;
  while (v % base == 0) {
    v /= base;
    ++e;
  }
  if (v != 1) throw std::invalid_argument("FieldSize: q is not a prime power");
  p = base;
  exponent = e;
}

std::pair<QuadraticNumber, QuadraticNumber> weil_interval(const FieldSize& q) {
  Rat mid(static_cast<long>(q.q + 1));
  QuadraticNumber lo(mid, Rat(-2), q.q);
  QuadraticNumber hi(mid, Rat(2), q.q);
  return {lo, hi};
}

bool is_member(const IntPolynomial& p, const FieldSize& q) {
  if (p.is_zero() || !p.is_monic())
    throw std::invalid_argument("is_member: polynomial must be monic");
  if (p.degree() == 0) return false;
  IntPolynomial sf = squarefree_part(p);
  int d = sf.degree();
  auto [lo, hi] = weil_interval(q);
  // Distinct roots in [lo, hi]: the half-open Sturm count plus an exact
  // endpoint test at lo.  Equality with deg(sf) forces every root (real or
  // complex) of p into the closed interval.
  std::vector<IntPolynomial> chain = sturm_chain_squarefree(sf);
  int inside = sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi);
  if (sign_at(sf, lo) == 0) ++inside;
  return inside == d;
}

Int RealOrbit::norm() const { return abs(minimal_polynomial.constant_term()); }

double RealOrbit::normalized_norm() const {
  signed long exp2;
  double m = mpz_get_d_2exp(&exp2, norm().get_mpz_t());
  double log_norm = std::log(m) + static_cast<double>(exp2) * std::log(2.0);
  return std::exp(log_norm / degree());
}

RealOrbit make_orbit(IntPolynomial p, const FieldSize& q) {
  if (!is_member(p, q))
    throw std::invalid_argument("make_orbit: polynomial is not a member for q=" +
                                std::to_string(q.q) + ": " + p.to_string());
  return RealOrbit{std::move(p), q};
}

RealOrbit make_orbit_unchecked(IntPolynomial p, const FieldSize& q) {
  return RealOrbit{std::move(p), q};
}

int compare_normalized_norm(const RealOrbit& a, const RealOrbit& b) {
  // norm_a^(1/da) vs norm_b^(1/db)  <=>  norm_a^db vs norm_b^da.
  Int lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), a.norm().get_mpz_t(), static_cast<unsigned long>(b.degree()));
  mpz_pow_ui(rhs.get_mpz_t(), b.norm().get_mpz_t(), static_cast<unsigned long>(a.degree()));
  return sign_of(Int(lhs - rhs));
}

bool satisfies_functional_equation(const IntPolynomial& f, const FieldSize& q) {
  int deg = f.degree();
  if (deg <= 0 || deg % 2 != 0) return false;
  int d = deg / 2;
  Int qz(static_cast<long>(q.q));
  // Coefficient condition: a_j = q^(d-j) a_(2d-j) for 0 <= j <= d.
  for (int j = 0; j <= d; ++j) {
    Int qp;
    mpz_pow_ui(qp.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(d - j));
    if (f.c[j] != qp * f.c[2 * d - j]) return false;
  }
  return true;
}

WeilPolynomial to_weil(const RealOrbit& orbit) {
  const IntPolynomial& p = orbit.minimal_polynomial;
  int d = p.degree();
  Int s(static_cast<long>(orbit.q.q + 1));
  // phat(z) = prod (z - t_i) with t_i = 1+q-alpha_i, i.e. (-1)^d p(1+q-z).
  IntPolynomial phat = p.compose_shift(s).negate_variable();
  if (d % 2 == 1) phat = Int(-1) * phat;
  // w(x) = sum_k phat_k x^(d-k) (x^2+q)^k.
  IntPolynomial qshift = IntPolynomial({Int(static_cast<long>(orbit.q.q)), Int(0), Int(1)});
  IntPolynomial w;
  IntPolynomial qs_pow = IntPolynomial({Int(1)});
  std::vector<IntPolynomial> powers(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    powers[k] = qs_pow;
    qs_pow = qs_pow * qshift;
  }
  for (int k = 0; k <= d; ++k) {
    if (k > static_cast<int>(phat.c.size()) - 1) continue;
    std::vector<Int> mono(static_cast<size_t>(d - k) + 1, Int(0));
    mono.back() = phat.c[k];
    w = w + IntPolynomial(std::move(mono)) * powers[k];
  }
  return WeilPolynomial{w, orbit.q};
}

RealOrbit from_weil(const WeilPolynomial& w) {
  if (!satisfies_functional_equation(w.polynomial, w.q))
    throw std::invalid_argument("from_weil: functional equation fails");
  int d = w.polynomial.degree() / 2;
  IntPolynomial rest = w.polynomial;
  IntPolynomial qshift = IntPolynomial({Int(static_cast<long>(w.q.q)), Int(0), Int(1)});
  std::vector<IntPolynomial> powers(static_cast<size_t>(d) + 1);
  IntPolynomial acc = IntPolynomial({Int(1)});
  for (int k = 0; k <= d; ++k) {
    powers[k] = acc;
    acc = acc * qshift;
  }
  std::vector<Int> phat_coeffs(static_cast<size_t>(d) + 1, Int(0));
  for (int k = d; k >= 0; --k) {
    int want = d + k;
    Int coeff = (want <= rest.degree()) ? rest.c[want] : Int(0);
    phat_coeffs[k] = coeff;
    if (sign_of(coeff) != 0) {
      std::vector<Int> mono(static_cast<size_t>(d - k) + 1, Int(0));
      mono.back() = coeff;
      rest = rest - IntPolynomial(std::move(mono)) * powers[k];
    }
  }
  if (!rest.is_zero())
    throw std::invalid_argument("from_weil: polynomial is not a Weil transform");
  IntPolynomial phat(std::move(phat_coeffs));
  Int s(static_cast<long>(w.q.q + 1));
  IntPolynomial p = phat.compose_shift(s).negate_variable();
  if (d % 2 == 1) p = Int(-1) * p;
  return make_orbit(std::move(p), w.q);
}

Int point_count(const RealOrbit& orbit) {
  Int v = orbit.minimal_polynomial.eval(Int(0));
  if (orbit.degree() % 2 == 1) v = -v;
  if (sign_of(v) <= 0)
    throw std::logic_error("point_count: nonpositive norm for " +
                           orbit.minimal_polynomial.to_string());
  return v;
}

Int point_count_extension(const RealOrbit& orbit, unsigned int r) {
  if (r == 0) throw std::invalid_argument("point_count_extension: r must be positive");
  WeilPolynomial w = to_weil(orbit);
  std::vector<Int> xr(static_cast<size_t>(r) + 1, Int(0));
  xr.front() = Int(-1);
  xr.back() = Int(1);
  // prod over Weil roots gamma of (gamma^r - 1); even root count makes this
  // equal to prod (1 - gamma^r).
  return resultant(w.polynomial, IntPolynomial(std::move(xr)));
}

RealOrbit quadratic_twist(const RealOrbit& orbit) {
  Int s(static_cast<long>(2 * (orbit.q.q + 1)));
  IntPolynomial t = orbit.minimal_polynomial.compose_shift(s).negate_variable();
  if (orbit.degree() % 2 == 1) t = Int(-1) * t;
  return make_orbit(std::move(t), orbit.q);
}

std::string orbit_line(const RealOrbit& orbit) {
  std::ostringstream out;
  out << orbit.q.q << ";" << orbit.minimal_polynomial.coeff_list();
  return out.str();
}

RealOrbit parse_orbit_line(const std::string& line) {
  size_t semi = line.find(';');
  if (semi == std::string::npos)
    throw std::runtime_error("orbit line missing ';' separator");
  unsigned long qv = std::stoul(line.substr(0, semi));
  IntPolynomial p = IntPolynomial::parse(line.substr(semi + 1));
  return make_orbit(std::move(p), FieldSize(qv));
}

}  // namespace avbounds
