#include "avbounds/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace avbounds {

bool is_odd_prime(long v) {
  if (v < 3 || v % 2 == 0) return false;
  for (long d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

IntPolynomial monic_chebyshev(int n) {
  if (n < 1) throw std::invalid_argument("monic_chebyshev: n must be >= 1");
  const IntPolynomial xm2 = IntPolynomial::from_ints({-2, 1});
  if (n == 1) return xm2;
  IntPolynomial prev = xm2;
  IntPolynomial cur = xm2 * xm2 - IntPolynomial::from_ints({2});
  for (int k = 3; k <= n; ++k) {
    IntPolynomial next = xm2 * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ChebyshevFamily chebyshev_family(int n, long shift) {
  if (shift < 0) throw std::invalid_argument("chebyshev_family: shift must be >= 0");
  ChebyshevFamily fam;
  fam.n = n;
  fam.p = monic_chebyshev(n);
  fam.shift = shift;
  // Root-placement certificate: p evaluates to +-2 at the Chebyshev extrema
  // 2 + 2cos(k*pi/n), k = 0..n, with alternating sign; exact sign tests at
  // (floating approximations of) those points force n distinct real roots
  // strictly between the outermost extrema 0 and 4.
  int expect = 1;  // p(4) = 2*T_n(1) = 2
  for (int k = 0; k <= n; ++k) {
    const double t = 2.0 + 2.0 * std::cos(M_PI * k / n);
    if (sign_of(fam.p.eval(Rat(t))) != expect)
      throw std::logic_error("chebyshev_family: root-placement certificate failed");
    expect = -expect;
  }
  if (is_odd_prime(n))
    fam.cofactor = exact_divide(fam.p, IntPolynomial::from_ints({-2, 1}));
  return fam;
}

double growth_rate(int n, int N) {
  if (n < 1) throw std::invalid_argument("growth_rate: n must be >= 1");
  if (N < 1) throw std::invalid_argument("growth_rate: N must be >= 1");
  const Int value = monic_chebyshev(n).eval(Int(-N));
  const Int mag = abs(value);
  if (sign_of(mag) == 0) throw std::logic_error("growth_rate: unexpected zero value");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, mag.get_mpz_t());
  const double log_mag = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
  return std::exp(log_mag / n);
}

double growth_limit(int N) {
  if (N < 1) throw std::invalid_argument("growth_limit: N must be >= 1");
  const double m = 1.0 + N / 2.0;
  return m + std::sqrt(m * m - 1.0);
}

long extremal_shift(const FieldSize& q, Side side) {
  // With s = floor(2*sqrt q): ceil((sqrt q - 1)^2) = q+1-s on both the
  // square and non-square branches, and floor((sqrt q + 1)^2) = q+1+s.
  const Int fourq = Int(4) * Int(q.q);
  const long s = Int(sqrt(fourq)).get_si();
  const long qq = static_cast<long>(q.q);
  return side == Side::Lower ? qq + 1 - s : qq + s - 3;
}

RealOrbit extremal_family(const FieldSize& q, Side side, int ell) {
  if (!is_odd_prime(ell))
    throw std::invalid_argument("extremal_family: ell must be an odd prime");
  const long N = extremal_shift(q, side);
  ChebyshevFamily fam = chebyshev_family(ell, N);
  IntPolynomial translate = fam.cofactor->compose_shift(Int(-N));
  // Cofactor roots lie in (0, 4), so the translate's roots lie in (N, N+4);
  // membership reduces to containment of [N, N+4] in the Weil interval.
  auto [wlo, whi] = weil_interval(q);
  if (!(wlo <= QuadraticNumber{Rat(N)}) || !(QuadraticNumber{Rat(N + 4)} <= whi))
    throw std::runtime_error("extremal_family: translate escapes the Weil interval");
  return make_orbit_unchecked(std::move(translate), q);
}

}  // namespace avbounds
