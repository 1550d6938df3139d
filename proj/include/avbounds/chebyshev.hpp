#pragma once
// Shifted monic Chebyshev polynomials and their integer translates: the
// constructive side of the near-extremal norm estimates.  The degree-n
// family member has all n roots in (0, 4); for odd prime n it factors as
// (x-2) times an integer cofactor whose translate by -N gives an orbit with
// normalized norm approaching the bracket [N+2-1/N, N+2] as n grows.

#include "avbounds/orbits.hpp"

#include <optional>

namespace avbounds {

struct ChebyshevFamily {
  int n = 0;
  IntPolynomial p;  // monic, integer, n distinct roots in (0, 4)
  // R with p = (x-2) * R; present exactly when n is an odd prime.
  std::optional<IntPolynomial> cofactor;
  long shift = 0;  // the translate of interest is cofactor(x - shift)
};

// 2*T_n(x/2 - 1), the monic integer normalization of the scaled Chebyshev
// polynomial (T_n itself is not integral under this substitution).  Built by
// the exact recurrence V_1 = x-2, V_2 = (x-2)^2 - 2, V_{k+1} = (x-2)V_k -
// V_{k-1}.
IntPolynomial monic_chebyshev(int n);

// Constructs the family and certifies root placement exactly: the signs of p
// at n+1 points interleaving the roots (the Chebyshev extrema, where the
// polynomial's value is near +-2) must alternate, which forces n distinct
// real roots in (0, 4).  Only the sign evaluations are exact; the point
// placement may be approximate.
ChebyshevFamily chebyshev_family(int n, long shift = 0);

// |P_n(-N)|^(1/n) from the exact integer value (log-scaled, so arbitrarily
// large degrees do not overflow).
double growth_rate(int n, int N);
// (1+N/2) + sqrt((1+N/2)^2 - 1), the n -> infinity limit of growth_rate;
// always inside [N+2-1/N, N+2].
double growth_limit(int N);

// The integer shift used on each side: ceil((sqrt q - 1)^2) below,
// floor((sqrt q + 1)^2) - 4 above; the translate's root window [N, N+4]
// always fits inside the Weil interval.
long extremal_shift(const FieldSize& q, Side side);

// Orbit of cofactor(x - N) for an odd prime ell.  Membership is established
// structurally (roots lie in (N, N+4), verified inside the Weil interval by
// exact endpoint comparison); failures of that inclusion are internal errors.
RealOrbit extremal_family(const FieldSize& q, Side side, int ell);

bool is_odd_prime(long v);

}  // namespace avbounds
