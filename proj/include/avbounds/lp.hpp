#pragma once
// Exponent optimization: a finite-mesh linear program chooses the exponents
// of an auxiliary system, then the interval engine certifies the bound over
// the whole Weil interval.
//
//   lower side:  maximize t  s.t.  t <= log x_k - sum_i gamma_i log|P_i(x_k)|
//   upper side:  minimize max_k ( log x_k + sum_i gamma_i log|P_i(x_k)| )
//
// over every retained mesh point x_k, gamma >= 0.  The LP is solved by a
// dense two-phase simplex (Bland's rule) on the dual program; the mesh is
// uniform plus geometric guard points near both interval endpoints, with
// points too close to a real root of any candidate polynomial dropped.

#include "avbounds/certify.hpp"
#include "avbounds/orbits.hpp"

#include <iosfwd>
#include <vector>

namespace avbounds {

struct MeshLP {
  FieldSize q;
  Side side = Side::Lower;
  std::vector<IntPolynomial> polynomials;
  // Strictly increasing, strictly inside the open Weil interval.
  std::vector<double> mesh;
  // No retained mesh point lies within this distance of a real root of any
  // candidate polynomial (0 when the guarantee has been waived, see
  // optimize_and_certify).
  double exclusion_radius = 0.0;
};

enum class LPStatus {
  Optimal,
  // Some nonnegative exponent combination has product < 1 across the whole
  // mesh, so the lower-side objective grows without bound.
  Unbounded,
  // Unreachable through solve() on a valid MeshLP (the minimax program is
  // always feasible); kept for completeness.
  Infeasible,
};

struct LPSolution {
  std::vector<double> exponents;  // one per polynomial, nonnegative
  // Log-domain optimum: best worst-case value of log x * prod-term over the
  // mesh, so exp(objective) is the mesh-level bound for either side.
  double objective = 0.0;
  LPStatus status = LPStatus::Optimal;
  int iterations = 0;  // simplex pivots, both phases
};

// Uniform open mesh of mesh_size points, x_k = A + (B-A) k/(mesh_size+1),
// augmented with guard points A + (B-A) 2^-j and B - (B-A) 2^-j, j = 1..48;
// every point within 1e-3 (B-A) of a real root of any polynomial is
// dropped.  Throws std::invalid_argument for mesh_size < 64 or an empty
// polynomial list, std::runtime_error when every point is excluded.
MeshLP build_lp(const FieldSize& q, Side side,
                const std::vector<IntPolynomial>& polynomials, int mesh_size);

// Two-phase dense simplex with Bland's rule on the dual program.  The
// returned exponents are recovered from the final basis by re-solving the
// multiplier system against the original data, so tableau drift does not
// reach the answer.  `debug`, when non-null, receives a plain-text dump
// (phase iterations, basis, final multipliers).  Throws std::runtime_error
// past the pivot cap, std::invalid_argument on an inconsistent MeshLP.
LPSolution solve(const MeshLP& lp, std::ostream* debug = nullptr);

// Dense minimax kernel behind solve(): row k of `a` holds the per-candidate
// coefficients at mesh point k, c_k the objective sample there.  Exposed so
// the simplex can be cross-checked on arbitrary instances.
LPSolution solve_minimax(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a, Side side,
                         std::ostream* debug = nullptr);

// Worst constraint slack of `solution` over the mesh, in the log domain.
// Polynomial values are evaluated exactly at the rational mesh points before
// logs are taken; a feasible solution has margin >= -1e-9.
double feasibility_margin(const MeshLP& lp, const LPSolution& solution);

// Full pipeline on an explicit candidate list: solve the LP on the guarded
// mesh (plus value-floor guards that skip the root-distance exclusion, see
// below), round exponents to 4 decimals, drop those below 1e-4, certify the
// resulting system over the whole interval.  The extra guards require
// |P_i(g)| > 1e-12 for every candidate instead of distance to a root; this
// keeps the endpoint pinned even when a candidate root sits inside the
// exclusion radius of an endpoint, and is why the solved MeshLP reports
// exclusion_radius = 0.
BoundCertificate optimize_and_certify(const FieldSize& q, Side side,
                                      const std::vector<IntPolynomial>& candidates,
                                      int mesh_size, double tolerance);

// Same pipeline with the pool_size most extremal orbits of an enumerated
// pool as candidates.  The pool must belong to q.
BoundCertificate optimize_and_certify(const FieldSize& q, Side side,
                                      const OrbitSet& pool, int pool_size,
                                      int mesh_size, double tolerance);

}  // namespace avbounds
