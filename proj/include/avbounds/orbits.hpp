#pragma once
// Exhaustive enumeration of real orbits up to a degree cap (the candidate
// pool for the LP optimizer and the audits), extremal selection by
// normalized norm, and a line-oriented cache format.
//
// Candidate generation walks coefficients top-down; the feasible window for
// each next coefficient comes from sign alternation of the partially built
// polynomial's derivative cascade (every derivative of a polynomial with all
// roots in [A,B] again has all roots there).  Generation uses floating
// point with slack; every emitted orbit is verified exactly (Sturm in
// Q(sqrt q)) and screened for irreducibility by exact trial division, so
// the float stage can only cost time, not correctness.

#include "avbounds/weil.hpp"

#include <string>
#include <vector>

namespace avbounds {

enum class Side { Lower, Upper };

struct OrbitSet {
  FieldSize q;
  int max_degree = 0;
  std::vector<RealOrbit> orbits;  // sorted by (degree, normalized norm, coeffs)

  std::vector<const RealOrbit*> of_degree(int d) const;
};

inline constexpr int kMaxEnumerationDegree = 8;

// OpenMP-parallel enumeration (degree by degree; the top-level coefficient
// range is split across threads; results are merged and sorted, so the
// outcome is deterministic).
OrbitSet enumerate_orbits(const FieldSize& q, int max_degree);
// Single-threaded reference kernel with identical output; kept for testing
// and benchmarking against the parallel path.
OrbitSet enumerate_orbits_serial(const FieldSize& q, int max_degree);

// The `count` orbits with smallest (lower) or largest (upper) normalized
// norm; exact cross-power comparisons, deterministic tie-breaks by
// (degree, coefficients).
std::vector<RealOrbit> extremal_orbits(const OrbitSet& set, Side side, int count);

// Cache: header "avbounds-orbits v1 q=<q> maxdeg=<d> count=<n>" followed by
// one orbit line per row.  Parse errors name the offending line number.
void save_cache(const OrbitSet& set, const std::string& path);
OrbitSet load_cache(const std::string& path);

}  // namespace avbounds
