#pragma once
// Published reference tables embedded as data: per-q headline constants, the
// auxiliary polynomial systems exactly as printed (including their exception
// asterisks and color highlights), and a working layer that differs from the
// printed one only where the printed data cannot certify the headline as-is.
// Every deviation between the two layers is annotated, never silent.

#include "avbounds/certify.hpp"
#include "avbounds/weil.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace avbounds::fixtures {

// One row of the published bounds table: the claimed per-dimension point-count
// growth constants m(q) <= #A^(1/g) <= M(q), as printed.
struct PublishedScalars {
  unsigned q = 0;
  std::string m;  // printed lower constant ("1" for q = 2)
  std::string M;  // printed upper constant
};

// One side of a published auxiliary system.  The printed_* members are a
// faithful transcription of the reference tables; the certified_* members are
// the working layer actually used for certification.  For most systems the
// two layers coincide.
struct FixtureSystem {
  unsigned q = 0;
  Side side = Side::Lower;

  // Verbatim layer.
  std::vector<IntPolynomial> printed_polynomials;
  std::vector<std::string> printed_exponents;  // decimal strings as printed
  std::vector<bool> starred;      // exception asterisks, aligned with printed rows
  std::vector<bool> highlighted;  // color highlights, aligned with printed rows

  // Working layer (misprint substitutions and re-derived exponents).
  std::vector<IntPolynomial> certified_polynomials;
  std::vector<std::string> certified_exponents;

  // Frozen certified values for the working system (6-decimal strings).
  std::string full_value;     // extremum over the whole Weil interval
  std::string full_argument;  // where it is attained ("A", "B", or an abscissa)
  std::string reported_value; // headline comparable to the published scalar
  bool reported_is_regional = false;  // headline comes from a subinterval
  std::string region_argument;        // abscissa of the regional extremum

  // Annotations describing every printed-vs-working difference and every
  // printed row that fails window membership.
  std::vector<std::string> notes;

  bool degenerate() const { return certified_polynomials.empty(); }
  // The working system, ready to certify (throws for the degenerate row).
  AuxiliarySystem working_system() const;
  // The printed system when its exponent list is usable as-is (same count,
  // parseable); throws std::logic_error otherwise.
  AuxiliarySystem printed_system() const;
};

// The seven supported field sizes, ascending.
const std::vector<unsigned>& supported_q();

// Published m(q)/M(q) rows, ascending in q.
const std::vector<PublishedScalars>& published_scalars();
// Published scalar for one side as a double ("1" -> 1.0).
double published_value(unsigned q, Side side);

// All fourteen fixture systems (seven q, two sides; q = 2 lower is the
// degenerate empty system), ordered by q then side (lower first).
const std::vector<FixtureSystem>& all_systems();
const FixtureSystem& system_for(unsigned q, Side side);

// Orbits attaining the integer endpoints of the easy-bounds window, the only
// degree <= 5 orbits outside [floor((sqrt q - 1)^2) + 1, ceil((sqrt q + 1)^2) - 1]:
// x-1 and x-9 for q = 4, x-4 and x-16 for q = 9.
const std::map<unsigned, std::vector<IntPolynomial>>& endpoint_orbits();

// Reference lists for the new-points analysis.
struct NewPointsFixture {
  std::vector<std::pair<unsigned, unsigned>> stage_one;  // seven (q, r) pairs
  std::vector<std::pair<unsigned, unsigned>> survivors;  // {(2,3), (2,4)}
  std::vector<IntPolynomial> q2_r3_exceptional;          // {x-4, x-5}
};
const NewPointsFixture& new_points_fixture();

// Reference output of the 2-torsion bound: ceil-rounded sqrt of the q = 9
// upper headline, and the weaker fallback from the trivial window bound 16.
struct TorsionFixture {
  std::string printed;   // "3.782"
  std::string fallback;  // "4.0"
};
const TorsionFixture& torsion_fixture();

}  // namespace avbounds::fixtures
