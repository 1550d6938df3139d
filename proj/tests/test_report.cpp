#include <doctest.h>

#include "avbounds/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace avbounds;

namespace {

// The table reproduction is the most expensive call in this suite; share one
// run across test cases.
const BoundsReport& shared_report() {
  static const BoundsReport rep = reproduce_tables(1e-4, 3, true);
  return rep;
}

const BoundsRow& row_for(unsigned q) {
  for (const BoundsRow& r : shared_report().rows)
    if (r.q == q) return r;
  throw std::logic_error("row missing");
}

bool any_note_contains(const std::vector<std::string>& notes,
                       const std::string& needle) {
  return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("reproduced rows all match the published scalars") {
  const BoundsReport& rep = shared_report();
  REQUIRE(rep.rows.size() == 7);
  unsigned expected_q[] = {2, 3, 4, 5, 7, 8, 9};
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CAPTURE(rep.rows[i].q);
    CHECK(rep.rows[i].q == expected_q[i]);
    CHECK(rep.rows[i].matches_published());
  }
  CHECK(rep.consistent());
}

TEST_CASE("headline windows for selected rows") {
  CHECK(std::stod(row_for(7).m_certified) > 3.97);
  CHECK(std::stod(row_for(7).m_certified) < 3.99);
  CHECK(std::stod(row_for(8).M_certified) > 13.04);
  CHECK(std::stod(row_for(8).M_certified) < 13.06);
  // q = 2 lower row is degenerate: the certified infimum sits at the left
  // Weil endpoint and the integrality floor raises the headline to 1.
  CHECK(row_for(2).m_certified == "1.000000");
  CHECK(std::stod(row_for(2).m_full) == doctest::Approx(0.171573).epsilon(1e-3));
  CHECK(any_note_contains(row_for(2).discrepancies, "integrality floor"));
}

TEST_CASE("regional headlines diverge from the full-interval suprema") {
  const BoundsRow& three = row_for(3);
  CHECK(std::stod(three.M_certified) == doctest::Approx(5.634).epsilon(2e-3));
  CHECK(std::stod(three.M_full) == doctest::Approx(5.848211).epsilon(2e-3));
  const BoundsRow& nine = row_for(9);
  CHECK(std::stod(nine.M_certified) == doctest::Approx(14.303).epsilon(2e-3));
  CHECK(std::stod(nine.M_full) == doctest::Approx(14.355242).epsilon(2e-3));
  // Non-regional rows agree with their full values.
  CHECK(row_for(4).M_certified == row_for(4).M_full);
  CHECK(row_for(7).m_certified == row_for(7).m_full);
}

TEST_CASE("certified_headline resolves regions, floors, and plain rows") {
  const HeadlineValue three =
      certified_headline(fixtures::system_for(3, Side::Upper), 1e-4);
  CHECK(three.regional);
  CHECK(three.region_index == 0);
  CHECK(three.headline == doctest::Approx(5.633239).epsilon(1e-3));
  CHECK(three.full == doctest::Approx(5.848211).epsilon(1e-3));

  const HeadlineValue nine =
      certified_headline(fixtures::system_for(9, Side::Upper), 1e-4);
  CHECK(nine.regional);
  CHECK(nine.region_index == 6);  // last of seven windows
  CHECK(nine.headline == doctest::Approx(14.302866).epsilon(1e-3));
  CHECK(nine.region_hi == doctest::Approx(16.0));

  const HeadlineValue floor2 =
      certified_headline(fixtures::system_for(2, Side::Lower), 1e-4);
  CHECK(floor2.floored);
  CHECK(floor2.headline == doctest::Approx(1.0));
  CHECK(floor2.full == doctest::Approx(0.171573).epsilon(1e-3));

  const HeadlineValue four =
      certified_headline(fixtures::system_for(4, Side::Upper), 1e-4);
  CHECK_FALSE(four.regional);
  CHECK_FALSE(four.floored);
  CHECK(four.headline == four.full);
}

TEST_CASE("exception sets per row") {
  struct { unsigned q; std::size_t lower, upper; } expected[] = {
      {2, 0, 3}, {3, 3, 3}, {4, 4, 4}, {5, 2, 5},
      {7, 4, 7}, {8, 3, 2}, {9, 6, 4},
  };
  for (const auto& e : expected) {
    CAPTURE(e.q);
    CHECK(row_for(e.q).exceptions_lower.size() == e.lower);
    CHECK(row_for(e.q).exceptions_upper.size() == e.upper);
  }
  // Spot check: x - 5 over q = 2 exceeds every certified upper value.
  bool found = false;
  for (const ExceptionRecord& r : row_for(2).exceptions_upper)
    if (r.orbit.minimal_polynomial.to_string() == "x - 5") {
      found = true;
      CHECK(r.violates);
      CHECK(r.normalized_norm == "5.000000");
    }
  CHECK(found);
}

TEST_CASE("audit finds exactly three anomalies") {
  const BoundsReport& rep = shared_report();
  REQUIRE(rep.anomalies.size() == 3);

  const AuditAnomaly& a2 = rep.anomalies[0];
  CHECK(a2.q == 2);
  CHECK(a2.side == Side::Upper);
  CHECK(a2.category == "missing-asterisk");
  REQUIRE(a2.polynomials.size() == 2);
  CHECK(a2.normalized_norms[0] == "4.358899");
  CHECK(a2.normalized_norms[1] == "4.140818");

  const AuditAnomaly& a5 = rep.anomalies[1];
  CHECK(a5.q == 5);
  CHECK(a5.side == Side::Upper);
  CHECK(a5.category == "missing-asterisk");
  REQUIRE(a5.polynomials.size() == 1);
  CHECK(a5.normalized_norms[0] == "8.888194");
  CHECK(a5.detail.find("color-highlighted") != std::string::npos);

  const AuditAnomaly& a9 = rep.anomalies[2];
  CHECK(a9.q == 9);
  CHECK(a9.side == Side::Upper);
  CHECK(a9.category == "membership");
  REQUIRE(a9.polynomials.size() == 1);
  CHECK(a9.polynomials[0].to_string() == "x^2 - 129x + 209");
  CHECK(a9.normalized_norms[0] == "14.456832");
}

TEST_CASE("audit notes: conservative and vacuous asterisks") {
  CHECK(any_note_contains(row_for(4).discrepancies,
                          "x^3 - 22x^2 + 159x - 377"));
  CHECK(any_note_contains(row_for(8).discrepancies,
                          "asterisk on non-member rows"));
  // The q = 9 substitution is described in the row notes as well.
  CHECK(any_note_contains(row_for(9).discrepancies, "129"));
}

TEST_CASE("printed exponent layers certify the frozen values") {
  struct { unsigned q; Side side; double value; } expected[] = {
      {4, Side::Lower, 1.938911},   // with the published x - 3 row
      {5, Side::Lower, 2.702603},   // published headline rounds down to 2.7
      {7, Side::Lower, 3.974015},   // short of the published 3.978
      {7, Side::Upper, 11.867774},  // above the published 11.734
      {8, Side::Upper, 13.044058},  // published headline rounds up to 13.05
      {9, Side::Lower, 5.472021},   // published headline rounds down to 5.47
  };
  for (const auto& e : expected) {
    CAPTURE(e.q);
    CAPTURE(e.side == Side::Lower);
    const AuxiliarySystem sys =
        fixtures::system_for(e.q, e.side).printed_system();
    const BoundCertificate cert = certify(sys, 1e-4);
    CHECK(cert.value() == doctest::Approx(e.value).epsilon(1.5e-3));
  }
  // The printed q = 9 upper layer carries the non-member row.
  const BoundCertificate nine =
      certify(fixtures::system_for(9, Side::Upper).printed_system(), 1e-4);
  CHECK(nine.value() == doctest::Approx(18.786601).epsilon(2e-3));
  CHECK(nine.warnings.size() == 1);
}

TEST_CASE("printed systems with unusable published layers throw") {
  CHECK_THROWS_AS(fixtures::system_for(2, Side::Lower).printed_system(),
                  std::logic_error);
  CHECK_THROWS_AS(fixtures::system_for(3, Side::Lower).printed_system(),
                  std::logic_error);
  CHECK_THROWS_AS(fixtures::system_for(8, Side::Lower).printed_system(),
                  std::logic_error);
}

TEST_CASE("working-layer membership warnings are retained") {
  const BoundCertificate five =
      certify(fixtures::system_for(5, Side::Lower).working_system(), 1e-4);
  CHECK(five.warnings.size() == 2);
  const BoundCertificate eight =
      certify(fixtures::system_for(8, Side::Lower).working_system(), 1e-4);
  CHECK(eight.warnings.size() == 3);
}

TEST_CASE("torsion bound rounds the q = 9 headline to 3.782") {
  const TorsionBound tb = torsion_bound(1e-4);
  CHECK(tb.bound == "3.782");
  CHECK(std::stod(tb.from_upper) == doctest::Approx(14.302866).epsilon(1e-3));
}

TEST_CASE("torsion rounding rule") {
  CHECK(torsion_round_up(14.302866) == "3.782");
  CHECK(torsion_round_up(16.0) == "4.0");
  // The full-interval supremum would round to a strictly larger constant.
  CHECK(torsion_round_up(14.355242) == "3.789");
  // Monotone over a grid.
  double prev = 0.0;
  for (double v = 1.0; v <= 20.0; v += 0.37) {
    const double cur = std::stod(torsion_round_up(v));
    CHECK(cur >= prev);
    CHECK(cur >= std::sqrt(v) - 1e-9);
    CHECK(cur <= std::sqrt(v) + 1e-3 + 1e-9);
    prev = cur;
  }
}

TEST_CASE("candidate pair stages") {
  const CandidatePairs cp = candidate_pairs();
  const std::vector<std::pair<unsigned, unsigned>> stage_one = {
      {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {4, 3}};
  const std::vector<std::pair<unsigned, unsigned>> stage_two = {{2, 3}, {2, 4}};
  CHECK(cp.stage_one == stage_one);
  CHECK(cp.stage_two == stage_two);
}

TEST_CASE("new-points scan finds x - 4 and x - 5 and nothing else") {
  const NewPointsReport rep = new_points_scan(6);
  REQUIRE(rep.exceptional_orbits.size() == 2);
  CHECK(rep.exceptional_orbits[0].q == 2);
  CHECK(rep.exceptional_orbits[0].r == 3);
  CHECK(rep.exceptional_orbits[0].orbit.minimal_polynomial.to_string() ==
        "x - 4");
  CHECK(rep.exceptional_orbits[0].base_count == "4");
  CHECK(rep.exceptional_orbits[0].top_count == "4");
  CHECK(rep.exceptional_orbits[1].orbit.minimal_polynomial.to_string() ==
        "x - 5");
  CHECK(rep.exceptional_orbits[1].base_count == "5");
  CHECK(rep.exceptional_orbits[1].top_count == "5");
  // (2, 4) contributes no exceptional orbit: the near miss x - 3 has equal
  // subfield union and extension count but unequal base count.
  CHECK(any_note_contains(rep.notes, "x - 3"));
  CHECK(any_note_contains(rep.notes, "3 != 9"));
  // Quadratic-twist route for the nondegenerate small fields.
  CHECK(any_note_contains(rep.notes, "x - 7 = twist of x - 1"));
  CHECK(any_note_contains(rep.notes, "x - 9 = twist of x - 1"));
  CHECK(any_note_contains(rep.notes, "no new points over the quadratic"));

  // Stable under a smaller cap.
  const NewPointsReport smaller = new_points_scan(5);
  REQUIRE(smaller.exceptional_orbits.size() == 2);
  CHECK(smaller.exceptional_orbits[0].orbit.minimal_polynomial.to_string() ==
        "x - 4");
  CHECK(smaller.exceptional_orbits[1].orbit.minimal_polynomial.to_string() ==
        "x - 5");

  CHECK_THROWS_AS(new_points_scan(0), std::invalid_argument);
  CHECK_THROWS_AS(new_points_scan(9), std::invalid_argument);
}

TEST_CASE("chebyshev families bracket the easy-bound targets") {
  const ChebyshevBracketReport two =
      proposition_chebyshev_bracket(FieldSize{2});
  CHECK(two.ells.size() == 25);  // odd primes in [3, 101]
  CHECK(two.lower_floor == doctest::Approx(1.0));
  CHECK(two.upper_target == doctest::Approx(2.5));
  CHECK(two.upper_max >= 2.5 - two.slack);
  CHECK(two.lower_within);
  CHECK(two.upper_within);
  CHECK(two.all_members);

  const ChebyshevBracketReport nine =
      proposition_chebyshev_bracket(FieldSize{9});
  CHECK(nine.lower_floor == doctest::Approx(4.0));
  CHECK(nine.lower_target == doctest::Approx(6.0));
  CHECK(nine.lower_min <= 6.3);
  CHECK(nine.upper_target == doctest::Approx(16.0 - 2.0 - 1.0 / 9.0));
  CHECK(nine.lower_within);
  CHECK(nine.upper_within);
  CHECK(nine.all_members);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(reproduce_row(5, 1e-4, 2), std::invalid_argument);
  CHECK_THROWS_AS(reproduce_row(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(torsion_round_up(-1.0), std::invalid_argument);
}

TEST_CASE("single-row reproduction matches the full table") {
  const BoundsRow solo = reproduce_row(5, 1e-4, 3, true);
  CHECK(solo.q == 5);
  CHECK(solo.m_certified == row_for(5).m_certified);
  CHECK(solo.M_certified == row_for(5).M_certified);
  CHECK(solo.matches_published());
}
