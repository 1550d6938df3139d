#include "avbounds/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace avbounds::fixtures {
namespace {

IntPolynomial poly(std::initializer_list<long> coeffs) {
  return IntPolynomial::from_ints(coeffs);
}

FixtureSystem make_fixture(unsigned q, Side side,
                           std::vector<IntPolynomial> printed_polys,
                           std::vector<std::string> printed_exps,
                           std::vector<bool> starred, std::vector<bool> highlighted,
                           std::vector<IntPolynomial> certified_polys,
                           std::vector<std::string> certified_exps,
                           std::string full_value, std::string full_argument,
                           std::string reported_value, bool regional,
                           std::string region_argument,
                           std::vector<std::string> notes) {
  FixtureSystem f;
  f.q = q;
  f.side = side;
  f.printed_polynomials = std::move(printed_polys);
  f.printed_exponents = std::move(printed_exps);
  f.starred = std::move(starred);
  f.highlighted = std::move(highlighted);
  f.certified_polynomials = std::move(certified_polys);
  f.certified_exponents = std::move(certified_exps);
  f.full_value = std::move(full_value);
  f.full_argument = std::move(full_argument);
  f.reported_value = std::move(reported_value);
  f.reported_is_regional = regional;
  f.region_argument = std::move(region_argument);
  f.notes = std::move(notes);
  return f;
}

std::vector<FixtureSystem> build_systems() {
  std::vector<FixtureSystem> out;

  // q = 2, lower: the published table lists no system ("n/a").  The infimum
  // of x over the window is the left endpoint; the integrality floor raises
  // the reported constant to 1.
  out.push_back(make_fixture(
      2, Side::Lower, {}, {}, {}, {}, {}, {},
      "0.171573", "A", "1.000000", false, "",
      {"published table lists no lower system for q = 2; the infimum of the "
       "degenerate objective is the left endpoint 0.171573 and the "
       "integrality floor raises the reported constant to 1"}));

  // q = 2, upper.
  out.push_back(make_fixture(
      2, Side::Upper,
      {poly({-5, 1}), poly({19, -9, 1}), poly({-71, 54, -13, 1})},
      {"0.141", "0.23", "0.09"},
      {true, false, false}, {true, false, false},
      {poly({-5, 1}), poly({19, -9, 1}), poly({-71, 54, -13, 1})},
      {"0.141", "0.23", "0.09"},
      "4.034614", "2.0717", "4.034614", false, "", {}));

  // q = 3, lower: the published exponent column has five entries for three
  // polynomials; the working exponents were re-derived.
  out.push_back(make_fixture(
      3, Side::Lower,
      {poly({-1, 1}), poly({2, -4, 1}), poly({-5, 12, -7, 1})},
      {"0.306", "0.199", "0.019", "0.05", "0.108"},
      {true, false, false}, {true, false, false},
      {poly({-1, 1}), poly({2, -4, 1}), poly({-5, 12, -7, 1})},
      {"0.1881", "0.4044", "0.0014"},
      "1.358834", "A", "1.358834", false, "",
      {"published exponent list has five entries for three polynomials; "
       "working exponents re-derived"}));

  // q = 3, upper: the full-interval supremum sits at the right endpoint and
  // exceeds the published headline, which matches the leftmost region
  // between the system roots.
  out.push_back(make_fixture(
      3, Side::Upper,
      {poly({-7, 1}), poly({-6, 1}), poly({34, -12, 1})},
      {"0.1445", "0.155", "0.099"},
      {true, true, false}, {true, true, false},
      {poly({-7, 1}), poly({-6, 1}), poly({34, -12, 1})},
      {"0.1445", "0.155", "0.099"},
      "5.848211", "B", "5.633239", true, "3.7791",
      {"full-interval supremum 5.848211 at the right endpoint exceeds the "
       "published headline 5.634; the headline matches the leftmost region "
       "between system roots"}));

  // q = 4, lower: the published second polynomial x-3 certifies only 2.000;
  // the working layer substitutes x-2.
  out.push_back(make_fixture(
      4, Side::Lower,
      {poly({-1, 1}), poly({-3, 1}), poly({5, -5, 1}), poly({-13, 19, -8, 1})},
      {"0.37", "0.12", "0.065", "0.01"},
      {true, false, true, false}, {true, false, true, false},
      {poly({-1, 1}), poly({-2, 1}), poly({5, -5, 1}), poly({-13, 19, -8, 1})},
      {"0.37", "0.12", "0.065", "0.01"},
      "2.275032", "1.5891", "2.275032", false, "",
      {"published second polynomial x-3 certifies only 1.9389 with the "
       "printed exponents (and at most 2.000 for any exponents); working "
       "layer substitutes x-2, which certifies the headline (suspected "
       "misprint)"}));

  // q = 4, upper.
  out.push_back(make_fixture(
      4, Side::Upper,
      {poly({-9, 1}), poly({-8, 1}), poly({55, -15, 1}),
       poly({-377, 159, -22, 1})},
      {"0.054", "0.112", "0.02", "0.08"},
      {true, true, true, true}, {true, true, true, true},
      {poly({-9, 1}), poly({-8, 1}), poly({55, -15, 1}),
       poly({-377, 159, -22, 1})},
      {"0.054", "0.112", "0.02", "0.08"},
      "7.381723", "6.7583", "7.381723", false, "", {}));

  // q = 5, lower: working first exponent 0.327 (printed 0.323 certifies
  // below the headline).
  out.push_back(make_fixture(
      5, Side::Lower,
      {poly({-2, 1}), poly({7, -6, 1}), poly({-23, 28, -10, 1}),
       poly({-26, 30, -10, 1})},
      {"0.323", "0.063", "0.062", "0.007"},
      {true, true, false, false}, {true, true, false, false},
      {poly({-2, 1}), poly({7, -6, 1}), poly({-23, 28, -10, 1}),
       poly({-26, 30, -10, 1})},
      {"0.327", "0.063", "0.062", "0.007"},
      "2.699990", "3.5069", "2.699990", false, "",
      {"printed exponents certify 2.7026, which the published headline "
       "rounds down to 2.7; working first exponent 0.327 lands the "
       "certificate on the headline itself",
       "both cubic polynomials are not window members (each has a root just "
       "below the left endpoint 1.527864); retained with membership warnings "
       "since the bound lemma needs only integrality"}));

  // q = 5, upper: the third polynomial is highlighted in the published table
  // but carries no exception asterisk.
  out.push_back(make_fixture(
      5, Side::Upper,
      {poly({-10, 1}), poly({-9, 1}), poly({79, -18, 1}), poly({71, -17, 1}),
       poly({69, -17, 1})},
      {"0.11", "0.08", "0.066", "0.001", "0.003"},
      {true, true, false, false, false}, {true, true, true, false, false},
      {poly({-10, 1}), poly({-9, 1}), poly({79, -18, 1}), poly({71, -17, 1}),
       poly({69, -17, 1})},
      {"0.11", "0.08", "0.066", "0.001", "0.003"},
      "8.834623", "B", "8.834623", false, "", {}));

  // q = 7, lower: working fourth exponent 0.0145 (printed 0.0178).
  out.push_back(make_fixture(
      7, Side::Lower,
      {poly({-3, 1}), poly({23, -10, 1}), poly({-71, 54, -13, 1}),
       poly({-83, 61, -14, 1})},
      {"0.289", "0.0048", "0.0457", "0.0178"},
      {true, false, false, false}, {true, false, false, false},
      {poly({-3, 1}), poly({23, -10, 1}), poly({-71, 54, -13, 1}),
       poly({-83, 61, -14, 1})},
      {"0.289", "0.0048", "0.0457", "0.0145"},
      "3.978078", "3.8708", "3.978078", false, "",
      {"printed exponents certify only 3.9740, below the published headline "
       "3.978; working fourth exponent 0.0145 certifies the headline"}));

  // q = 7, upper: working exponents re-derived.
  out.push_back(make_fixture(
      7, Side::Upper,
      {poly({-13, 1}), poly({-12, 1}), poly({131, -23, 1}),
       poly({119, -22, 1}), poly({-1561, 406, -35, 1}),
       poly({-1405, 381, -34, 1}), poly({-1379, 379, -34, 1})},
      {"0.055", "0.033", "0.026", "0.003", "0.035", "0.009", "0.006"},
      {true, true, false, false, false, false, false},
      {true, true, false, false, false, false, false},
      {poly({-13, 1}), poly({-12, 1}), poly({131, -23, 1}),
       poly({119, -22, 1}), poly({-1561, 406, -35, 1}),
       poly({-1405, 381, -34, 1}), poly({-1379, 379, -34, 1})},
      {"0.0570", "0.0313", "0.0243", "0.0013", "0.0352", "0.0073", "0.0077"},
      "11.734822", "9.3635", "11.734822", false, "",
      {"printed exponents certify only 11.8678, above the published headline "
       "11.734; working exponents re-derived to certify the headline"}));

  // q = 8, lower: five printed exponents for six polynomials, and three
  // printed polynomials are not window members (x-3 and both cubics have a
  // root below the left endpoint 9 - 4*sqrt(2) = 3.343146).  The bound lemma
  // does not require membership, so the working layer retains all six.
  out.push_back(make_fixture(
      8, Side::Lower,
      {poly({-3, 1}), poly({-4, 1}), poly({19, -9, 1}), poly({23, -10, 1}),
       poly({-97, 68, -15, 1}), poly({-107, 71, -15, 1})},
      {"0.044", "0.13", "0.09", "0.01", "0.02"},
      {true, true, true, false, true, false},
      {true, true, true, false, true, false},
      {poly({-3, 1}), poly({-4, 1}), poly({19, -9, 1}), poly({23, -10, 1}),
       poly({-97, 68, -15, 1}), poly({-107, 71, -15, 1})},
      {"0.0409", "0.1269", "0.0869", "0.0151", "0.0076", "0.0169"},
      "4.634414", "4.7901", "4.634414", false, "",
      {"published exponent list has five entries for six polynomials; "
       "working exponents re-derived",
       "three printed polynomials are not window members (x-3 and both "
       "cubics have a root below the left endpoint 3.343146); retained with "
       "membership warnings since the bound lemma needs only integrality"}));

  // q = 8, upper: working exponents 0.082/0.046 (printed 0.08/0.04).
  out.push_back(make_fixture(
      8, Side::Upper,
      {poly({-14, 1}), poly({181, -27, 1})},
      {"0.08", "0.04"},
      {true, true}, {true, true},
      {poly({-14, 1}), poly({181, -27, 1})},
      {"0.082", "0.046"},
      "13.049708", "13.1869", "13.049708", false, "",
      {"printed exponents certify 13.0441, which the published headline "
       "rounds up to 13.05; working exponents 0.082/0.046 land the "
       "certificate on the headline itself"}));

  // q = 9, lower: working third exponent 0.021 (printed 0.02).
  out.push_back(make_fixture(
      9, Side::Lower,
      {poly({-4, 1}), poly({-5, 1}), poly({-6, 1}), poly({29, -11, 1}),
       poly({33, -12, 1}), poly({34, -12, 1})},
      {"0.15", "0.08", "0.02", "0.03", "0.002", "0.003"},
      {true, true, false, true, false, false},
      {true, true, false, true, false, false},
      {poly({-4, 1}), poly({-5, 1}), poly({-6, 1}), poly({29, -11, 1}),
       poly({33, -12, 1}), poly({34, -12, 1})},
      {"0.15", "0.08", "0.021", "0.03", "0.002", "0.003"},
      "5.469944", "4.5356", "5.469944", false, "",
      {"printed exponents certify 5.4720, which the published headline "
       "rounds down to 5.47; working third exponent 0.021 lands the "
       "certificate on the headline itself"}));

  // q = 9, upper: the published third polynomial x^2-129x+209 has roots 1.64
  // and 127.36 outside the window [4, 16]; the working layer substitutes
  // x^2-29x+209.  The full-interval supremum then exceeds the headline,
  // which matches the last region between system roots.
  out.push_back(make_fixture(
      9, Side::Upper,
      {poly({-16, 1}), poly({-15, 1}), poly({209, -129, 1}),
       poly({-2911, 614, -43, 1})},
      {"0.033", "0.037", "0.033", "0.02"},
      {true, true, true, false}, {true, true, true, false},
      {poly({-16, 1}), poly({-15, 1}), poly({209, -29, 1}),
       poly({-2911, 614, -43, 1})},
      {"0.033", "0.037", "0.033", "0.02"},
      "14.355242", "11.8409", "14.302866", true, "15.9203",
      {"published third polynomial x^2-129x+209 has roots 1.64 and 127.36 "
       "outside the window [4, 16]; working layer substitutes x^2-29x+209 "
       "(suspected misprint)",
       "full-interval supremum 14.355242 at 11.8409 exceeds the published "
       "headline 14.303; the headline matches the last region between "
       "system roots"}));

  return out;
}

}  // namespace

AuxiliarySystem FixtureSystem::working_system() const {
  return make_system(FieldSize{static_cast<unsigned long>(q)}, side,
                     certified_polynomials, certified_exponents);
}

AuxiliarySystem FixtureSystem::printed_system() const {
  if (printed_polynomials.empty())
    throw std::logic_error("printed_system: the published table lists no "
                           "system for this row");
  if (printed_polynomials.size() != printed_exponents.size())
    throw std::logic_error("printed_system: published polynomial and "
                           "exponent counts disagree for this row");
  return make_system(FieldSize{static_cast<unsigned long>(q)}, side,
                     printed_polynomials, printed_exponents);
}

const std::vector<unsigned>& supported_q() {
  static const std::vector<unsigned> qs = {2, 3, 4, 5, 7, 8, 9};
  return qs;
}

const std::vector<PublishedScalars>& published_scalars() {
  static const std::vector<PublishedScalars> rows = {
      {2, "1", "4.035"},    {3, "1.359", "5.634"}, {4, "2.275", "7.382"},
      {5, "2.7", "8.835"},  {7, "3.978", "11.734"}, {8, "4.635", "13.05"},
      {9, "5.47", "14.303"}};
  return rows;
}

double published_value(unsigned q, Side side) {
  for (const PublishedScalars& row : published_scalars())
    if (row.q == q) return std::stod(side == Side::Lower ? row.m : row.M);
  throw std::invalid_argument("published_value: unsupported q " +
                              std::to_string(q));
}

const std::vector<FixtureSystem>& all_systems() {
  static const std::vector<FixtureSystem> systems = build_systems();
  return systems;
}

const FixtureSystem& system_for(unsigned q, Side side) {
  for (const FixtureSystem& f : all_systems())
    if (f.q == q && f.side == side) return f;
  throw std::invalid_argument("system_for: unsupported q " + std::to_string(q));
}

const std::map<unsigned, std::vector<IntPolynomial>>& endpoint_orbits() {
  static const std::map<unsigned, std::vector<IntPolynomial>> table = {
      {4, {poly({-1, 1}), poly({-9, 1})}},
      {9, {poly({-4, 1}), poly({-16, 1})}}};
  return table;
}

const NewPointsFixture& new_points_fixture() {
  static const NewPointsFixture fixture = {
      {{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {4, 3}},
      {{2, 3}, {2, 4}},
      {poly({-4, 1}), poly({-5, 1})}};
  return fixture;
}

const TorsionFixture& torsion_fixture() {
  static const TorsionFixture fixture = {"3.782", "4.0"};
  return fixture;
}

}  // namespace avbounds::fixtures
