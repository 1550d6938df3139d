#include <doctest.h>

#include "avbounds/certify.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace avbounds;

namespace {

AuxiliarySystem S(unsigned long qv, Side side,
                  std::initializer_list<std::initializer_list<long>> polys,
                  std::initializer_list<const char*> exps) {
  std::vector<IntPolynomial> ps;
  for (const auto& c : polys) ps.push_back(IntPolynomial::from_ints(c));
  std::vector<std::string> es(exps.begin(), exps.end());
  return make_system(FieldSize{qv}, side, std::move(ps), es);
}

// Non-rigorous double evaluation of the auxiliary objective, for spot checks.
double plain_objective(const AuxiliarySystem& sys, double x) {
  double acc = std::log(x);
  for (std::size_t j = 0; j < sys.polynomials.size(); ++j) {
    const double t = sys.exponents[j].get_d() * std::log(std::fabs(sys.polynomials[j].eval(x)));
    acc += sys.side == Side::Upper ? t : -t;
  }
  return std::exp(acc);
}

const AuxiliarySystem kSys2U = S(2, Side::Upper,
                                 {{-5, 1}, {19, -9, 1}, {-71, 54, -13, 1}},
                                 {"0.141", "0.23", "0.09"});
const AuxiliarySystem kSys3L = S(3, Side::Lower,
                                 {{-1, 1}, {2, -4, 1}, {-5, 12, -7, 1}},
                                 {"0.1881", "0.4044", "0.0014"});
const AuxiliarySystem kSys3U = S(3, Side::Upper,
                                 {{-7, 1}, {-6, 1}, {34, -12, 1}},
                                 {"0.1445", "0.155", "0.099"});
const AuxiliarySystem kSys4L = S(4, Side::Lower,
                                 {{-1, 1}, {-2, 1}, {5, -5, 1}, {-13, 19, -8, 1}},
                                 {"0.37", "0.12", "0.065", "0.01"});
const AuxiliarySystem kSys8L = S(8, Side::Lower,
                                 {{-3, 1}, {-4, 1}, {19, -9, 1}, {23, -10, 1},
                                  {-97, 68, -15, 1}, {-107, 71, -15, 1}},
                                 {"0.0409", "0.1269", "0.0869", "0.0151", "0.0076", "0.0169"});
const AuxiliarySystem kSys9U = S(9, Side::Upper,
                                 {{-16, 1}, {-15, 1}, {209, -29, 1}, {-2911, 614, -43, 1}},
                                 {"0.033", "0.037", "0.033", "0.02"});

}  // namespace

TEST_CASE("weil interval double endpoints bracket the exact values") {
  for (unsigned long qv : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul}) {
    FieldSize q{qv};
    auto [lo, hi] = weil_interval(q);
    const double dlo = weil_lo_double(q);
    const double dhi = weil_hi_double(q);
    CHECK(QuadraticNumber{Rat(dlo)} <= lo);
    CHECK(hi <= QuadraticNumber{Rat(dhi)});
    CHECK(dhi - dlo < (hi - lo).to_double() + 1e-12);
    CHECK(dlo > 0.0);
  }
  // Square q: endpoints are exact integers.
  CHECK(weil_lo_double(FieldSize{4}) == 1.0);
  CHECK(weil_hi_double(FieldSize{4}) == 9.0);
  CHECK(weil_lo_double(FieldSize{9}) == 4.0);
  CHECK(weil_hi_double(FieldSize{9}) == 16.0);
}

TEST_CASE("certify: empty lower system gives the left interval endpoint") {
  AuxiliarySystem sys;
  sys.q = FieldSize{2};
  sys.side = Side::Lower;
  BoundCertificate cert = certify(sys, 1e-6);
  CHECK(cert.value() == doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-4));
  CHECK(cert.value() <= 3.0 - 2.0 * std::sqrt(2.0) + 1e-12);  // safety side
  CHECK(cert.exceptions.empty());
  CHECK(cert.warnings.empty());
}

TEST_CASE("certify: published q=2 upper system") {
  BoundCertificate cert = certify(kSys2U, 1e-6);
  CHECK(cert.value() > 4.034);
  CHECK(cert.value() < 4.036);
  CHECK(cert.value() == doctest::Approx(4.034614).epsilon(2e-6));
  CHECK(cert.value() - cert.witness <= 1e-6 + 2e-6);
  CHECK(cert.witness <= cert.value());
  CHECK(cert.subdivision_depth > 0);
  CHECK(cert.tolerance == "0.000001");
  // All three system polynomials are members whose normalized norm exceeds
  // the bound, so all three are violating exceptions.
  REQUIRE(cert.exceptions.size() == 3);
  CHECK(cert.exceptions[0].orbit.minimal_polynomial == IntPolynomial::from_ints({-5, 1}));
  CHECK(cert.exceptions[0].normalized_norm == "5.000000");
  CHECK(cert.exceptions[0].violates);
  CHECK(cert.exceptions[1].normalized_norm == "4.358899");
  CHECK(cert.exceptions[1].violates);
  CHECK(cert.exceptions[2].normalized_norm == "4.140818");
  CHECK(cert.exceptions[2].violates);
  CHECK(cert.warnings.empty());
}

TEST_CASE("certify: published q=4 lower system") {
  BoundCertificate cert = certify(kSys4L, 1e-6);
  CHECK(cert.value() > 2.274);
  CHECK(cert.value() < 2.276);
  CHECK(cert.value() == doctest::Approx(2.275032).epsilon(2e-6));
  CHECK(cert.witness >= cert.value());
  CHECK(cert.witness - cert.value() <= 1e-6 + 2e-6);
  // Members with normalized norm below the lower bound 2.2750 violate it.
  REQUIRE(cert.exceptions.size() == 4);
  CHECK(cert.exceptions[0].violates);        // x-1, norm 1
  CHECK(cert.exceptions[1].violates);        // x-2, norm 2
  CHECK(cert.exceptions[2].violates);        // x^2-5x+5, sqrt 5 = 2.2361
  CHECK_FALSE(cert.exceptions[3].violates);  // x^3-8x^2+19x-13, 13^(1/3) = 2.3513
  CHECK(cert.warnings.empty());
}

TEST_CASE("certify: single-polynomial system with exact optimum 2") {
  AuxiliarySystem sys = S(4, Side::Lower, {{-1, 1}}, {"0.5"});
  BoundCertificate cert = certify(sys, 1e-6);
  CHECK(cert.value() <= 2.0);
  CHECK(cert.value() == doctest::Approx(2.0).epsilon(2e-6));
}

TEST_CASE("certify: tolerance floor is enforced") {
  CHECK_THROWS_AS(certify(kSys2U, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(certify(kSys2U, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(certify(kSys2U, -1.0), std::invalid_argument);
}

TEST_CASE("certify: malformed systems are rejected") {
  AuxiliarySystem sys = kSys2U;
  sys.exponents.pop_back();
  CHECK_THROWS_AS(certify(sys, 1e-6), std::invalid_argument);
  sys = kSys2U;
  sys.exponents[0] = Rat(0);
  CHECK_THROWS_AS(certify(sys, 1e-6), std::invalid_argument);
  sys = kSys2U;
  sys.polynomials[0] = IntPolynomial::from_ints({-5, 2});  // not monic
  CHECK_THROWS_AS(certify(sys, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(make_system(FieldSize{2}, Side::Upper, {IntPolynomial::from_ints({-5, 1})},
                              {"0.1", "0.2"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_system(FieldSize{2}, Side::Upper, {IntPolynomial::from_ints({-5, 1})},
                              {"-0.1"}),
                  std::invalid_argument);
}

TEST_CASE("certify: serial and parallel agree exactly") {
  for (const AuxiliarySystem* sys : {&kSys2U, &kSys4L, &kSys3L}) {
    BoundCertificate a = certify(*sys, 1e-6);
    BoundCertificate b = certify_serial(*sys, 1e-6);
    CHECK(a == b);
    CHECK(a.witness == b.witness);
    CHECK(a.certified_bound == b.certified_bound);
    CHECK(a.subdivision_depth == b.subdivision_depth);
  }
}

TEST_CASE("certify: tightening the tolerance never loosens the bound") {
  for (double loose : {1e-3, 1e-4, 1e-5}) {
    BoundCertificate u1 = certify(kSys2U, loose);
    BoundCertificate u2 = certify(kSys2U, 1e-6);
    CHECK(u2.value() <= u1.value() + 1e-12);  // upper bounds shrink
    BoundCertificate l1 = certify(kSys4L, loose);
    BoundCertificate l2 = certify(kSys4L, 1e-6);
    CHECK(l2.value() >= l1.value() - 1e-12);  // lower bounds grow
  }
}

TEST_CASE("certify: bounds hold against dense sampling") {
  std::mt19937 rng(20260823);
  for (const AuxiliarySystem* sys : {&kSys2U, &kSys4L, &kSys3U, &kSys8L}) {
    BoundCertificate cert = certify(*sys, 1e-6);
    const double m = cert.value();
    const double wlo = weil_lo_double(sys->q);
    const double whi = weil_hi_double(sys->q);
    std::uniform_real_distribution<double> dist(wlo, whi);
    for (int i = 0; i < 5000; ++i) {
      const double fx = plain_objective(*sys, dist(rng));
      if (sys->side == Side::Upper) {
        CHECK(fx <= m + 1e-9 * (1.0 + std::fabs(fx)));
      } else {
        CHECK(fx >= m - 1e-9 * (1.0 + std::fabs(fx)));
      }
    }
  }
}

TEST_CASE("certify: non-member system polynomial becomes a warning, not an exception") {
  BoundCertificate cert = certify(kSys8L, 1e-6);
  CHECK(cert.value() == doctest::Approx(4.634414).epsilon(2e-6));
  // x-3 and both cubics have a root left of the q=8 interval (A = 9-4*sqrt 2
  // = 3.3431; the cubics' smallest roots are 3.3080 and 3.3249): warned
  // about, excluded from exceptions.
  REQUIRE(cert.warnings.size() == 3);
  CHECK(cert.warnings[0].find("x - 3") != std::string::npos);
  for (const std::string& w : cert.warnings)
    CHECK(w.find("not a member") != std::string::npos);
  CHECK(cert.exceptions.size() == 3);
  for (const ExceptionRecord& rec : cert.exceptions) {
    CHECK(rec.orbit.minimal_polynomial != IntPolynomial::from_ints({-3, 1}));
    CHECK(rec.orbit.degree() <= 2);
  }
}

TEST_CASE("certify_window: argument validation") {
  CHECK_THROWS_AS(certify_window(kSys2U, 0.0, 1.0, 2.0, false), std::invalid_argument);
  CHECK_THROWS_AS(certify_window(kSys2U, 1e-6, 2.0, 1.0, false), std::invalid_argument);
  CHECK_THROWS_AS(certify_window(kSys2U, 1e-6, -1.0, 2.0, false), std::invalid_argument);
}

TEST_CASE("certify_window: q=3 upper full interval vs first root region") {
  // Full-interval supremum sits at the right endpoint...
  BoundCertificate full = certify(kSys3U, 1e-6);
  CHECK(full.value() == doctest::Approx(5.848211).epsilon(2e-6));
  // ...while the region left of the first system root (6 - sqrt 2) has the
  // smaller interior peak.
  auto roots = isolate_interior_roots(IntPolynomial::from_ints({34, -12, 1}), FieldSize{3});
  REQUIRE(roots.size() == 2);
  WindowBound first = certify_window(kSys3U, 1e-6, weil_lo_double(FieldSize{3}),
                                     roots[0].second, true);
  CHECK(first.value == doctest::Approx(5.633239).epsilon(1e-5));
  CHECK(first.value < full.value());
}

TEST_CASE("certify_window: q=9 upper full interval vs last root region") {
  BoundCertificate full = certify(kSys9U, 1e-6);
  CHECK(full.value() == doctest::Approx(14.355242).epsilon(2e-6));
  // Rightmost interior root over all system polynomials starts the last
  // region; x-16 is rooted at the endpoint itself and contributes none.
  double last_root_lo = 0.0;
  for (const IntPolynomial& p : kSys9U.polynomials)
    for (const auto& [rlo, rhi] : isolate_interior_roots(p, FieldSize{9}))
      last_root_lo = std::max(last_root_lo, rlo);
  CHECK(last_root_lo == doctest::Approx(15.8019).epsilon(1e-3));
  WindowBound last = certify_window(kSys9U, 1e-6, last_root_lo,
                                    weil_hi_double(FieldSize{9}), true);
  CHECK(last.value == doctest::Approx(14.302866).epsilon(1e-5));
  CHECK(last.value < full.value());
}

TEST_CASE("exception_set: q=2 upper example") {
  OrbitSet pool = enumerate_orbits(FieldSize{2}, 3);
  std::vector<ExceptionRecord> exc = exception_set(kSys2U, pool);
  REQUIRE(exc.size() == 3);
  CHECK(exc[0].orbit.minimal_polynomial == IntPolynomial::from_ints({-5, 1}));
  CHECK(exc[0].violates);
  CHECK(exc[1].orbit.minimal_polynomial == IntPolynomial::from_ints({19, -9, 1}));
  CHECK(exc[1].violates);
  CHECK(exc[2].orbit.minimal_polynomial == IntPolynomial::from_ints({-71, 54, -13, 1}));
  CHECK(exc[2].violates);
}

TEST_CASE("exception_set: q=3 lower example") {
  OrbitSet pool = enumerate_orbits(FieldSize{3}, 3);
  std::vector<ExceptionRecord> exc = exception_set(kSys3L, pool);
  REQUIRE(exc.size() == 3);
  CHECK(exc[0].orbit.minimal_polynomial == IntPolynomial::from_ints({-1, 1}));
  CHECK(exc[0].violates);  // norm 1 below the lower bound 1.3588
  CHECK_FALSE(exc[1].violates);  // sqrt 2 = 1.414 above it
  CHECK_FALSE(exc[2].violates);  // 5^(1/3) = 1.710 above it
}

TEST_CASE("exception_set: pool preconditions") {
  OrbitSet pool2 = enumerate_orbits(FieldSize{2}, 2);  // degree cap too small
  CHECK_THROWS_AS(exception_set(kSys2U, pool2), std::invalid_argument);
  OrbitSet pool3 = enumerate_orbits(FieldSize{3}, 3);  // wrong q
  CHECK_THROWS_AS(exception_set(kSys2U, pool3), std::invalid_argument);
}

TEST_CASE("bound_theorem_easy: endpoint integers") {
  const std::vector<std::pair<unsigned long, std::pair<long, long>>> want = {
      {2, {0, 6}}, {3, {0, 8}}, {4, {1, 9}},  {5, {1, 11}},
      {7, {2, 14}}, {8, {3, 15}}, {9, {4, 16}}};
  for (const auto& [qv, nn] : want) {
    CHECK(easy_lower_n(FieldSize{qv}) == nn.first);
    CHECK(easy_upper_n(FieldSize{qv}) == nn.second);
  }
}

TEST_CASE("bound_theorem_easy: closed-form values n+1 and N-1") {
  for (unsigned long qv : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul}) {
    FieldSize q{qv};
    const long n = easy_lower_n(q);
    const long N = easy_upper_n(q);
    BoundCertificate lo = bound_theorem_easy(q, Side::Lower);
    BoundCertificate hi = bound_theorem_easy(q, Side::Upper);
    const double lo_want = n == 0 ? 1.0 : static_cast<double>(n + 1);
    CHECK(std::fabs(lo.value() - lo_want) <= 1e-4);
    CHECK(std::fabs(hi.value() - static_cast<double>(N - 1)) <= 1e-4);
  }
}

TEST_CASE("bound_theorem_easy: conventions and exceptions") {
  // q=2 lower: empty system, integrality floor raises the bound to 1.
  BoundCertificate q2 = bound_theorem_easy(FieldSize{2}, Side::Lower);
  CHECK(q2.certified_bound == "1.000000");
  CHECK(q2.system.polynomials.empty());
  REQUIRE(q2.warnings.size() == 1);
  CHECK(q2.warnings[0].find("raised") != std::string::npos);
  // q=9 lower: x-4 is a member rooted at the endpoint; its norm 4 violates
  // the certified bound 5.
  BoundCertificate q9 = bound_theorem_easy(FieldSize{9}, Side::Lower);
  REQUIRE(q9.exceptions.size() == 1);
  CHECK(q9.exceptions[0].orbit.minimal_polynomial == IntPolynomial::from_ints({-4, 1}));
  CHECK(q9.exceptions[0].violates);
  // q=5 lower: x-1 is not a member (1 lies left of the interval): warning.
  BoundCertificate q5 = bound_theorem_easy(FieldSize{5}, Side::Lower);
  CHECK(q5.exceptions.empty());
  REQUIRE(q5.warnings.size() == 1);
  CHECK(q5.warnings[0].find("not a member") != std::string::npos);
  // q=2 upper: x-6 is not a member either; the bound 5 excludes nothing.
  BoundCertificate q2u = bound_theorem_easy(FieldSize{2}, Side::Upper);
  CHECK(q2u.exceptions.empty());
  CHECK(q2u.warnings.size() == 1);
}

TEST_CASE("isolate_interior_roots: examples") {
  // x^2-4x+2 over q=3: both roots 2 +- sqrt 2 are interior.
  auto r = isolate_interior_roots(IntPolynomial::from_ints({2, -4, 1}), FieldSize{3});
  REQUIRE(r.size() == 2);
  const double s2 = std::sqrt(2.0);
  CHECK(r[0].first <= 2 - s2);
  CHECK(2 - s2 <= r[0].second);
  CHECK(r[1].first <= 2 + s2);
  CHECK(2 + s2 <= r[1].second);
  for (const auto& [lo, hi] : r) CHECK(hi - lo <= 1e-12 + 4e-15);

  // Roots at the interval endpoints are excluded...
  CHECK(isolate_interior_roots(IntPolynomial::from_ints({-16, 1}), FieldSize{9}).empty());
  CHECK(isolate_interior_roots(IntPolynomial::from_ints({-4, 1}), FieldSize{9}).empty());
  CHECK(isolate_interior_roots(IntPolynomial::from_ints({-1, 1}), FieldSize{4}).empty());
  // ...as are roots outside the interval and complex roots.
  CHECK(isolate_interior_roots(IntPolynomial::from_ints({-6, 1}), FieldSize{2}).empty());
  CHECK(isolate_interior_roots(IntPolynomial::from_ints({1, 0, 1}), FieldSize{2}).empty());

  // Repeated roots are reported once; brackets are sorted.
  IntPolynomial pp = IntPolynomial::from_ints({-1, 1}) * IntPolynomial::from_ints({-2, 1});
  auto rr = isolate_interior_roots(pp * pp, FieldSize{2});
  REQUIRE(rr.size() == 2);
  CHECK(rr[0].second < rr[1].first);
  CHECK(rr[0].first <= 1.0);
  CHECK(1.0 <= rr[0].second);
  CHECK(rr[1].first <= 2.0);
  CHECK(2.0 <= rr[1].second);

  CHECK_THROWS_AS(isolate_interior_roots(IntPolynomial{}, FieldSize{2}), std::invalid_argument);
  CHECK_THROWS_AS(isolate_interior_roots(pp, FieldSize{2}, 0.0), std::invalid_argument);
}

TEST_CASE("certificate JSON: schema fields and deterministic bytes") {
  BoundCertificate cert = certify(kSys2U, 1e-6);
  const std::string doc = certificate_to_json(cert);
  for (const char* key : {"\"version\": 1", "\"q\": 2", "\"side\": \"upper\"",
                          "\"direction\": \"upper\"", "\"polynomials\"", "\"exponents\"",
                          "\"certified_bound\"", "\"tolerance\"", "\"subdivision_depth\"",
                          "\"exceptions\"", "\"warnings\"", "\"normalized_norm\"",
                          "\"violates\": true"}) {
    CAPTURE(key);
    CHECK(doc.find(key) != std::string::npos);
  }
  CHECK(doc.find("\"141/1000\"") != std::string::npos);
  CHECK(certificate_to_json(certify(kSys2U, 1e-6)) == doc);  // reproducible
}

TEST_CASE("certificate JSON: lossless roundtrip") {
  for (const BoundCertificate& cert :
       {certify(kSys2U, 1e-6), certify(kSys8L, 1e-6),
        bound_theorem_easy(FieldSize{2}, Side::Lower),
        bound_theorem_easy(FieldSize{9}, Side::Lower)}) {
    const std::string doc = certificate_to_json(cert);
    BoundCertificate back = certificate_from_json(doc);
    CHECK(back == cert);
    CHECK(certificate_to_json(back) == doc);  // byte-identical re-emission
  }
}

TEST_CASE("certificate JSON: big coefficients travel as strings") {
  BoundCertificate cert;
  cert.system.q = FieldSize{2};
  cert.system.side = Side::Upper;
  Int big = Int(1) << 60;
  cert.system.polynomials.push_back(IntPolynomial(std::vector<Int>{-big, Int(1)}));
  cert.system.exponents.push_back(Rat(1, 7));
  cert.certified_bound = "5.000000";
  cert.tolerance = "0.000001";
  const std::string doc = certificate_to_json(cert);
  CHECK(doc.find("\"-1152921504606846976\"") != std::string::npos);
  BoundCertificate back = certificate_from_json(doc);
  CHECK(back == cert);
}

TEST_CASE("certificate JSON: malformed documents are rejected") {
  CHECK_THROWS_AS(certificate_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(certificate_from_json("{}"), std::invalid_argument);
  BoundCertificate cert = certify(kSys2U, 1e-6);
  std::string doc = certificate_to_json(cert);
  // side/direction disagreement
  auto pos = doc.find("\"direction\": \"upper\"");
  REQUIRE(pos != std::string::npos);
  std::string bad = doc.substr(0, pos) + "\"direction\": \"lower\"" +
                    doc.substr(pos + std::string("\"direction\": \"upper\"").size());
  CHECK_THROWS_AS(certificate_from_json(bad), std::invalid_argument);
}
