#include <doctest.h>

#include "avbounds/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

using namespace avbounds;

namespace {

IntPolynomial P(std::initializer_list<long> coeffs) {
  return IntPolynomial::from_ints(coeffs);
}

bool contains(const OrbitSet& set, const IntPolynomial& p) {
  return std::any_of(set.orbits.begin(), set.orbits.end(),
                     [&](const RealOrbit& o) { return o.minimal_polynomial == p; });
}

size_t count_of_degree(const OrbitSet& set, int d) { return set.of_degree(d).size(); }

// Independent brute-force oracle for irreducible quadratic members: scan all
// integer (trace, norm) pairs in the Weil-implied rectangle and decide
// membership by the standard both-roots-in-interval criterion for a monic
// quadratic, evaluated exactly in Q(sqrt q).
std::set<std::string> quadratic_oracle(const FieldSize& q) {
  auto [lo, hi] = weil_interval(q);
  std::set<std::string> result;
  long tmax = 2 * static_cast<long>(q.q) + 2;  // trace <= 2*hi < 2(q+1)+4sqrt(q)
  long hi_ceil = static_cast<long>(q.q) + 2 +
                 2 * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(q.q))));
  long nmax = hi_ceil * hi_ceil;  // norm <= hi^2
  for (long t = -tmax; t <= 2 * tmax; ++t) {
    for (long n = -nmax; n <= nmax; ++n) {
      long disc = t * t - 4 * n;
      if (disc < 0) continue;
      {
        long r = static_cast<long>(std::sqrt(static_cast<double>(disc)));
        bool square = false;
        for (long c = std::max(0L, r - 2); c <= r + 2; ++c)
          if (c * c == disc) square = true;
        if (square) continue;  // reducible over Q
      }
      IntPolynomial p = IntPolynomial({Int(n), Int(-t), Int(1)});
      // Both roots in [lo, hi] iff p(lo) >= 0, p(hi) >= 0, 2 lo <= t <= 2 hi.
      if (eval_quadratic(p, lo).sign() < 0) continue;
      if (eval_quadratic(p, hi).sign() < 0) continue;
      QuadraticNumber half_trace(Rat(t, 2));
      if ((half_trace - lo).sign() < 0) continue;
      if ((hi - half_trace).sign() < 0) continue;
      result.insert(p.coeff_list());
    }
  }
  return result;
}

}  // namespace

TEST_CASE("degree-1 orbits are exactly the integers in the interval") {
  OrbitSet q2 = enumerate_orbits(FieldSize(2), 1);
  REQUIRE(q2.orbits.size() == 5);
  for (long n = 1; n <= 5; ++n) CHECK(contains(q2, P({-n, 1})));

  OrbitSet q3 = enumerate_orbits(FieldSize(3), 1);
  REQUIRE(q3.orbits.size() == 7);
  for (long n = 1; n <= 7; ++n) CHECK(contains(q3, P({-n, 1})));
}

TEST_CASE("endpoint orbits appear for square q") {
  OrbitSet q4 = enumerate_orbits(FieldSize(4), 1);
  CHECK(q4.orbits.size() == 9);
  CHECK(contains(q4, P({-1, 1})));
  CHECK(contains(q4, P({-9, 1})));
  OrbitSet q9 = enumerate_orbits(FieldSize(9), 1);
  CHECK(q9.orbits.size() == 13);
  CHECK(contains(q9, P({-4, 1})));
  CHECK(contains(q9, P({-16, 1})));
}

TEST_CASE("orbit counts per degree match the frozen oracle") {
  struct Row {
    unsigned long q;
    std::vector<size_t> per_degree;
  };
  // Counts frozen from an independent enumerator.
  std::vector<Row> rows = {
      {2, {5, 20, 80, 665, 6324}},
      {3, {7, 35, 348, 6707}},
      {4, {9, 56, 972}},
      {5, {9, 84, 2032}},
      {7, {11, 141, 6142}},
      {8, {11, 187, 9480}},
      {9, {13, 220, 13806}},
  };
  for (const Row& row : rows) {
    int maxd = static_cast<int>(row.per_degree.size());
    OrbitSet set = enumerate_orbits(FieldSize(row.q), maxd);
    size_t total = 0;
    for (int d = 1; d <= maxd; ++d) {
      CHECK_MESSAGE(count_of_degree(set, d) == row.per_degree[d - 1],
                    "q=", row.q, " degree=", d);
      total += row.per_degree[d - 1];
    }
    CHECK(set.orbits.size() == total);
  }
}

TEST_CASE("larger enumerations match the frozen oracle" * doctest::timeout(300)) {
  CHECK(count_of_degree(enumerate_orbits(FieldSize(4), 4), 4) == 32404);
  CHECK(count_of_degree(enumerate_orbits(FieldSize(5), 4), 4) == 106706);
}

TEST_CASE("known table orbit appears at degree 3") {
  OrbitSet set = enumerate_orbits(FieldSize(2), 3);
  CHECK(contains(set, P({-71, 54, -13, 1})));
}

TEST_CASE("enumeration is sorted, duplicate-free, and validated") {
  OrbitSet set = enumerate_orbits(FieldSize(3), 3);
  for (size_t i = 0; i + 1 < set.orbits.size(); ++i) {
    const RealOrbit& a = set.orbits[i];
    const RealOrbit& b = set.orbits[i + 1];
    bool ordered = a.degree() < b.degree() ||
                   (a.degree() == b.degree() &&
                    (compare_normalized_norm(a, b) < 0 ||
                     (compare_normalized_norm(a, b) == 0 &&
                      a.minimal_polynomial < b.minimal_polynomial)));
    CHECK(ordered);
    CHECK(!(a.minimal_polynomial == b.minimal_polynomial));
  }
  for (const RealOrbit& o : set.orbits) CHECK(is_member(o.minimal_polynomial, o.q));
}

TEST_CASE("degree cap is enforced") {
  CHECK_THROWS_AS(enumerate_orbits(FieldSize(2), kMaxEnumerationDegree + 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_orbits(FieldSize(2), 0), std::invalid_argument);
}

TEST_CASE("quadratic orbits match an independent brute-force oracle") {
  for (unsigned long qv : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul}) {
    OrbitSet set = enumerate_orbits(FieldSize(qv), 2);
    std::set<std::string> got;
    for (const RealOrbit* o : set.of_degree(2)) got.insert(o->minimal_polynomial.coeff_list());
    std::set<std::string> expected = quadratic_oracle(FieldSize(qv));
    CHECK_MESSAGE(got == expected, "q=", qv);
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  for (unsigned long qv : {2ul, 3ul, 9ul}) {
    OrbitSet par = enumerate_orbits(FieldSize(qv), 3);
    OrbitSet ser = enumerate_orbits_serial(FieldSize(qv), 3);
    REQUIRE(par.orbits.size() == ser.orbits.size());
    CHECK(par.orbits == ser.orbits);
  }
  OrbitSet par4 = enumerate_orbits(FieldSize(3), 4);
  OrbitSet ser4 = enumerate_orbits_serial(FieldSize(3), 4);
  CHECK(par4.orbits == ser4.orbits);
}

TEST_CASE("re-enumeration is deterministic") {
  OrbitSet a = enumerate_orbits(FieldSize(5), 3);
  OrbitSet b = enumerate_orbits(FieldSize(5), 3);
  CHECK(a.orbits == b.orbits);
}

TEST_CASE("extremal_orbits") {
  OrbitSet q3 = enumerate_orbits(FieldSize(3), 3);
  auto low1 = extremal_orbits(q3, Side::Lower, 1);
  REQUIRE(low1.size() == 1);
  CHECK(low1[0].minimal_polynomial == P({-1, 1}));

  OrbitSet q2 = enumerate_orbits(FieldSize(2), 3);
  auto up1 = extremal_orbits(q2, Side::Upper, 1);
  REQUIRE(up1.size() == 1);
  CHECK(up1[0].minimal_polynomial == P({-5, 1}));

  OrbitSet q5 = enumerate_orbits(FieldSize(5), 2);
  auto up2 = extremal_orbits(q5, Side::Upper, 2);
  REQUIRE(up2.size() == 2);
  bool has10 = up2[0].minimal_polynomial == P({-10, 1}) ||
               up2[1].minimal_polynomial == P({-10, 1});
  CHECK(has10);

  // Asking for more than available returns everything.
  auto all = extremal_orbits(q5, Side::Lower, 100000);
  CHECK(all.size() == q5.orbits.size());
  // Lower list is nondecreasing in normalized norm; upper nonincreasing.
  auto low5 = extremal_orbits(q3, Side::Lower, 5);
  for (size_t i = 0; i + 1 < low5.size(); ++i)
    CHECK(compare_normalized_norm(low5[i], low5[i + 1]) <= 0);
  auto up5 = extremal_orbits(q3, Side::Upper, 5);
  for (size_t i = 0; i + 1 < up5.size(); ++i)
    CHECK(compare_normalized_norm(up5[i], up5[i + 1]) >= 0);
}

TEST_CASE("cache roundtrip") {
  OrbitSet set = enumerate_orbits(FieldSize(3), 2);
  std::string path = "/tmp/avbounds_test_cache.txt";
  save_cache(set, path);
  OrbitSet back = load_cache(path);
  CHECK(back.q == set.q);
  CHECK(back.max_degree == set.max_degree);
  CHECK(back.orbits == set.orbits);
  std::remove(path.c_str());
}

TEST_CASE("cache roundtrips an empty set") {
  OrbitSet empty;
  empty.q = FieldSize(2);
  empty.max_degree = 1;
  std::string path = "/tmp/avbounds_test_cache_empty.txt";
  save_cache(empty, path);
  OrbitSet back = load_cache(path);
  CHECK(back.orbits.empty());
  CHECK(back.q == empty.q);
  std::remove(path.c_str());
}

TEST_CASE("cache parse errors name the line") {
  std::string path = "/tmp/avbounds_test_cache_bad.txt";

  auto write = [&](const std::string& content) {
    std::ofstream out(path);
    out << content;
  };
  auto expect_error_mentioning = [&](const std::string& needle) {
    try {
      load_cache(path);
      FAIL("expected a parse error");
    } catch (const std::exception& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                    "message was: ", e.what());
    }
  };

  write("not a header\n");
  expect_error_mentioning("line 1");

  write("avbounds-orbits v1 q=2 maxdeg=1 count=2\n2;-1,1\n");
  expect_error_mentioning("count");

  write("avbounds-orbits v1 q=2 maxdeg=1 count=1\n2;bogus\n");
  expect_error_mentioning("line 2");

  write("avbounds-orbits v1 q=2 maxdeg=1 count=1\n3;-1,1\n");
  expect_error_mentioning("line 2");

  write("avbounds-orbits v1 q=2 maxdeg=1 count=2\n2;-1,1\n2;-6,1\n");
  expect_error_mentioning("line 3");

  std::remove(path.c_str());
}

TEST_CASE("of_degree filters correctly") {
  OrbitSet set = enumerate_orbits(FieldSize(2), 3);
  size_t sum = 0;
  for (int d = 1; d <= 3; ++d) {
    for (const RealOrbit* o : set.of_degree(d)) CHECK(o->degree() == d);
    sum += set.of_degree(d).size();
  }
  CHECK(sum == set.orbits.size());
}
