#include "avbounds/orbits.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace avbounds {

std::vector<const RealOrbit*> OrbitSet::of_degree(int d) const {
  std::vector<const RealOrbit*> out;
  for (const RealOrbit& o : orbits)
    if (o.degree() == d) out.push_back(&o);
  return out;
}

namespace {

// Exact division test against a monic divisor (integer synthetic division).
bool monic_divides(const IntPolynomial& divisor, const IntPolynomial& p) {
  int dd = divisor.degree(), dp = p.degree();
  if (dd > dp) return false;
  std::vector<Int> r = p.c;
  for (int k = dp; k >= dd; --k) {
    if (sign_of(r[k]) == 0) continue;
    Int f = r[k];
    for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * divisor.c[i];
  }
  for (int k = 0; k < dd; ++k)
    if (sign_of(r[k]) != 0) return false;
  return true;
}

struct CascadeEnumerator {
  FieldSize q;
  int d;                       // target degree
  double A, B;                 // slightly widened interval endpoints
  double scale[9][9] = {};     // scale[k][j]: x^(k-j) factor for coefficient a_j
  std::array<int64_t, 9> a{};  // signed coefficients: p = x^d + a1 x^(d-1) + ... + ad
  const std::vector<std::vector<IntPolynomial>>* lower_members;  // by degree
  std::vector<IntPolynomial> out;

  CascadeEnumerator(const FieldSize& q_, int d_,
                    const std::vector<std::vector<IntPolynomial>>* lower)
      : q(q_), d(d_), lower_members(lower) {
    double s = std::sqrt(static_cast<double>(q.q));
    A = q.q + 1 - 2 * s - 1e-9;
    B = q.q + 1 + 2 * s + 1e-9;
    double fact[10];
    fact[0] = 1;
    for (int i = 1; i <= 9; ++i) fact[i] = fact[i - 1] * i;
    for (int k = 1; k <= d; ++k)
      for (int j = 1; j <= k; ++j)
        scale[k][j] = fact[d - j] * fact[k] / (fact[k - j] * fact[d]);
  }

  // Evaluates the level-k cascade polynomial (descending Horner) and a
  // magnitude bound used for scale-aware zero tolerance.
  void eval_level(int k, double x, double* value, double* magnitude) const {
    double v = 1.0, m = 1.0;
    for (int j = 1; j <= k; ++j) {
      double cj = static_cast<double>(a[j]) * scale[k][j];
      v = v * x + cj;
      m = m * std::fabs(x) + std::fabs(cj);
    }
    *value = v;
    *magnitude = m;
  }

  double bisect_root(int k, double lo, double hi, double flo) const {
    // One sign change in [lo, hi]; 64 bisection steps.
    for (int it = 0; it < 64; ++it) {
      double mid = 0.5 * (lo + hi);
      double v, m;
      eval_level(k, mid, &v, &m);
      if ((v <= 0) == (flo <= 0)) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  // Finds the k roots of the level-k polynomial bracketed by the previous
  // level's roots.  Returns false when the sign pattern rules the node out.
  bool find_roots(int k, const double* prev, double* roots) const {
    double pts[10];
    pts[0] = A;
    for (int j = 0; j < k - 1; ++j) pts[j + 1] = prev[j];
    pts[k] = B;
    int found = 0;
    for (int j = 0; j < k; ++j) {
      double l = pts[j], r = pts[j + 1];
      double fl, ml, fr, mr;
      eval_level(k, l, &fl, &ml);
      eval_level(k, r, &fr, &mr);
      double tl = 1e-9 * (1.0 + ml), tr = 1e-9 * (1.0 + mr);
      if (std::fabs(fl) <= tl) {
        roots[found++] = l;
        continue;
      }
      if (std::fabs(fr) <= tr) {
        roots[found++] = r;
        continue;
      }
      if ((fl < 0) == (fr < 0)) return false;  // no root in this bracket
      roots[found++] = bisect_root(k, l, r, fl);
    }
    return found == k;
  }

  void emit_candidate() {
    if (a[d] == 0) return;  // root at 0 lies outside the interval
    std::vector<Int> coeffs(static_cast<size_t>(d) + 1);
    for (int j = 0; j < d; ++j) coeffs[j] = Int(static_cast<long>(a[d - j]));
    coeffs[d] = 1;
    IntPolynomial p(std::move(coeffs));
    if (!is_member(p, q)) return;
    // Irreducibility: a reducible member has a member factor of degree <= d/2.
    const Int c0 = abs(p.constant_term());
    for (int fd = 1; fd <= d / 2; ++fd) {
      for (const IntPolynomial& f : (*lower_members)[fd]) {
        Int f0 = abs(f.constant_term());
        if (!mpz_divisible_p(c0.get_mpz_t(), f0.get_mpz_t())) continue;
        if (monic_divides(f, p)) return;
      }
    }
    out.push_back(std::move(p));
  }

  // Feasible window for a_k given the previous level's roots, from sign
  // alternation at {A, prev roots, B}.
  void window(int k, const double* prev, int64_t* wlo, int64_t* whi) const {
    double pts[10];
    pts[0] = A;
    for (int j = 0; j < k - 1; ++j) pts[j + 1] = prev[j];
    pts[k - 1 + 1] = B;
    double lo = -1e300, hi = 1e300;
    for (int idx = 0; idx <= k; ++idx) {
      double v = 1.0;  // level-k polynomial with a_k = 0
      double x = pts[idx];
      for (int j = 1; j <= k; ++j) {
        double cj = (j == k) ? 0.0 : static_cast<double>(a[j]) * scale[k][j];
        v = v * x + cj;
      }
      if ((k - idx) % 2 == 0) lo = std::max(lo, -v);
      else hi = std::min(hi, -v);
    }
    double s = scale[k][k];
    *wlo = static_cast<int64_t>(std::floor(lo / s)) - 1;
    *whi = static_cast<int64_t>(std::ceil(hi / s)) + 1;
  }

  void recurse(int k, const double* prev) {
    int64_t wlo, whi;
    window(k, prev, &wlo, &whi);
    for (int64_t ak = wlo; ak <= whi; ++ak) {
      a[k] = ak;
      double roots[10];
      if (!find_roots(k, prev, roots)) continue;
      if (roots[0] < A || roots[k - 1] > B) continue;
      if (k == d) emit_candidate();
      else recurse(k + 1, roots);
    }
    a[k] = 0;
  }

  // Runs the whole DFS for one fixed top coefficient a_1.
  void run_branch(int64_t a1) {
    a[1] = a1;
    double roots[10];
    if (!find_roots(1, nullptr, roots)) return;
    if (roots[0] < A || roots[0] > B) return;
    if (d == 1) emit_candidate();
    else recurse(2, roots);
  }

  std::pair<int64_t, int64_t> top_range() const {
    // a_1 * scale[1][1] is minus the mean of the roots.
    double s = scale[1][1];
    int64_t lo = static_cast<int64_t>(std::floor(-B / s)) - 1;
    int64_t hi = static_cast<int64_t>(std::ceil(-A / s)) + 1;
    return {lo, hi};
  }
};

std::vector<IntPolynomial> enumerate_degree(const FieldSize& q, int d,
                                            const std::vector<std::vector<IntPolynomial>>& lower,
                                            bool parallel) {
  CascadeEnumerator proto(q, d, &lower);
  auto [lo, hi] = proto.top_range();
  std::vector<IntPolynomial> merged;
  if (parallel) {
    int n = static_cast<int>(hi - lo + 1);
    std::vector<std::vector<IntPolynomial>> parts(static_cast<size_t>(std::max(n, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      CascadeEnumerator e(q, d, &lower);
      e.run_branch(lo + i);
      parts[static_cast<size_t>(i)] = std::move(e.out);
    }
    for (auto& part : parts)
      for (auto& p : part) merged.push_back(std::move(p));
  } else {
    CascadeEnumerator e(q, d, &lower);
    for (int64_t a1 = lo; a1 <= hi; ++a1) e.run_branch(a1);
    merged = std::move(e.out);
  }
  std::sort(merged.begin(), merged.end());
  return merged;
}

OrbitSet enumerate_impl(const FieldSize& q, int max_degree, bool parallel) {
  if (max_degree < 1 || max_degree > kMaxEnumerationDegree)
    throw std::invalid_argument("enumerate_orbits: max_degree must be in 1.." +
                                std::to_string(kMaxEnumerationDegree));
  std::vector<std::vector<IntPolynomial>> by_degree(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d)
    by_degree[d] = enumerate_degree(q, d, by_degree, parallel);

  OrbitSet set;
  set.q = q;
  set.max_degree = max_degree;
  for (int d = 1; d <= max_degree; ++d)
    for (IntPolynomial& p : by_degree[d])
      set.orbits.push_back(make_orbit_unchecked(std::move(p), q));
  // Sort by (degree, normalized norm, coefficients).
  std::sort(set.orbits.begin(), set.orbits.end(), [](const RealOrbit& x, const RealOrbit& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    int c = compare_normalized_norm(x, y);
    if (c != 0) return c < 0;
    return x.minimal_polynomial < y.minimal_polynomial;
  });
  return set;
}

}  // namespace

OrbitSet enumerate_orbits(const FieldSize& q, int max_degree) {
  return enumerate_impl(q, max_degree, true);
}

OrbitSet enumerate_orbits_serial(const FieldSize& q, int max_degree) {
  return enumerate_impl(q, max_degree, false);
}

std::vector<RealOrbit> extremal_orbits(const OrbitSet& set, Side side, int count) {
  if (set.orbits.empty()) throw std::invalid_argument("extremal_orbits: empty orbit set");
  std::vector<RealOrbit> sorted = set.orbits;
  std::sort(sorted.begin(), sorted.end(), [side](const RealOrbit& x, const RealOrbit& y) {
    int c = compare_normalized_norm(x, y);
    if (c != 0) return side == Side::Lower ? c < 0 : c > 0;
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.minimal_polynomial < y.minimal_polynomial;
  });
  if (count < static_cast<int>(sorted.size())) sorted.resize(static_cast<size_t>(count));
  return sorted;
}

void save_cache(const OrbitSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_cache: cannot open " + path);
  out << "avbounds-orbits v1 q=" << set.q.q << " maxdeg=" << set.max_degree
      << " count=" << set.orbits.size() << "\n";
  for (const RealOrbit& o : set.orbits) out << orbit_line(o) << "\n";
  if (!out) throw std::runtime_error("save_cache: write failure on " + path);
}

OrbitSet load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_cache: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("load_cache: empty file " + path);
  unsigned long qv = 0;
  int maxdeg = 0;
  size_t count = 0;
  {
    std::istringstream hs(header);
    std::string magic, version, kv;
    hs >> magic >> version;
    if (magic != "avbounds-orbits" || version != "v1")
      throw std::runtime_error("load_cache: bad header at line 1: " + header);
    while (hs >> kv) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("load_cache: bad header field at line 1: " + kv);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "q") qv = std::stoul(val);
      else if (key == "maxdeg") maxdeg = std::stoi(val);
      else if (key == "count") count = std::stoul(val);
      else throw std::runtime_error("load_cache: unknown header key at line 1: " + key);
    }
  }
  OrbitSet set;
  set.q = FieldSize(qv);
  set.max_degree = maxdeg;
  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    RealOrbit o = [&] {
      try {
        return parse_orbit_line(line);
      } catch (const std::exception& e) {
        throw std::runtime_error("load_cache: parse error at line " + std::to_string(lineno) +
                                 ": " + e.what());
      }
    }();
    if (!(o.q == set.q))
      throw std::runtime_error("load_cache: q mismatch at line " + std::to_string(lineno));
    set.orbits.push_back(std::move(o));
  }
  if (set.orbits.size() != count)
    throw std::runtime_error("load_cache: header count " + std::to_string(count) +
                             " does not match body count " + std::to_string(set.orbits.size()));
  return set;
}

}  // namespace avbounds
