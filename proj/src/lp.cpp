#include "avbounds/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace avbounds {

namespace {

// All real roots of p in the integer-padded window around [wlo, whi],
// appended to `out` as doubles.  Exact dyadic Sturm bisection; brackets are
// narrowed to width 1e-9, far below any use the exclusion radius puts them
// to.
void append_real_roots(const IntPolynomial& p, double wlo, double whi,
                       std::vector<double>& out) {
  if (p.degree() < 1) return;
  const auto chain = sturm_chain(p);
  const auto changes = [&chain](const Rat& x) {
    return sturm_sign_changes(chain, QuadraticNumber(x));
  };

  struct Segment {
    Rat a, b;
    int va, vb;
  };
  Rat lo(static_cast<long>(std::floor(wlo)) - 1);
  Rat hi(static_cast<long>(std::ceil(whi)) + 1);
  std::vector<Segment> work;
  work.push_back({lo, hi, changes(lo), changes(hi)});
  while (!work.empty()) {
    Segment s = std::move(work.back());
    work.pop_back();
    const int nroots = s.va - s.vb;  // distinct roots in (a, b]
    if (nroots <= 0) continue;
    const double width = Rat(s.b - s.a).get_d();
    if (nroots == 1 && width <= 1e-9) {
      out.push_back(Rat((s.a + s.b) / 2).get_d());
      continue;
    }
    const Rat mid((s.a + s.b) / 2);
    const int vm = changes(mid);
    work.push_back({s.a, mid, s.va, vm});
    work.push_back({mid, s.b, vm, s.vb});
  }
}

std::vector<double> guard_points(double A, double B) {
  const double span = B - A;
  std::vector<double> g;
  for (int j = 1; j <= 48; ++j) {
    const double off = span * std::ldexp(1.0, -j);
    for (double x : {A + off, B - off})
      if (x > A && x < B) g.push_back(x);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Dense two-phase simplex on the dual of the lower-type minimax program
//     max t  s.t.  t + sum_i gamma_i a[k][i] <= c[k],  gamma >= 0,
// namely
//     min c^T y  s.t.  sum_k y_k = 1,  sum_k y_k a[k][i] >= 0,  y >= 0.
// In equality form the constraint matrix has rows
//     row 0:  y-columns all 1, artificial z0;        rhs 1
//     row i:  y-column k carries -a[k][i-1], slack s_i;  rhs 0
// so the slack columns plus z0 form an identity starting basis.  Bland's
// rule throughout; the final (t, gamma) come from re-solving the multiplier
// system on the original basis columns, immune to tableau drift.
// ---------------------------------------------------------------------------

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kPhaseOneTol = 1e-7;
constexpr int kIterationCap = 200000;

struct DualTableau {
  int m = 0, n = 0;           // mesh points, candidates
  int cols = 0;               // y columns + slack columns + z0
  std::vector<double> body;   // (n+1) x (cols+1), last column is the rhs
  std::vector<double> cost;   // reduced-cost row, last entry -objective
  std::vector<int> basis;     // column index basic in each row
  int iterations = 0;

  double& at(int r, int c) { return body[static_cast<size_t>(r) * (cols + 1) + c]; }

  void pivot(int prow, int pcol) {
    const int rows = n + 1;
    const double pv = at(prow, pcol);
    for (int c = 0; c <= cols; ++c) at(prow, c) /= pv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow) continue;
      const double f = at(r, pcol);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(prow, c);
      at(r, pcol) = 0.0;
    }
    const double f = cost[pcol];
    if (f != 0.0) {
      for (int c = 0; c <= cols; ++c) cost[c] -= f * at(prow, c);
      cost[pcol] = 0.0;
    }
    basis[prow] = pcol;
    ++iterations;
  }

  // Pivot loop; `allowed(col)` filters entering candidates.  Dantzig's rule
  // (most negative reduced cost) until the objective stalls on degenerate
  // pivots, then Bland's rule, which cannot cycle.  Returns false when an
  // entering column has no positive row entry (the dual is unbounded in
  // that direction).
  template <typename Allowed>
  bool iterate(const Allowed& allowed) {
    const int rows = n + 1;
    bool bland = false;
    int stalled = 0;
    for (;;) {
      int enter = -1;
      if (bland) {
        for (int c = 0; c < cols; ++c)
          if (allowed(c) && cost[c] < -kReducedCostTol) {
            enter = c;
            break;
          }
      } else {
        double most = -kReducedCostTol;
        for (int c = 0; c < cols; ++c)
          if (allowed(c) && cost[c] < most) {
            most = cost[c];
            enter = c;
          }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows; ++r) {
        const double coef = at(r, enter);
        if (coef <= kPivotTol) continue;
        const double ratio = at(r, cols) / coef;
        if (leave < 0 || ratio < best - 1e-12) {
          best = ratio;
          leave = r;
        } else if (ratio < best + 1e-12 && basis[r] < basis[leave]) {
          leave = r;  // minimum-ratio tie: Bland takes the lowest basic index
        }
      }
      if (leave < 0) return false;
      const double before = cost[cols];
      pivot(leave, enter);
      if (!bland) {
        stalled = (cost[cols] > before + 1e-12) ? 0 : stalled + 1;
        if (stalled > 500) bland = true;
      }
      if (iterations > kIterationCap)
        throw std::runtime_error(
            "simplex iteration cap exceeded (m=" + std::to_string(m) +
            ", n=" + std::to_string(n) + ", pivots=" + std::to_string(iterations) + ")");
    }
  }
};

// Gaussian elimination with partial pivoting for the (n+1)x(n+1) multiplier
// system; `aug` rows carry the matrix and the right-hand side.
std::vector<double> gauss_solve(std::vector<std::vector<double>> aug) {
  const int n = static_cast<int>(aug.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    std::swap(aug[col], aug[piv]);
    if (std::abs(aug[col][col]) < 1e-13)
      throw std::runtime_error("singular basis in multiplier recovery");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = aug[r][col] / aug[col][col];
      if (f == 0.0) continue;
      for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  std::vector<double> x(n);
  for (int r = 0; r < n; ++r) x[r] = aug[r][n] / aug[r][r];
  return x;
}

// Lower-type core; `c` and `a` as in solve_minimax.
LPSolution solve_lower(const std::vector<double>& c,
                       const std::vector<std::vector<double>>& a,
                       std::ostream* debug) {
  const int m = static_cast<int>(c.size());
  const int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
  const int rows = n + 1;
  const int zcol = m + n;  // artificial column index

  DualTableau t;
  t.m = m;
  t.n = n;
  t.cols = m + n + 1;
  t.body.assign(static_cast<size_t>(rows) * (t.cols + 1), 0.0);
  t.basis.resize(rows);
  for (int k = 0; k < m; ++k) {
    t.at(0, k) = 1.0;
    for (int i = 0; i < n; ++i) t.at(i + 1, k) = -a[k][i];
  }
  for (int i = 0; i < n; ++i) t.at(i + 1, m + i) = 1.0;
  t.at(0, zcol) = 1.0;
  t.at(0, t.cols) = 1.0;  // rhs
  t.basis[0] = zcol;
  for (int i = 0; i < n; ++i) t.basis[i + 1] = m + i;

  // Phase I: minimize z0.  With the identity basis the reduced costs are
  // phase-cost minus row 0.
  t.cost.assign(t.cols + 1, 0.0);
  for (int k = 0; k < m; ++k) t.cost[k] = -1.0;
  t.cost[t.cols] = -1.0;  // stores -objective; the artificial starts at 1
  if (!t.iterate([](int) { return true; }))
    throw std::runtime_error("phase I ratio test failed on a bounded program");
  const int phase1 = t.iterations;
  const double infeas = -t.cost[t.cols];
  if (infeas > kPhaseOneTol) {
    if (debug)
      *debug << "simplex: phase I stuck at " << infeas
             << " -> primal unbounded\n";
    LPSolution sol;
    sol.exponents.assign(n, 0.0);
    sol.objective = std::numeric_limits<double>::infinity();
    sol.status = LPStatus::Unbounded;
    sol.iterations = t.iterations;
    return sol;
  }

  // Drive the artificial variable out of the basis if it lingers at zero.
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] != zcol) continue;
    int swap_col = -1;
    double best = 0.0;
    for (int c = 0; c < zcol; ++c)
      if (std::abs(t.at(r, c)) > std::max(best, 1e-9)) {
        best = std::abs(t.at(r, c));
        swap_col = c;
      }
    if (swap_col < 0)
      throw std::runtime_error("artificial variable stuck in basis");
    t.pivot(r, swap_col);
  }

  // Phase II: original costs, artificial barred from entering.  Reduced
  // costs are rebuilt from scratch against the current basis.
  t.cost.assign(t.cols + 1, 0.0);
  for (int col = 0; col < t.cols; ++col) {
    double orig = (col < m) ? c[col] : 0.0;
    double dot = 0.0;
    for (int r = 0; r < rows; ++r) {
      const int b = t.basis[r];
      const double cb = (b < m) ? c[b] : 0.0;
      if (cb != 0.0) dot += cb * t.at(r, col);
    }
    t.cost[col] = orig - dot;
  }
  {
    double obj = 0.0;
    for (int r = 0; r < rows; ++r) {
      const int b = t.basis[r];
      if (b < m) obj += c[b] * t.at(r, t.cols);
    }
    t.cost[t.cols] = -obj;
  }
  if (!t.iterate([zcol](int col) { return col != zcol; })) {
    // Dual unbounded below would mean the (always feasible) primal is
    // infeasible; unreachable in theory, surfaced as a status for safety.
    LPSolution sol;
    sol.exponents.assign(n, 0.0);
    sol.status = LPStatus::Infeasible;
    sol.iterations = t.iterations;
    return sol;
  }

  // Multiplier recovery on the original basis columns: B^T pi = c_B, then
  // t = pi_0 and gamma_i = -pi_{i+1} (clipped at zero).
  std::vector<std::vector<double>> aug(rows, std::vector<double>(rows + 1, 0.0));
  for (int r = 0; r < rows; ++r) {
    const int b = t.basis[r];
    if (b < m) {
      aug[r][0] = 1.0;
      for (int i = 0; i < n; ++i) aug[r][i + 1] = -a[b][i];
      aug[r][rows] = c[b];
    } else if (b < zcol) {
      aug[r][b - m + 1] = 1.0;
      aug[r][rows] = 0.0;
    } else {
      aug[r][0] = 1.0;
      aug[r][rows] = 0.0;
    }
  }
  const std::vector<double> pi = gauss_solve(std::move(aug));

  LPSolution sol;
  sol.objective = pi[0];
  sol.exponents.resize(n);
  for (int i = 0; i < n; ++i) sol.exponents[i] = std::max(0.0, -pi[i + 1]);
  sol.status = LPStatus::Optimal;
  sol.iterations = t.iterations;

  if (debug) {
    *debug << "simplex: m=" << m << " n=" << n << " phase1 iterations=" << phase1
           << " phase2 iterations=" << (t.iterations - phase1)
           << " objective=" << sol.objective << "\nbasis:";
    for (int r = 0; r < rows; ++r) *debug << ' ' << t.basis[r];
    *debug << "\nmultipliers:";
    for (double v : pi) *debug << ' ' << v;
    *debug << '\n';
  }
  return sol;
}

std::string format_exponent(long ten_thousandths) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(ten_thousandths) / 1e4);
  return buf;
}

BoundCertificate run_pipeline(const FieldSize& q, Side side,
                              const std::vector<IntPolynomial>& candidates,
                              int mesh_size, double tolerance) {
  MeshLP lp = build_lp(q, side, candidates, mesh_size);

  // Value-floor guards: endpoint pins that skip the root-distance test, so
  // the LP still sees the endpoint when a candidate root crowds it.
  const double A = weil_lo_double(q), B = weil_hi_double(q);
  std::vector<double> mesh = lp.mesh;
  for (double g : guard_points(A, B)) {
    bool usable = true;
    for (const auto& p : candidates)
      if (std::abs(p.eval(g)) <= 1e-12) {
        usable = false;
        break;
      }
    if (usable) mesh.push_back(g);
  }
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

  MeshLP padded{q, side, candidates, std::move(mesh), 0.0};
  const LPSolution sol = solve(padded);
  if (sol.status != LPStatus::Optimal)
    throw std::runtime_error("optimize_and_certify: mesh LP is " +
                             std::string(sol.status == LPStatus::Unbounded
                                             ? "unbounded"
                                             : "infeasible"));

  std::vector<IntPolynomial> kept;
  std::vector<std::string> exponents;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const long r = std::llround(sol.exponents[i] * 1e4);
    if (r >= 1) {
      kept.push_back(candidates[i]);
      exponents.push_back(format_exponent(r));
    }
  }
  return certify(make_system(q, side, std::move(kept), exponents), tolerance);
}

}  // namespace

MeshLP build_lp(const FieldSize& q, Side side,
                const std::vector<IntPolynomial>& polynomials, int mesh_size) {
  if (mesh_size < 64)
    throw std::invalid_argument("build_lp: mesh_size must be at least 64");
  if (polynomials.empty())
    throw std::invalid_argument("build_lp: candidate list is empty");
  for (const auto& p : polynomials)
    if (p.degree() < 0)
      throw std::invalid_argument("build_lp: zero polynomial has no values");

  const double A = weil_lo_double(q), B = weil_hi_double(q);
  const double span = B - A;
  const double radius = 1e-3 * span;

  std::vector<double> roots;
  for (const auto& p : polynomials) append_real_roots(p, A, B, roots);
  std::sort(roots.begin(), roots.end());

  std::vector<double> mesh;
  mesh.reserve(mesh_size + 96);
  for (int k = 1; k <= mesh_size; ++k)
    mesh.push_back(A + span * k / (mesh_size + 1.0));
  for (double g : guard_points(A, B)) mesh.push_back(g);
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

  std::vector<double> kept;
  kept.reserve(mesh.size());
  for (double x : mesh) {
    auto it = std::lower_bound(roots.begin(), roots.end(), x);
    const bool clear = (it == roots.end() || *it - x > radius) &&
                       (it == roots.begin() || x - *(it - 1) > radius);
    if (clear) kept.push_back(x);
  }
  if (kept.empty())
    throw std::runtime_error(
        "build_lp: every mesh point lies within the exclusion radius of a root");

  return MeshLP{q, side, polynomials, std::move(kept), radius};
}

LPSolution solve_minimax(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a, Side side,
                         std::ostream* debug) {
  if (c.empty()) throw std::invalid_argument("solve_minimax: empty instance");
  if (a.size() != c.size())
    throw std::invalid_argument("solve_minimax: row count mismatch");
  const size_t n = a[0].size();
  for (const auto& row : a)
    if (row.size() != n)
      throw std::invalid_argument("solve_minimax: ragged coefficient rows");
  for (double v : c)
    if (!std::isfinite(v))
      throw std::invalid_argument("solve_minimax: non-finite objective sample");
  for (const auto& row : a)
    for (double v : row)
      if (!std::isfinite(v))
        throw std::invalid_argument("solve_minimax: non-finite coefficient");

  if (side == Side::Lower) return solve_lower(c, a, debug);

  // Upper side: min over gamma >= 0 of max_k (c_k + sum gamma a_ki) equals
  // the negated lower-type optimum with c replaced by -c.
  std::vector<double> neg(c.size());
  for (size_t k = 0; k < c.size(); ++k) neg[k] = -c[k];
  if (debug) *debug << "simplex: upper side via negated lower-type program\n";
  LPSolution sol = solve_lower(neg, a, debug);
  if (sol.status == LPStatus::Optimal) sol.objective = -sol.objective;
  return sol;
}

LPSolution solve(const MeshLP& lp, std::ostream* debug) {
  if (lp.mesh.empty()) throw std::invalid_argument("solve: empty mesh");
  const int m = static_cast<int>(lp.mesh.size());
  const int n = static_cast<int>(lp.polynomials.size());
  std::vector<double> c(m);
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m; ++k) {
    const double x = lp.mesh[k];
    c[k] = std::log(x);
    for (int i = 0; i < n; ++i)
      a[k][i] = std::log(std::abs(lp.polynomials[i].eval(x)));
  }
  for (int k = 0; k < m; ++k) {
    if (!std::isfinite(c[k]))
      throw std::invalid_argument("solve: mesh point outside (0, inf)");
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(a[k][i]))
        throw std::invalid_argument("solve: mesh point at a candidate root");
  }
  return solve_minimax(c, a, lp.side, debug);
}

double feasibility_margin(const MeshLP& lp, const LPSolution& solution) {
  if (solution.exponents.size() != lp.polynomials.size())
    throw std::invalid_argument("feasibility_margin: exponent count mismatch");
  double worst = std::numeric_limits<double>::infinity();
  for (double x : lp.mesh) {
    const Rat rx(x);
    double dot = 0.0;
    for (size_t i = 0; i < lp.polynomials.size(); ++i) {
      const Rat value = lp.polynomials[i].eval(rx);
      dot += solution.exponents[i] * std::log(std::abs(value.get_d()));
    }
    const double cx = std::log(x);
    const double margin = lp.side == Side::Lower
                              ? cx - dot - solution.objective
                              : solution.objective - cx - dot;
    worst = std::min(worst, margin);
  }
  return worst;
}

BoundCertificate optimize_and_certify(const FieldSize& q, Side side,
                                      const std::vector<IntPolynomial>& candidates,
                                      int mesh_size, double tolerance) {
  return run_pipeline(q, side, candidates, mesh_size, tolerance);
}

BoundCertificate optimize_and_certify(const FieldSize& q, Side side,
                                      const OrbitSet& pool, int pool_size,
                                      int mesh_size, double tolerance) {
  if (!(pool.q == q))
    throw std::invalid_argument("optimize_and_certify: pool enumerated for a different q");
  if (pool_size < 1)
    throw std::invalid_argument("optimize_and_certify: pool_size must be positive");
  std::vector<IntPolynomial> candidates;
  for (const auto& orbit : extremal_orbits(pool, side, pool_size))
    candidates.push_back(orbit.minimal_polynomial);
  return run_pipeline(q, side, candidates, mesh_size, tolerance);
}

}  // namespace avbounds
