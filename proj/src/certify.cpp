#include "avbounds/certify.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace avbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Objective enclosures.  Everything happens in the log domain:
//   upper side:  log g(x) = log x + sum_j beta_j  * log|Q_j(x)|
//   lower side:  log f(x) = log x - sum_i gamma_i * log|P_i(x)|
// so a cell straddling a root of some system polynomial gets an enclosure
// reaching -inf (upper) or +inf (lower) on the non-constraining side and is
// pruned as soon as a better point value is known.
// ---------------------------------------------------------------------------
struct Prepared {
  std::vector<std::vector<DInterval>> coeffs;
  std::vector<std::vector<DInterval>> dcoeffs;  // derivative coefficients
  std::vector<DInterval> weights;
  bool upper = false;
};

Prepared prepare(const AuxiliarySystem& sys) {
  if (sys.polynomials.size() != sys.exponents.size())
    throw std::invalid_argument("certify: polynomial and exponent counts differ");
  Prepared prep;
  prep.upper = sys.side == Side::Upper;
  for (const IntPolynomial& p : sys.polynomials) {
    if (p.is_zero() || !p.is_monic() || p.degree() < 1)
      throw std::invalid_argument("certify: system polynomials must be monic and nonconstant");
    prep.coeffs.push_back(di_coefficients(p));
    prep.dcoeffs.push_back(di_coefficients(p.derivative()));
  }
  for (const Rat& g : sys.exponents) {
    if (sign_of(g) <= 0)
      throw std::invalid_argument("certify: exponents must be positive");
    prep.weights.push_back(di_from_rat(g));
  }
  return prep;
}

// Enclosure of log f over [a, b]: the straight Horner-in-log form,
// intersected (for nondegenerate cells) with the centered form
//   L(mid) + L'([a,b]) * ([a,b] - mid),   L'(x) = 1/x +- sum w_j P_j'/P_j,
// whose width shrinks quadratically near critical points -- exactly where the
// plain form stalls.  Cells straddling a root of some P_j get an unbounded
// derivative enclosure there, and the intersection falls back to the plain
// form automatically.
DInterval log_objective(const Prepared& prep, double a, double b) {
  DInterval x{a, b};
  DInterval acc = di_log(x);
  const bool centered = a < b;
  DInterval dacc = centered ? di_inv(x) : DInterval{};
  for (std::size_t j = 0; j < prep.coeffs.size(); ++j) {
    const DInterval pv = di_eval(prep.coeffs[j], x);
    const DInterval term = di_mul(prep.weights[j], di_log(di_abs(pv)));
    acc = prep.upper ? di_add(acc, term) : di_sub(acc, term);
    if (centered) {
      const DInterval ratio = di_div(di_eval(prep.dcoeffs[j], x), pv);
      const DInterval dterm = di_mul(prep.weights[j], ratio);
      dacc = prep.upper ? di_add(dacc, dterm) : di_sub(dacc, dterm);
    }
  }
  if (!centered) return acc;
  const double mid = 0.5 * (a + b);
  const DInterval at_mid = log_objective(prep, mid, mid);
  const DInterval slope = di_mul(dacc, di_sub(x, di_point(mid)));
  return di_intersect(acc, di_add(at_mid, slope));
}

struct Cell {
  double lo = 0.0;
  double hi = 0.0;
  int depth = 0;
};

// Wave-based branch and bound.  Each wave evaluates every active cell (this
// is the parallel part; results land in per-cell slots, so the reduction
// order and therefore the outcome are identical with and without threads),
// folds the point samples into the incumbent, prunes, and splits.  The
// reported bound is the running extreme of the per-wave sound bounds, which
// makes "tighter tolerance never loosens the result" hold exactly.
WindowBound run_search(const Prepared& prep, double tolerance, double window_lo,
                       double window_hi, bool parallel) {
  const bool upper = prep.upper;
  auto fold = [upper](double a, double b) { return upper ? std::max(a, b) : std::min(a, b); };
  auto point_bound = [&prep, upper](double x) {
    DInterval e = log_objective(prep, x, x);
    return upper ? e.lo : e.hi;  // guaranteed beaten-or-attained by the true value
  };

  double best = upper ? -kInf : kInf;  // certified-achievable point level (log)
  // Warm start: endpoints plus a coarse scan, so the first waves already
  // prune against a realistic incumbent.
  for (int k = 0; k <= 64; ++k)
    best = fold(best, point_bound(window_lo + (window_hi - window_lo) * (k / 64.0)));
  double stuck = upper ? -kInf : kInf;  // retired cells, kept in the frontier forever
  double certified_log = upper ? kInf : -kInf;

  // Retirement margin: a cell whose enclosure cannot beat the incumbent by
  // more than this (log-domain) amount moves into `stuck`; the sizing keeps
  // the retired mass within 0.9*tolerance of the incumbent in the linear
  // domain, so retirement preserves both soundness and termination.
  auto retire_margin = [&]() {
    if (!std::isfinite(best)) return 0.0;
    const double scale = upper ? exp_down(best) : exp_up(best);
    if (!(scale > 0) || !std::isfinite(scale)) return 0.0;
    const double r = std::min(tolerance / scale, 0.5);
    return 0.9 * (upper ? std::log1p(r) : -std::log1p(-r));
  };

  std::vector<Cell> active{{window_lo, window_hi, 0}};
  std::vector<DInterval> enc;
  std::vector<std::size_t> live;
  std::vector<double> sample;
  int max_depth = 0;

  for (;;) {
    const std::int64_t n = static_cast<std::int64_t>(active.size());
    enc.assign(active.size(), DInterval{});
#pragma omp parallel for schedule(static) if (parallel && n > 64)
    for (std::int64_t i = 0; i < n; ++i) {
      const Cell& cell = active[static_cast<std::size_t>(i)];
      enc[static_cast<std::size_t>(i)] = log_objective(prep, cell.lo, cell.hi);
    }

    // First prune pass against the incumbent from the previous wave; only
    // the survivors are worth sampling.
    double margin = retire_margin();
    live.clear();
    for (std::size_t i = 0; i < active.size(); ++i) {
      const DInterval& e = enc[i];
      if (upper ? e.hi <= best + margin : e.lo >= best - margin)
        stuck = upper ? std::max(stuck, e.hi) : std::min(stuck, e.lo);
      else
        live.push_back(i);
    }

    const std::int64_t m = static_cast<std::int64_t>(live.size());
    sample.assign(live.size(), 0.0);
#pragma omp parallel for schedule(static) if (parallel && m > 64)
    for (std::int64_t j = 0; j < m; ++j) {
      const Cell& cell = active[live[static_cast<std::size_t>(j)]];
      sample[static_cast<std::size_t>(j)] = point_bound(0.5 * (cell.lo + cell.hi));
    }
    for (std::int64_t j = 0; j < m; ++j) best = fold(best, sample[static_cast<std::size_t>(j)]);

    double frontier = upper ? -kInf : kInf;
    for (std::size_t i : live)
      frontier = upper ? std::max(frontier, enc[i].hi) : std::min(frontier, enc[i].lo);
    const double wave_bound = fold(fold(frontier, stuck), best);
    certified_log = upper ? std::min(certified_log, wave_bound) : std::max(certified_log, wave_bound);

    const double certified = upper ? exp_up(certified_log) : exp_down(certified_log);
    const double witness = upper ? exp_down(best) : exp_up(best);
    const double gap = upper ? certified - witness : witness - certified;
    if (gap <= tolerance || live.empty()) return {certified, witness, max_depth};

    // Second prune pass with the incumbent updated by this wave's samples,
    // then split what remains.
    margin = retire_margin();
    std::vector<Cell> next;
    next.reserve(live.size() * 2);
    for (std::size_t i : live) {
      const Cell& cell = active[i];
      const DInterval& e = enc[i];
      if (upper ? e.hi <= best + margin : e.lo >= best - margin) {
        stuck = upper ? std::max(stuck, e.hi) : std::min(stuck, e.lo);
        continue;
      }
      const double mid = 0.5 * (cell.lo + cell.hi);
      if (!(mid > cell.lo && mid < cell.hi)) {  // at double resolution
        stuck = upper ? std::max(stuck, e.hi) : std::min(stuck, e.lo);
        continue;
      }
      next.push_back({cell.lo, mid, cell.depth + 1});
      next.push_back({mid, cell.hi, cell.depth + 1});
      max_depth = std::max(max_depth, cell.depth + 1);
    }
    active.swap(next);
    if (active.size() > (std::size_t{8} << 20))
      throw std::runtime_error("certify: subdivision exploded; loosen the tolerance");
  }
}

// ---------------------------------------------------------------------------
// Exception tagging.
// ---------------------------------------------------------------------------
Rat rat_power(const Rat& base, int e) {
  Rat acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

ExceptionRecord tag_orbit(RealOrbit orbit, const Rat& bound, Side side) {
  ExceptionRecord rec;
  rec.normalized_norm = format_decimal(orbit.normalized_norm(), 6, RoundDir::Nearest);
  const Rat norm_q(orbit.norm());
  const Rat bound_pow = rat_power(bound, orbit.degree());
  rec.violates = side == Side::Upper ? norm_q > bound_pow : norm_q < bound_pow;
  rec.orbit = std::move(orbit);
  return rec;
}

std::string trim_decimal(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.push_back('0');
  return s;
}

std::string format_tolerance(double tol) {
  return trim_decimal(format_decimal(tol, 12, RoundDir::Nearest));
}

BoundCertificate certify_impl(const AuxiliarySystem& sys, double tolerance, bool parallel) {
  if (!(tolerance >= 1e-8))
    throw std::invalid_argument("certify: tolerance must be at least 1e-8");
  Prepared prep = prepare(sys);
  const double wlo = weil_lo_double(sys.q);
  const double whi = weil_hi_double(sys.q);
  WindowBound wb = run_search(prep, tolerance, wlo, whi, parallel);

  BoundCertificate cert;
  cert.system = sys;
  cert.witness = wb.witness;
  cert.subdivision_depth = wb.depth;
  cert.tolerance = format_tolerance(tolerance);
  const RoundDir safety = sys.side == Side::Upper ? RoundDir::Up : RoundDir::Down;
  cert.certified_bound = format_decimal(Rat(wb.value), 6, safety);

  const Rat bound = parse_decimal(cert.certified_bound);
  for (const IntPolynomial& p : sys.polynomials) {
    if (is_member(p, sys.q)) {
      cert.exceptions.push_back(tag_orbit(make_orbit_unchecked(p, sys.q), bound, sys.side));
    } else {
      cert.warnings.push_back("auxiliary polynomial " + p.to_string() +
                              " is not a member for q = " + std::to_string(sys.q.q) +
                              "; it contributes no exceptions");
    }
  }
  return cert;
}

Int json_int(const nlohmann::ordered_json& v) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) return Int(v.get<std::string>(), 10);
  throw std::invalid_argument("certificate_from_json: coefficient must be an integer or a string");
}

nlohmann::ordered_json coeff_json(const Int& v) {
  static const Int kLimit = Int(1) << 53;
  if (cmp(abs(v), kLimit) < 0) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

nlohmann::ordered_json poly_json(const IntPolynomial& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Int& ci : p.c) arr.push_back(coeff_json(ci));
  return arr;
}

IntPolynomial poly_from_json(const nlohmann::ordered_json& arr) {
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument("certificate_from_json: polynomial must be a nonempty array");
  std::vector<Int> c;
  for (const auto& v : arr) c.push_back(json_int(v));
  return IntPolynomial(std::move(c));
}

Side side_from_string(const std::string& s) {
  if (s == "lower") return Side::Lower;
  if (s == "upper") return Side::Upper;
  throw std::invalid_argument("certificate_from_json: side must be \"lower\" or \"upper\"");
}

}  // namespace

AuxiliarySystem make_system(const FieldSize& q, Side side,
                            std::vector<IntPolynomial> polynomials,
                            const std::vector<std::string>& decimal_exponents) {
  if (polynomials.size() != decimal_exponents.size())
    throw std::invalid_argument("make_system: polynomial and exponent counts differ");
  AuxiliarySystem sys;
  sys.q = q;
  sys.side = side;
  sys.polynomials = std::move(polynomials);
  for (const std::string& text : decimal_exponents) {
    Rat g = parse_decimal(text);
    if (sign_of(g) <= 0) throw std::invalid_argument("make_system: exponents must be positive");
    sys.exponents.push_back(std::move(g));
  }
  return sys;
}

double BoundCertificate::value() const { return std::stod(certified_bound); }

BoundCertificate certify(const AuxiliarySystem& system, double tolerance) {
  return certify_impl(system, tolerance, true);
}

BoundCertificate certify_serial(const AuxiliarySystem& system, double tolerance) {
  return certify_impl(system, tolerance, false);
}

WindowBound certify_window(const AuxiliarySystem& system, double tolerance,
                           double window_lo, double window_hi, bool parallel) {
  if (!(tolerance > 0)) throw std::invalid_argument("certify_window: tolerance must be positive");
  if (!(window_lo > 0) || !(window_lo < window_hi) || !std::isfinite(window_hi))
    throw std::invalid_argument("certify_window: need 0 < window_lo < window_hi < inf");
  Prepared prep = prepare(system);
  return run_search(prep, tolerance, window_lo, window_hi, parallel);
}

std::vector<ExceptionRecord> exception_set(const AuxiliarySystem& system, const OrbitSet& pool) {
  if (!(pool.q == system.q))
    throw std::invalid_argument("exception_set: pool was enumerated for a different q");
  int need = 0;
  for (const IntPolynomial& p : system.polynomials) need = std::max(need, p.degree());
  if (pool.max_degree < need)
    throw std::invalid_argument("exception_set: pool does not cover the system's degrees");

  BoundCertificate cert = certify(system, 1e-6);
  const Rat bound = parse_decimal(cert.certified_bound);

  // The lemma is silent exactly on orbits rooted in some system polynomial,
  // i.e. pool orbits whose minimal polynomial divides one of them.
  std::vector<ExceptionRecord> out;
  for (const RealOrbit& orbit : pool.orbits) {
    bool rooted = false;
    for (const IntPolynomial& p : system.polynomials) {
      if (orbit.degree() <= p.degree() && divides_exactly(orbit.minimal_polynomial, p)) {
        rooted = true;
        break;
      }
    }
    if (rooted) out.push_back(tag_orbit(orbit, bound, system.side));
  }
  return out;
}

long easy_lower_n(const FieldSize& q) {
  const Int fourq = Int(4) * Int(q.q);
  const Int s = sqrt(fourq);  // floor
  const bool square = s * s == fourq;
  const Int n = square ? Int(Int(q.q) + 1 - s) : Int(Int(q.q) - s);
  return n.get_si();
}

long easy_upper_n(const FieldSize& q) {
  const Int fourq = Int(4) * Int(q.q);
  const Int s = sqrt(fourq);
  const bool square = s * s == fourq;
  const Int n = square ? Int(Int(q.q) + 1 + s) : Int(Int(q.q) + 2 + s);
  return n.get_si();
}

BoundCertificate bound_theorem_easy(const FieldSize& q, Side side) {
  AuxiliarySystem sys;
  sys.q = q;
  sys.side = side;
  if (side == Side::Lower) {
    const long n = easy_lower_n(q);
    if (n >= 1) {
      sys.polynomials.push_back(IntPolynomial::from_ints({-n, 1}));
      sys.exponents.emplace_back(Int(1), Int(n + 1));
    }
    BoundCertificate cert = certify(sys, 1e-6);
    if (parse_decimal(cert.certified_bound) < Rat(1)) {
      cert.certified_bound = "1.000000";
      cert.warnings.push_back(
          "point counts are positive integers; certified lower bound raised to 1");
    }
    return cert;
  }
  const long N = easy_upper_n(q);
  sys.polynomials.push_back(IntPolynomial::from_ints({-N, 1}));
  sys.exponents.emplace_back(Int(1), Int(N - 1));
  return certify(sys, 1e-6);
}

std::vector<std::pair<double, double>> isolate_interior_roots(const IntPolynomial& p,
                                                              const FieldSize& q, double eps) {
  if (p.is_zero()) throw std::invalid_argument("isolate_interior_roots: zero polynomial");
  if (!(eps > 0)) throw std::invalid_argument("isolate_interior_roots: eps must be positive");
  const IntPolynomial sf = squarefree_part(p);
  const std::vector<IntPolynomial> chain = sturm_chain_squarefree(sf);
  auto [wlo, whi] = weil_interval(q);
  // Roots in the half-open window (a, b].
  auto count_in = [&chain](const QuadraticNumber& a, const QuadraticNumber& b) {
    return sturm_sign_changes(chain, a) - sturm_sign_changes(chain, b);
  };

  struct Piece {
    QuadraticNumber a, b;
    int count = 0;
  };
  std::vector<Piece> work;
  std::vector<Piece> done;
  int total = count_in(wlo, whi);
  if (total > 0) work.push_back({wlo, whi, total});
  while (!work.empty()) {
    Piece piece = std::move(work.back());
    work.pop_back();
    if (piece.count == 0) continue;
    const double alo = piece.a.to_double();
    const double ahi = piece.b.to_double();
    if (piece.count == 1 && ahi - alo <= eps) {
      done.push_back(std::move(piece));
      continue;
    }
    const QuadraticNumber mid{Rat(0.5 * (alo + ahi))};
    if (!(piece.a < mid) || !(mid < piece.b))
      throw std::logic_error("isolate_interior_roots: bisection stalled below eps");
    const int left = count_in(piece.a, mid);
    work.push_back({piece.a, mid, left});
    work.push_back({mid, std::move(piece.b), piece.count - left});
  }

  // The half-open counts already exclude a root sitting at the left Weil
  // endpoint; drop the piece owning a root at the right endpoint.
  if (sign_at(sf, whi) == 0) {
    std::erase_if(done, [&whi](const Piece& piece) {
      return piece.a < whi && whi <= piece.b;
    });
  }

  std::vector<std::pair<double, double>> out;
  for (const Piece& piece : done)
    out.emplace_back(next_down(piece.a.to_double()), next_up(piece.b.to_double()));
  std::sort(out.begin(), out.end());
  return out;
}

double weil_lo_double(const FieldSize& q) {
  mpfr_t s, r;
  mpfr_init2(s, 53);
  mpfr_init2(r, 53);
  mpfr_sqrt_ui(s, q.q, MPFR_RNDU);
  mpfr_mul_ui(s, s, 2, MPFR_RNDU);
  mpfr_ui_sub(r, q.q + 1, s, MPFR_RNDD);
  double out = mpfr_get_d(r, MPFR_RNDD);
  mpfr_clear(s);
  mpfr_clear(r);
  return out;
}

double weil_hi_double(const FieldSize& q) {
  mpfr_t s, r;
  mpfr_init2(s, 53);
  mpfr_init2(r, 53);
  mpfr_sqrt_ui(s, q.q, MPFR_RNDU);
  mpfr_mul_ui(s, s, 2, MPFR_RNDU);
  mpfr_add_ui(r, s, q.q + 1, MPFR_RNDU);
  double out = mpfr_get_d(r, MPFR_RNDU);
  mpfr_clear(s);
  mpfr_clear(r);
  return out;
}

std::string certificate_to_json(const BoundCertificate& cert) {
  using nlohmann::ordered_json;
  const std::string side = cert.system.side == Side::Upper ? "upper" : "lower";
  ordered_json j;
  j["version"] = 1;
  j["q"] = cert.system.q.q;
  j["side"] = side;
  ordered_json polys = ordered_json::array();
  for (const IntPolynomial& p : cert.system.polynomials) polys.push_back(poly_json(p));
  j["polynomials"] = std::move(polys);
  ordered_json exps = ordered_json::array();
  for (const Rat& g : cert.system.exponents) exps.push_back(rational_string(g));
  j["exponents"] = std::move(exps);
  j["certified_bound"] = cert.certified_bound;
  j["direction"] = side;
  j["tolerance"] = cert.tolerance;
  j["subdivision_depth"] = cert.subdivision_depth;
  ordered_json excs = ordered_json::array();
  for (const ExceptionRecord& rec : cert.exceptions) {
    ordered_json e;
    e["poly"] = poly_json(rec.orbit.minimal_polynomial);
    e["normalized_norm"] = rec.normalized_norm;
    e["violates"] = rec.violates;
    excs.push_back(std::move(e));
  }
  j["exceptions"] = std::move(excs);
  j["warnings"] = cert.warnings;
  return j.dump(1);
}

BoundCertificate certificate_from_json(const std::string& text) {
  using nlohmann::ordered_json;
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate_from_json: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1)
      throw std::invalid_argument("certificate_from_json: unsupported version");
    BoundCertificate cert;
    cert.system.q = FieldSize(j.at("q").get<unsigned long>());
    cert.system.side = side_from_string(j.at("side").get<std::string>());
    if (side_from_string(j.at("direction").get<std::string>()) != cert.system.side)
      throw std::invalid_argument("certificate_from_json: side and direction disagree");
    for (const auto& arr : j.at("polynomials"))
      cert.system.polynomials.push_back(poly_from_json(arr));
    for (const auto& s : j.at("exponents"))
      cert.system.exponents.push_back(parse_rational_string(s.get<std::string>()));
    cert.certified_bound = j.at("certified_bound").get<std::string>();
    cert.tolerance = j.at("tolerance").get<std::string>();
    cert.subdivision_depth = j.at("subdivision_depth").get<int>();
    for (const auto& e : j.at("exceptions")) {
      ExceptionRecord rec;
      rec.orbit = make_orbit(poly_from_json(e.at("poly")), cert.system.q);
      rec.normalized_norm = e.at("normalized_norm").get<std::string>();
      rec.violates = e.at("violates").get<bool>();
      cert.exceptions.push_back(std::move(rec));
    }
    for (const auto& w : j.at("warnings")) cert.warnings.push_back(w.get<std::string>());
    cert.witness = cert.value();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate_from_json: ") + e.what());
  }
}

}  // namespace avbounds
