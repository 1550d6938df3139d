#include "avbounds/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace avbounds {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double next_down(double v) {
  if (v == -kInf) return v;
  return std::nextafter(v, -kInf);
}

double next_up(double v) {
  if (v == kInf) return v;
  return std::nextafter(v, kInf);
}

// One nextafter step past the rounded result brackets the exact value: the
// rounded sum/product is within half an ulp of the true one.
static double add_down(double x, double y) {
  if (x == -kInf || y == -kInf) return -kInf;
  return next_down(x + y);
}

static double add_up(double x, double y) {
  if (x == kInf || y == kInf) return kInf;
  return next_up(x + y);
}

DInterval di_add(const DInterval& a, const DInterval& b) {
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

DInterval di_sub(const DInterval& a, const DInterval& b) {
  return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)};
}

DInterval di_neg(const DInterval& a) { return {-a.hi, -a.lo}; }

static double mul_one(double x, double y) {
  // 0 * inf arises only from padding combinations we never produce, but be
  // safe: treat it as 0 (the exact product of a zero endpoint).
  if ((x == 0.0 && (y == kInf || y == -kInf)) || (y == 0.0 && (x == kInf || x == -kInf)))
    return 0.0;
  return x * y;
}

DInterval di_mul(const DInterval& a, const DInterval& b) {
  double p1 = mul_one(a.lo, b.lo);
  double p2 = mul_one(a.lo, b.hi);
  double p3 = mul_one(a.hi, b.lo);
  double p4 = mul_one(a.hi, b.hi);
  double lo = std::min(std::min(p1, p2), std::min(p3, p4));
  double hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {next_down(lo), next_up(hi)};
}

DInterval di_abs(const DInterval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return {-a.hi, -a.lo};
  return {0.0, std::max(-a.lo, a.hi)};
}

DInterval di_inv(const DInterval& a) {
  if (a.lo <= 0.0 && a.hi >= 0.0) return {-kInf, kInf};
  // Both endpoints share a sign; 1/x is decreasing on either half-line.
  return {next_down(1.0 / a.hi), next_up(1.0 / a.lo)};
}

DInterval di_div(const DInterval& a, const DInterval& b) { return di_mul(a, di_inv(b)); }

DInterval di_intersect(const DInterval& a, const DInterval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

DInterval di_from_int(const Int& v) {
  double t = mpz_get_d(v.get_mpz_t());  // truncated toward zero
  if (mpz_cmp_d(v.get_mpz_t(), t) == 0) return {t, t};
  return {next_down(t), next_up(t)};
}

double rat_to_double_down(const Rat& v) {
  mpfr_t m;
  mpfr_init2(m, 53);
  mpfr_set_q(m, v.get_mpq_t(), MPFR_RNDD);
  double out = mpfr_get_d(m, MPFR_RNDD);
  mpfr_clear(m);
  return out;
}

double rat_to_double_up(const Rat& v) {
  mpfr_t m;
  mpfr_init2(m, 53);
  mpfr_set_q(m, v.get_mpq_t(), MPFR_RNDU);
  double out = mpfr_get_d(m, MPFR_RNDU);
  mpfr_clear(m);
  return out;
}

DInterval di_from_rat(const Rat& v) { return {rat_to_double_down(v), rat_to_double_up(v)}; }

// Scratch register per thread: mpfr_init2/mpfr_clear on every call would
// dominate the branch-and-bound inner loop.
namespace {
struct ScratchMpfr {
  mpfr_t m;
  ScratchMpfr() { mpfr_init2(m, 53); }
  ~ScratchMpfr() { mpfr_clear(m); }
  ScratchMpfr(const ScratchMpfr&) = delete;
  ScratchMpfr& operator=(const ScratchMpfr&) = delete;
};
}  // namespace

static double log_dir(double v, mpfr_rnd_t rnd) {
  thread_local ScratchMpfr s;
  mpfr_set_d(s.m, v, MPFR_RNDN);  // exact: v is a double
  mpfr_log(s.m, s.m, rnd);
  return mpfr_get_d(s.m, rnd);
}

double log_down(double v) { return log_dir(v, MPFR_RNDD); }
double log_up(double v) { return log_dir(v, MPFR_RNDU); }

static double exp_dir(double v, mpfr_rnd_t rnd) {
  if (v == -kInf) return 0.0;
  if (v == kInf) return kInf;
  thread_local ScratchMpfr s;
  mpfr_set_d(s.m, v, MPFR_RNDN);
  mpfr_exp(s.m, s.m, rnd);
  return mpfr_get_d(s.m, rnd);
}

double exp_down(double v) { return exp_dir(v, MPFR_RNDD); }
double exp_up(double v) { return exp_dir(v, MPFR_RNDU); }

DInterval di_log(const DInterval& x) {
  double lo = x.lo > 0.0 ? log_down(x.lo) : -kInf;
  double hi = x.hi > 0.0 ? log_up(x.hi) : -kInf;
  return {lo, hi};
}

std::vector<DInterval> di_coefficients(const IntPolynomial& p) {
  std::vector<DInterval> out(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) out[i] = di_from_int(p.c[i]);
  return out;
}

DInterval di_eval(const std::vector<DInterval>& coeffs, const DInterval& x) {
  DInterval acc{0.0, 0.0};
  for (size_t i = coeffs.size(); i-- > 0;) acc = di_add(di_mul(acc, x), coeffs[i]);
  return acc;
}

DInterval di_eval(const IntPolynomial& p, const DInterval& x) {
  return di_eval(di_coefficients(p), x);
}

}  // namespace avbounds
