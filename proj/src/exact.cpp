#include "avbounds/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <sstream>

namespace avbounds {

int sign_of(const Int& v) { return mpz_sgn(v.get_mpz_t()); }
int sign_of(const Rat& v) { return mpq_sgn(v.get_mpq_t()); }

// ---------------------------------------------------------------------------
// IntPolynomial
// ---------------------------------------------------------------------------

static void strip_trailing_zeros(std::vector<Int>& c) {
  while (!c.empty() && sign_of(c.back()) == 0) c.pop_back();
}

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c(std::move(coeffs)) {
  strip_trailing_zeros(c);
}

IntPolynomial IntPolynomial::from_ints(std::initializer_list<long> coeffs) {
  std::vector<Int> v;
  v.reserve(coeffs.size());
  for (long x : coeffs) v.emplace_back(x);
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
  std::vector<Int> v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    size_t first = item.find_first_not_of(" \t");
    size_t last = item.find_last_not_of(" \t");
    if (first == std::string::npos)
      throw std::invalid_argument("IntPolynomial::parse: empty coefficient");
    v.emplace_back(item.substr(first, last - first + 1), 10);
  }
  if (v.empty()) throw std::invalid_argument("IntPolynomial::parse: no coefficients");
  return IntPolynomial(std::move(v));
}

const Int& IntPolynomial::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return c.back();
}

bool IntPolynomial::is_monic() const { return !is_zero() && c.back() == 1; }

const Int& IntPolynomial::constant_term() const {
  static const Int zero(0);
  return is_zero() ? zero : c.front();
}

Int IntPolynomial::eval(const Int& x) const {
  Int r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double IntPolynomial::eval(double x) const {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + it->get_d();
  return r;
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() <= 0) return IntPolynomial();
  std::vector<Int> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = Int(static_cast<long>(i)) * c[i];
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::negate_variable() const {
  std::vector<Int> d = c;
  for (size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::compose_shift(const Int& s) const {
  // Horner: p(x+s) built term by term.
  IntPolynomial result;
  IntPolynomial shift = IntPolynomial({Int(s), Int(1)});
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    result = result * shift;
    result = result + IntPolynomial({*it});
  }
  return result;
}

Int IntPolynomial::content() const {
  Int g(0);
  for (const Int& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (sign_of(g) == 0) return Int(1);
  if (!is_zero() && sign_of(c.back()) < 0) g = -g;
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  std::vector<Int> d(c.size());
  for (size_t i = 0; i < c.size(); ++i) mpz_divexact(d[i].get_mpz_t(), c[i].get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(d));
}

bool IntPolynomial::operator<(const IntPolynomial& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  }
  return false;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = c[i];
    if (sign_of(a) == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (sign_of(a) < 0) out << "-";
      first = false;
    } else {
      out << (sign_of(a) < 0 ? " - " : " + ");
    }
    bool unit = (mag == 1);
    if (i == 0 || !unit) out << mag.get_str();
    if (i >= 1) {
      out << "x";
      if (i >= 2) out << "^" << i;
    }
  }
  return out.str();
}

std::string IntPolynomial::coeff_list() const {
  std::ostringstream out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out << ",";
    out << c[i].get_str();
  }
  return out.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return IntPolynomial(std::move(r));
}

IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
  std::vector<Int> r = a.c;
  for (Int& x : r) x *= s;
  return IntPolynomial(std::move(r));
}

// Rational long division helper: returns quotient of a / b over Q, with
// remainder written to *rem (coefficients ascending).
static std::vector<Rat> rat_divmod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                                   std::vector<Rat>* rem) {
  std::vector<Rat> r = a;
  while (!r.empty() && sign_of(r.back()) == 0) r.pop_back();
  std::vector<Rat> q;
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  size_t db = b.size() - 1;
  if (r.size() >= b.size()) q.assign(r.size() - db, Rat(0));
  while (r.size() >= b.size()) {
    Rat f = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    while (!r.empty() && sign_of(r.back()) == 0) r.pop_back();
  }
  if (rem) *rem = r;
  return q;
}

static std::vector<Rat> to_rat(const IntPolynomial& p) {
  std::vector<Rat> v;
  v.reserve(p.c.size());
  for (const Int& x : p.c) v.emplace_back(x);
  return v;
}

IntPolynomial exact_divide(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide: zero divisor");
  std::vector<Rat> rem;
  std::vector<Rat> q = rat_divmod(to_rat(a), to_rat(b), &rem);
  if (!rem.empty()) throw std::domain_error("exact_divide: nonzero remainder");
  std::vector<Int> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) throw std::domain_error("exact_divide: non-integer quotient");
    qi[i] = q[i].get_num();
  }
  return IntPolynomial(std::move(qi));
}

bool divides_exactly(const IntPolynomial& b, const IntPolynomial& a) {
  if (b.is_zero()) return a.is_zero();
  std::vector<Rat> rem;
  std::vector<Rat> q = rat_divmod(to_rat(a), to_rat(b), &rem);
  if (!rem.empty()) return false;
  for (const Rat& x : q)
    if (x.get_den() != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// QuadraticNumber
// ---------------------------------------------------------------------------

QuadraticNumber::QuadraticNumber(Rat a_, Rat b_, unsigned long radicand)
    : a(std::move(a_)), b(std::move(b_)), d(radicand) {
  if (d == 0) {
    b = 0;
    d = 1;
    return;
  }
  // Pull square factors out of the radicand.
  unsigned long square = 1;
  for (unsigned long f = 2; f * f <= d; ++f) {
    while (d % (f * f) == 0) {
      d /= f * f;
      square *= f;
    }
  }
  if (square != 1) b *= Rat(static_cast<long>(square));
  if (d == 1) {
    a += b;
    b = 0;
  }
  if (sign_of(b) == 0) d = 1;
}

Rat QuadraticNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("QuadraticNumber: irrational value");
  return a + b;  // if d collapsed to 1, b was folded already; b is 0 here
}

int QuadraticNumber::sign() const {
  int sa = sign_of(a), sb = sign_of(b);
  if (sb == 0 || d == 1) return sign_of(a + b);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 d.
  Rat lhs = a * a, rhs = b * b * Rat(static_cast<long>(d));
  int cmp = sign_of(lhs - rhs);
  if (cmp == 0) return 0;
  return cmp > 0 ? sa : sb;
}

double QuadraticNumber::to_double() const {
  double root = d == 1 ? 1.0 : std::sqrt(static_cast<double>(d));
  return a.get_d() + b.get_d() * root;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r;
  r.a = -a;
  r.b = -b;
  r.d = d;
  return r;
}

static unsigned long common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d == y.d) return x.d;
  if (x.d == 1) return y.d;
  if (y.d == 1) return x.d;
  throw std::domain_error("QuadraticNumber: mixed radicands");
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
  QuadraticNumber r;
  r.d = common_radicand(*this, o);
  r.a = a + o.a;
  r.b = b + o.b;
  if (sign_of(r.b) == 0) r.d = 1;
  return r;
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
  return *this + (-o);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
  QuadraticNumber r;
  r.d = common_radicand(*this, o);
  Rat dd(static_cast<long>(r.d));
  r.a = a * o.a + b * o.b * dd;
  r.b = a * o.b + b * o.a;
  if (sign_of(r.b) == 0) r.d = 1;
  return r;
}

QuadraticNumber eval_quadratic(const IntPolynomial& p, const QuadraticNumber& x) {
  QuadraticNumber r(Rat(0));
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    r = r * x;
    r = r + QuadraticNumber(Rat(*it));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

// Pseudo-remainder of a by b scaled by a positive constant (sign-faithful).
static IntPolynomial signed_pseudo_rem(const IntPolynomial& a, const IntPolynomial& b) {
  int da = a.degree(), db = b.degree();
  if (da < db) return a;
  Int lb = b.leading();
  int e = da - db + 1;
  Int mult;
  mpz_pow_ui(mult.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
  bool flip = sign_of(mult) < 0;
  std::vector<Int> r = a.c;
  for (Int& x : r) x *= mult;
  // Long division of r by b over Z (leading coefficient of b divides by
  // construction of the multiplier).
  for (int k = da; k >= db; --k) {
    if (sign_of(r[k]) == 0) continue;
    Int f;
    mpz_divexact(f.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
    for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.c[i];
  }
  r.resize(db > 0 ? db : 0);
  IntPolynomial rem{std::move(r)};
  if (flip) rem = Int(-1) * rem;
  return rem;
}

static IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  a = a.primitive_part();
  b = b.primitive_part();
  while (!b.is_zero()) {
    IntPolynomial r = signed_pseudo_rem(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && sign_of(a.leading()) < 0) a = Int(-1) * a;
  return a;
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
  if (p.degree() == 0) return p;
  IntPolynomial g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p.primitive_part();
  // Divide over Q, then rescale to a primitive integer polynomial.
  std::vector<Rat> rem;
  std::vector<Rat> q = rat_divmod(to_rat(p), to_rat(g), &rem);
  Int denlcm(1);
  for (const Rat& x : q) mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    Rat scaled = q[i] * Rat(denlcm);
    qi[i] = scaled.get_num();
  }
  return IntPolynomial(std::move(qi)).primitive_part();
}

// Divides out |content| only, keeping every sign intact (primitive_part
// would normalize the leading sign, which must not happen inside a Sturm
// chain).
static IntPolynomial scale_down_keep_sign(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Int c = abs(p.content());
  if (c == 1) return p;
  std::vector<Int> out(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i)
    mpz_divexact(out[i].get_mpz_t(), p.c[i].get_mpz_t(), c.get_mpz_t());
  return IntPolynomial{std::move(out)};
}

std::vector<IntPolynomial> sturm_chain_squarefree(IntPolynomial squarefree_p) {
  std::vector<IntPolynomial> chain{std::move(squarefree_p)};
  if (chain.front().degree() >= 1) {
    chain.push_back(scale_down_keep_sign(chain.front().derivative()));
    while (chain.back().degree() >= 1) {
      IntPolynomial r = signed_pseudo_rem(chain[chain.size() - 2], chain.back());
      if (r.is_zero()) break;
      chain.push_back(scale_down_keep_sign(Int(-1) * r));
    }
  }
  return chain;
}

std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
  return sturm_chain_squarefree(squarefree_part(p));
}

// Sign of p(a + b*sqrt(D)) for integer a, b: all-integer Horner in Z[sqrt D].
static int sign_at_integer_quadratic(const IntPolynomial& p, const Int& a, const Int& b,
                                     unsigned long D) {
  Int u(0), v(0);  // running value u + v*sqrt(D)
  Int dz(static_cast<long>(D));
  for (int i = p.degree(); i >= 0; --i) {
    Int nu = u * a + v * b * dz + p.c[static_cast<size_t>(i)];
    Int nv = u * b + v * a;
    u = std::move(nu);
    v = std::move(nv);
  }
  int su = sign_of(u), sv = sign_of(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  int c = cmp(u * u, v * v * dz);
  if (c == 0) return 0;
  return c > 0 ? su : sv;
}

int sign_at(const IntPolynomial& p, const QuadraticNumber& x) {
  if (x.a.get_den() == 1 && x.b.get_den() == 1)
    return sign_at_integer_quadratic(p, Int(x.a.get_num()), Int(x.b.get_num()), x.d);
  return eval_quadratic(p, x).sign();
}

int sturm_sign_changes(const std::vector<IntPolynomial>& chain, const QuadraticNumber& x) {
  bool int_fast = x.a.get_den() == 1 && x.b.get_den() == 1;
  Int xa, xb;
  if (int_fast) {
    xa = x.a.get_num();
    xb = x.b.get_num();
  }
  int changes = 0, prev = 0;
  for (const IntPolynomial& s : chain) {
    int sg = int_fast ? sign_at_integer_quadratic(s, xa, xb, x.d)
                      : eval_quadratic(s, x).sign();
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++changes;
    prev = sg;
  }
  return changes;
}

int sturm_count(const IntPolynomial& p, const QuadraticNumber& lo, const QuadraticNumber& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
  if ((hi - lo).sign() < 0) throw std::invalid_argument("sturm_count: lo > hi");
  std::vector<IntPolynomial> chain = sturm_chain(p);
  return sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi);
}

int sturm_count_all(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count_all: zero polynomial");
  if (p.degree() == 0) return 0;
  std::vector<IntPolynomial> chain = sturm_chain(p);
  // Sign changes at -infinity and +infinity, read off the leading terms.
  int changes_lo = 0, prev_lo = 0, changes_hi = 0, prev_hi = 0;
  for (const IntPolynomial& s : chain) {
    int lead = sign_of(s.leading());
    int at_lo = (s.degree() % 2 == 0) ? lead : -lead;
    if (at_lo != 0) {
      if (prev_lo != 0 && at_lo != prev_lo) ++changes_lo;
      prev_lo = at_lo;
    }
    if (lead != 0) {
      if (prev_hi != 0 && lead != prev_hi) ++changes_hi;
      prev_hi = lead;
    }
  }
  return changes_lo - changes_hi;
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

static Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int resultant_reference(const IntPolynomial& p, const IntPolynomial& r) {
  if (p.is_zero() || r.is_zero()) return Int(0);
  // Recursive Euclidean identity over Q.
  struct Impl {
    static Rat go(std::vector<Rat> a, std::vector<Rat> b) {
      while (!a.empty() && sign_of(a.back()) == 0) a.pop_back();
      while (!b.empty() && sign_of(b.back()) == 0) b.pop_back();
      size_t da = a.size() - 1, db = b.size() - 1;
      if (db == 0) {
        Rat out(1);
        for (size_t i = 0; i < da; ++i) out *= b[0];
        return out;
      }
      if (da < db) {
        Rat s = ((da * db) % 2 == 1) ? Rat(-1) : Rat(1);
        return s * go(b, a);
      }
      std::vector<Rat> rem;
      rat_divmod(a, b, &rem);
      if (rem.empty()) return Rat(0);
      size_t dr = rem.size() - 1;
      Rat lead = b[db];
      Rat s = ((da * db) % 2 == 1) ? Rat(-1) : Rat(1);
      Rat scale(1);
      for (size_t i = 0; i < da - dr; ++i) scale *= lead;
      return s * scale * go(b, rem);
    }
  };
  Rat v = Impl::go(to_rat(p), to_rat(r));
  if (v.get_den() != 1) throw std::logic_error("resultant_reference: non-integer result");
  return v.get_num();
}

Int resultant(const IntPolynomial& p, const IntPolynomial& r) {
  if (p.is_zero() || r.is_zero()) return Int(0);
  IntPolynomial A = p, B = r;
  Int ca = A.content(), cb = B.content();
  A = A.primitive_part();
  B = B.primitive_part();
  Int t = int_pow(ca, B.degree()) * int_pow(cb, A.degree());
  int s = 1;
  if (A.degree() < B.degree()) {
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) s = -s;
    std::swap(A, B);
  }
  if (B.degree() == 0) {
    return Int(s) * t * int_pow(B.c[0], A.degree());
  }
  Int g(1), h(1);
  while (true) {
    int da = A.degree(), db = B.degree();
    unsigned long delta = static_cast<unsigned long>(da - db);
    if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
    IntPolynomial R;
    {
      // True pseudo-remainder: lc(B)^(delta+1) * A mod B (sign preserved).
      Int lb = B.leading();
      Int mult = int_pow(lb, delta + 1);
      std::vector<Int> w = A.c;
      for (Int& x : w) x *= mult;
      for (int k = da; k >= db; --k) {
        if (sign_of(w[k]) == 0) continue;
        Int f;
        mpz_divexact(f.get_mpz_t(), w[k].get_mpz_t(), lb.get_mpz_t());
        for (int i = 0; i <= db; ++i) w[k - db + i] -= f * B.c[i];
      }
      w.resize(db > 0 ? db : 0);
      R = IntPolynomial(std::move(w));
    }
    A = B;
    if (R.is_zero()) return Int(0);  // common factor of positive degree
    Int divisor = g * int_pow(h, delta);
    std::vector<Int> nb(R.c.size());
    for (size_t i = 0; i < R.c.size(); ++i)
      mpz_divexact(nb[i].get_mpz_t(), R.c[i].get_mpz_t(), divisor.get_mpz_t());
    B = IntPolynomial(std::move(nb));
    g = A.leading();
    if (delta > 0) {
      // h = g^delta / h^(delta-1), exact.
      Int num = int_pow(g, delta);
      Int den = int_pow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() == 0) {
      // res(A, B) for constant B: lc(B)^(deg A) / h^(deg A - 1).
      Int num = int_pow(B.c[0], A.degree());
      Int den = int_pow(h, A.degree() - 1);
      Int out;
      mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return Int(s) * t * out;
    }
  }
}

// ---------------------------------------------------------------------------
// Newton power sums
// ---------------------------------------------------------------------------

std::vector<Int> power_sums(const IntPolynomial& p, int up_to) {
  if (!p.is_monic()) throw std::invalid_argument("power_sums: polynomial must be monic");
  if (up_to < 1) throw std::invalid_argument("power_sums: up_to must be positive");
  int d = p.degree();
  // Elementary symmetric functions: e_i = (-1)^i c_{d-i}.
  std::vector<Int> e(static_cast<size_t>(up_to) + 1, Int(0));
  for (int i = 1; i <= up_to; ++i) {
    if (i <= d) {
      e[i] = p.c[d - i];
      if (i % 2 == 1) e[i] = -e[i];
    }
  }
  std::vector<Int> s(static_cast<size_t>(up_to) + 1, Int(0));
  for (int k = 1; k <= up_to; ++k) {
    Int acc(0);
    for (int i = 1; i < k; ++i) {
      Int term = e[i] * s[k - i];
      if (i % 2 == 0) acc -= term;
      else acc += term;
    }
    Int last = Int(k) * e[k];
    if (k % 2 == 0) acc -= last;
    else acc += last;
    s[k] = acc;
  }
  return std::vector<Int>(s.begin() + 1, s.end());
}

// ---------------------------------------------------------------------------
// Decimal handling
// ---------------------------------------------------------------------------

Rat parse_decimal(const std::string& text) {
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac = 0;
  bool any = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits += text[i];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits += text[i];
      ++frac;
      any = true;
    }
  }
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) throw std::invalid_argument("parse_decimal: bad exponent in '" + text + "'");
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
      exp10 = exp10 * 10 + (text[i] - '0');
    if (eneg) exp10 = -exp10;
  }
  if (!any || i != text.size())
    throw std::invalid_argument("parse_decimal: malformed decimal '" + text + "'");
  Int num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  long net = exp10 - frac;
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  Rat v;
  if (net >= 0) v = Rat(num * p10);
  else v = Rat(num, p10);
  v.canonicalize();
  return v;
}

std::string format_decimal(const Rat& v, int digits, RoundDir dir) {
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rat scaled = v * Rat(p10);
  Int n;
  switch (dir) {
    case RoundDir::Down:
      mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      break;
    case RoundDir::Up:
      mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      break;
    case RoundDir::Nearest: {
      Rat half = scaled + Rat(1, 2);
      mpz_fdiv_q(n.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
      break;
    }
  }
  bool neg = sign_of(n) < 0;
  Int mag = abs(n);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out;
  if (neg) out += "-";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) {
    out += ".";
    out += s.substr(s.size() - digits);
  }
  return out;
}

std::string format_decimal(double v, int digits, RoundDir dir) {
  Rat r(v);
  return format_decimal(r, digits, dir);
}

std::string rational_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  std::string s = c.get_num().get_str();
  if (c.get_den() != 1) s += "/" + c.get_den().get_str();
  return s;
}

Rat parse_rational_string(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    Rat v{Int(text, 10)};
    return v;
  }
  Int num(text.substr(0, slash), 10);
  Int den(text.substr(slash + 1), 10);
  if (sign_of(den) == 0) throw std::invalid_argument("parse_rational_string: zero denominator");
  Rat v(num, den);
  v.canonicalize();
  return v;
}

}  // namespace avbounds
