#include "ratext/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ratext {

PolyQ::PolyQ(GaussianRational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

PolyQ::PolyQ(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyQ PolyQ::from_real(std::vector<Rational> coeffs) {
  std::vector<GaussianRational> c;
  c.reserve(coeffs.size());
  for (auto& r : coeffs) c.emplace_back(std::move(r));
  return PolyQ(std::move(c));
}

PolyQ PolyQ::monomial(GaussianRational c, std::size_t power) {
  if (c.is_zero()) return {};
  std::vector<GaussianRational> v(power + 1);
  v[power] = std::move(c);
  return PolyQ(std::move(v));
}

PolyQ PolyQ::x() { return monomial(GaussianRational(1), 1); }

void PolyQ::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long PolyQ::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k].is_zero()) return static_cast<long>(k);
  }
  return -1;
}

bool PolyQ::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& z) { return z.is_real(); });
}

std::vector<Rational> PolyQ::real_coeffs() const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const auto& z : c_) {
    if (!z.is_real()) throw ConsistencyError("polynomial has a nonzero imaginary coefficient");
    out.push_back(z.re);
  }
  return out;
}

GaussianRational PolyQ::eval(const GaussianRational& x) const {
  GaussianRational acc;
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc *= x;
    acc += c_[k];
  }
  return acc;
}

Rational PolyQ::eval_real(const Rational& x) const {
  Rational acc;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (!c_[k].is_real()) throw ConsistencyError("eval_real on a non-real polynomial");
    acc *= x;
    acc += c_[k].re;
  }
  return acc;
}

double PolyQ::eval_double(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].re.to_double();
  return acc;
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussianRational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussianRational(Rational(static_cast<long>(k)));
  return PolyQ(std::move(d));
}

PolyQ PolyQ::scale_argument(const GaussianRational& c) const {
  std::vector<GaussianRational> out(c_.size());
  GaussianRational p(1);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    out[k] = c_[k] * p;
    p *= c;
  }
  return PolyQ(std::move(out));
}

PolyQ PolyQ::pow(unsigned e) const {
  PolyQ result(GaussianRational(1));
  PolyQ base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

PolyQ PolyQ::with_coeff(std::size_t k, const GaussianRational& c) const {
  std::vector<GaussianRational> v = c_;
  if (v.size() <= k) v.resize(k + 1);
  v[k] = c;
  return PolyQ(std::move(v));
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyQ(std::move(out));
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
  *this = *this * o;
  return *this;
}

PolyQ& PolyQ::operator*=(const GaussianRational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PolyQ operator-(const PolyQ& a) {
  PolyQ r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string PolyQ::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].to_string() << ")";
    if (k > 0) os << "*" << var << "^" << k;
  }
  return os.str();
}

DivMod divmod(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<GaussianRational> r = a.coeffs();
  const long db = b.degree();
  const GaussianRational lb = b.leading();
  if (a.degree() < db) return {PolyQ(), a};
  std::vector<GaussianRational> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (long k = a.degree(); k >= db; --k) {
    const auto& top = r[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    GaussianRational f = top / lb;
    for (long j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(k - db)] = std::move(f);
  }
  return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ exact_div(const PolyQ& a, const PolyQ& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a;
  PolyQ y = b;
  while (!y.is_zero()) {
    PolyQ r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (GaussianRational(1) / x.leading());
}

PolyQ poly_wronskian(std::span<const PolyQ> fs) {
  if (fs.empty()) throw DomainError("Wronskian of an empty list");
  const std::size_t n = fs.size();
  std::vector<std::vector<PolyQ>> m(n, std::vector<PolyQ>(n));
  for (std::size_t j = 0; j < n; ++j) {
    PolyQ d = fs[j];
    for (std::size_t k = 0; k < n; ++k) {
      m[k][j] = d;
      d = d.derivative();
    }
  }
  return determinant(m, PolyQ(), PolyQ(GaussianRational(1)));
}

OpenInterval OpenInterval::between(Rational a, Rational b) {
  if (!(a < b)) throw DomainError("open interval needs lo < hi");
  return {std::move(a), std::move(b)};
}

bool OpenInterval::contains(const Rational& x) const {
  return (!lo || *lo < x) && (!hi || x < *hi);
}

std::string OpenInterval::to_string() const {
  return "(" + (lo ? lo->to_string() : std::string("-inf")) + ", " +
         (hi ? hi->to_string() : std::string("+inf")) + ")";
}

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Scales a real rational polynomial to a primitive integer polynomial with
/// positive content.
IntPoly primitive(const std::vector<Rational>& c) {
  mpz_class l = 1;
  for (const auto& r : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t());
  IntPoly p;
  p.reserve(c.size());
  for (const auto& r : c) p.push_back(r.num() * (l / r.den()));
  trim(p);
  mpz_class g = 0;
  for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return p;
}

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

/// Pseudo-remainder: lc(b)^s a = q b + r. Returns r and s.
std::pair<IntPoly, long> pseudo_remainder(IntPoly a, const IntPoly& b) {
  const long db = static_cast<long>(b.size()) - 1;
  const mpz_class& lb = b.back();
  long steps = 0;
  trim(a);
  while (!a.empty() && static_cast<long>(a.size()) - 1 >= db) {
    const long da = static_cast<long>(a.size()) - 1;
    const mpz_class top = a.back();
    for (auto& v : a) v *= lb;
    for (long j = 0; j <= db; ++j) {
      a[static_cast<std::size_t>(da - db + j)] -= top * b[static_cast<std::size_t>(j)];
    }
    ++steps;
    trim(a);
  }
  return {a, steps};
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain{p, derivative(p)};
  make_primitive(chain[1]);
  while (!chain.back().empty() && chain.back().size() > 1) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    auto [r, steps] = pseudo_remainder(a, b);
    if (r.empty()) break;
    // next = -rem(a, b); rem = r / lb^steps
    const bool flip = !(sgn(b.back()) < 0 && (steps % 2 == 1));
    if (flip) {
      for (auto& v : r) v = -v;
    }
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_at(const IntPoly& p, const Rational& x) {
  // den^deg * p(num/den) has the sign of p(x) because den > 0.
  const mpz_class n = x.num();
  const mpz_class d = x.den();
  mpz_class acc = 0;
  mpz_class dpow = 1;
  // Horner on homogenised form: sum c_k n^k d^(deg-k)
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * n + p[k] * dpow;
    dpow *= d;
  }
  return sgn(acc);
}

int sign_infinity(const IntPoly& p, bool plus) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (!plus && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

long variations(const std::vector<int>& signs) {
  long v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

RootCount sturm_root_report(const PolyQ& p, const OpenInterval& iv) {
  if (p.is_zero()) throw DomainError("Sturm count of the zero polynomial");
  PolyQ sq = p;
  const PolyQ dp = p.derivative();
  if (!dp.is_zero()) {
    const PolyQ g = gcd(p, dp);
    if (g.degree() > 0) sq = exact_div(p, g);
  }
  RootCount out;
  // Remove exact endpoint roots so the Sturm difference counts the open interval.
  if (iv.lo && sq.eval_real(*iv.lo).is_zero()) {
    out.root_at_lo = true;
    sq = exact_div(sq, PolyQ::from_real({-*iv.lo, Rational(1)}));
  }
  if (iv.hi && sq.eval_real(*iv.hi).is_zero()) {
    out.root_at_hi = true;
    sq = exact_div(sq, PolyQ::from_real({-*iv.hi, Rational(1)}));
  }
  if (sq.degree() <= 0) return out;
  const auto chain = sturm_chain(primitive(sq.real_coeffs()));
  std::vector<int> lo_signs, hi_signs;
  for (const auto& q : chain) {
    lo_signs.push_back(iv.lo ? sign_at(q, *iv.lo) : sign_infinity(q, false));
    hi_signs.push_back(iv.hi ? sign_at(q, *iv.hi) : sign_infinity(q, true));
  }
  out.count = variations(lo_signs) - variations(hi_signs);
  return out;
}

long sturm_count_roots(const PolyQ& p, const OpenInterval& iv) {
  return sturm_root_report(p, iv).count;
}

std::optional<GaussianRational> poly_proportional(const PolyQ& p, const PolyQ& q) {
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  if (p.degree() != q.degree()) return std::nullopt;
  const GaussianRational c = p.leading() / q.leading();
  if (q * c == p) return c;
  return std::nullopt;
}

int sign_near(const PolyQ& p, const Rational& x, bool from_right) {
  PolyQ d = p;
  int order = 0;
  while (!d.is_zero()) {
    const int s = d.eval_real(x).sign();
    if (s != 0) return (from_right || order % 2 == 0) ? s : -s;
    d = d.derivative();
    ++order;
  }
  return 0;
}

int sign_at_infinity(const PolyQ& p, bool plus) {
  if (p.is_zero()) return 0;
  const auto lc = p.leading();
  if (!lc.is_real()) throw ConsistencyError("sign of a non-real polynomial");
  int s = lc.re.sign();
  if (!plus && p.degree() % 2 == 1) s = -s;
  return s;
}

double log_abs_rational(const Rational& r) {
  if (r.is_zero()) return -std::numeric_limits<double>::infinity();
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, r.raw().get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, r.raw().get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(std::fabs(md)) + static_cast<double>(en - ed) * std::numbers::ln2;
}

ScaledPoly::ScaledPoly(const PolyQ& p) {
  const auto rc = p.real_coeffs();
  if (rc.empty()) return;
  Rational big;
  for (const auto& c : rc) big = max(big, c.abs());
  log_scale_ = log_abs_rational(big);
  c_.reserve(rc.size());
  for (const auto& c : rc) c_.push_back((c / big).to_long_double());
}

void ScaledPoly::sums(long double x, long double& s0, long double& s1, long double& s2) const {
  s0 = s1 = s2 = 0.0L;
  const std::size_t n = c_.size();
  if (std::fabs(x) <= 1.0L) {
    for (std::size_t k = n; k-- > 0;) {
      const long double kk = static_cast<long double>(k);
      s0 = s0 * x + c_[k];
      if (k >= 1) s1 = s1 * x + kk * c_[k];
      if (k >= 2) s2 = s2 * x + kk * (kk - 1.0L) * c_[k];
    }
    return;
  }
  // p(x) = x^d sum_k c_k s^{d-k} with s = 1/x; likewise for x p'(x) and x^2 p''(x)
  const long double s = 1.0L / x;
  for (std::size_t k = 0; k < n; ++k) {
    const long double kk = static_cast<long double>(k);
    s0 = s0 * s + c_[k];
    s1 = s1 * s + kk * c_[k];
    s2 = s2 * s + kk * (kk - 1.0L) * c_[k];
  }
}

double ScaledPoly::log_abs(double x) const {
  if (c_.empty()) return -std::numeric_limits<double>::infinity();
  long double s0, s1, s2;
  sums(x, s0, s1, s2);
  const double d = static_cast<double>(c_.size() - 1);
  const double extra = std::fabs(x) <= 1.0 ? 0.0 : d * std::log(std::fabs(x));
  return static_cast<double>(std::log(std::fabs(s0))) + extra + log_scale_;
}

int ScaledPoly::sign(double x) const {
  if (c_.empty()) return 0;
  long double s0, s1, s2;
  sums(x, s0, s1, s2);
  int sg = s0 > 0 ? 1 : (s0 < 0 ? -1 : 0);
  if (std::fabs(x) > 1.0 && x < 0.0 && (c_.size() - 1) % 2 == 1) sg = -sg;
  return sg;
}

std::pair<long double, long double> ScaledPoly::log_derivs(long double x) const {
  if (c_.empty()) return {0.0L, 0.0L};
  long double s0, s1, s2;
  sums(x, s0, s1, s2);
  if (std::fabs(x) <= 1.0L) return {s1 / s0, s2 / s0};
  return {s1 / s0 / x, s2 / s0 / (x * x)};
}

}  // namespace ratext
