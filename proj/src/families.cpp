#include "ratext/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>

namespace ratext {

namespace {

bool is_group_b(FamilyTag t) { return t == FamilyTag::RM || t == FamilyTag::KH; }

const Rational& coth_of(const HyperbolicAt& hy) {
  if (!hy.coth) throw DomainError("coth undefined at x = 0");
  return *hy.coth;
}

const Rational& csch_of(const HyperbolicAt& hy) {
  if (!hy.csch) throw DomainError("csch undefined at x = 0");
  return *hy.csch;
}

void require_domain(FamilyTag tag, const Rational& t) {
  if (!t_in_domain(tag, t)) {
    throw DomainError("t = " + t.to_string() + " outside the domain of family " + family_name(tag));
  }
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_abs_sinh(double x) {
  const double a = std::fabs(x);
  if (a < 1.0) return std::log(std::fabs(std::sinh(x)));
  return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

// ((1 - z)/2)^k
PolyQ half_one_minus_z_pow(long k) {
  return PolyQ::from_real({Rational(1, 2), Rational(-1, 2)}).pow(static_cast<unsigned>(k));
}

}  // namespace

Family family_info(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::M: return {tag, Group::A, Rational(-1)};
    case FamilyTag::S: return {tag, Group::A, Rational(1)};
    case FamilyTag::HST: return {tag, Group::A, Rational(1)};
    case FamilyTag::HDPT: return {tag, Group::A, Rational(4)};
    case FamilyTag::RM:
    case FamilyTag::KH: return {tag, Group::B, Rational(0)};
  }
  throw ConsistencyError("unknown family tag");
}

FamilyTag parse_family_tag(std::string_view s) {
  std::string low;
  for (char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "m") return FamilyTag::M;
  if (low == "s") return FamilyTag::S;
  if (low == "rm") return FamilyTag::RM;
  if (low == "hst") return FamilyTag::HST;
  if (low == "kh") return FamilyTag::KH;
  if (low == "hdpt") return FamilyTag::HDPT;
  throw DomainError("unknown family '" + std::string(s) + "'");
}

std::string family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::M: return "M";
    case FamilyTag::S: return "s";
    case FamilyTag::RM: return "RM";
    case FamilyTag::HST: return "hst";
    case FamilyTag::KH: return "Kh";
    case FamilyTag::HDPT: return "hDPT";
  }
  return "?";
}

std::vector<FamilyTag> all_families() {
  return {FamilyTag::M, FamilyTag::S, FamilyTag::RM, FamilyTag::HST, FamilyTag::KH, FamilyTag::HDPT};
}

// ---------------------------------------------------------------------------
// Params

Params Params::formal(FamilyTag family, Rational h, Rational mu, Rational g) {
  Params p;
  p.family = family;
  p.h = std::move(h);
  p.mu = std::move(mu);
  p.g = std::move(g);
  return p;
}

Params Params::make(FamilyTag family, Rational h, Rational mu, Rational g, bool half_integer_mode) {
  Params p = formal(family, std::move(h), std::move(mu), std::move(g));
  p.half_integer_mode = half_integer_mode;
  p.validate();
  return p;
}

void Params::validate() const {
  const std::string name = family_name(family);
  auto fail = [&](const std::string& what) { throw DomainError(name + ": " + what); };
  switch (family) {
    case FamilyTag::M:
    case FamilyTag::HST:
      if (h.sign() <= 0 || mu.sign() <= 0) fail("requires h > 0 and mu > 0");
      break;
    case FamilyTag::S:
      if (h.sign() <= 0) fail("requires h > 0");
      break;
    case FamilyTag::RM:
      if (h.sign() <= 0 || mu.sign() <= 0 || h * h <= mu) fail("requires h > sqrt(mu) > 0");
      break;
    case FamilyTag::KH:
      if (g <= Rational(1, 2) || mu <= g * g) fail("requires sqrt(mu) > g > 1/2");
      break;
    case FamilyTag::HDPT:
      if (g <= Rational(1, 2) || h <= g) fail("requires h > g > 1/2");
      break;
  }
  const bool uses_g = family == FamilyTag::KH || family == FamilyTag::HDPT;
  const Rational& c = uses_g ? g : h;
  if (c.is_half_integer_multiple() && !half_integer_mode) {
    throw NonGenericError(name + ": coupling " + std::string(uses_g ? "g" : "h") + " = " + c.to_string() +
                          " is an integer or half-odd integer (set half_integer mode to allow)");
  }
}

Params Params::shifted(long k) const {
  Params q = *this;
  switch (family) {
    case FamilyTag::M:
    case FamilyTag::S:
    case FamilyTag::RM:
    case FamilyTag::HST: q.h = h - Rational(k); break;
    case FamilyTag::KH: q.g = g + Rational(k); break;
    case FamilyTag::HDPT:
      q.g = g + Rational(k);
      q.h = h - Rational(k);
      break;
  }
  return q;
}

Params Params::shifted_valid(long k) const {
  Params q = shifted(k);
  q.validate();
  return q;
}

std::string Params::to_string() const {
  std::string s = family_name(family) + "(";
  switch (family) {
    case FamilyTag::M:
    case FamilyTag::RM:
    case FamilyTag::HST: s += "h=" + h.to_string() + ", mu=" + mu.to_string(); break;
    case FamilyTag::S: s += "h=" + h.to_string(); break;
    case FamilyTag::KH: s += "g=" + g.to_string() + ", mu=" + mu.to_string(); break;
    case FamilyTag::HDPT: s += "g=" + g.to_string() + ", h=" + h.to_string(); break;
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Prefactors and hyperbolic functions

HyperbolicAt::HyperbolicAt(const Rational& tt) : t(tt) {
  if (t.sign() <= 0) throw DomainError("t = e^x must be positive");
  const Rational t2 = t * t;
  sinh = (t2 - Rational(1)) / (Rational(2) * t);
  cosh = (t2 + Rational(1)) / (Rational(2) * t);
  tanh = (t2 - Rational(1)) / (t2 + Rational(1));
  sech = Rational(2) * t / (t2 + Rational(1));
  if (t2 != Rational(1)) {
    coth = (t2 + Rational(1)) / (t2 - Rational(1));
    csch = Rational(2) * t / (t2 - Rational(1));
  }
}

Rational PrefactorExponents::logderiv(const Rational& t) const {
  const HyperbolicAt hy(t);
  Rational r = rate + exp_coef * t + cosh_pow * hy.tanh + atan_coef * hy.sech;
  if (!sinh_pow.is_zero()) r += sinh_pow * coth_of(hy);
  return r;
}

Rational PrefactorExponents::logderiv_dx(const Rational& t) const {
  const HyperbolicAt hy(t);
  Rational r = exp_coef * t + cosh_pow * hy.sech * hy.sech - atan_coef * hy.sech * hy.tanh;
  if (!sinh_pow.is_zero()) r -= sinh_pow * csch_of(hy) * csch_of(hy);
  return r;
}

double PrefactorExponents::logderiv(double x) const {
  double r = rate.to_double() + exp_coef.to_double() * std::exp(x) + cosh_pow.to_double() * std::tanh(x) +
             atan_coef.to_double() / std::cosh(x);
  if (!sinh_pow.is_zero()) r += sinh_pow.to_double() / std::tanh(x);
  return r;
}

double PrefactorExponents::logderiv_dx(double x) const {
  return static_cast<double>(logderiv_dx(static_cast<long double>(x)));
}

long double PrefactorExponents::logderiv_dx(long double x) const {
  const long double sech = 1.0L / std::cosh(x);
  long double r = exp_coef.to_long_double() * std::exp(x) + cosh_pow.to_long_double() * sech * sech -
                  atan_coef.to_long_double() * sech * std::tanh(x);
  if (!sinh_pow.is_zero()) {
    const long double csch = 1.0L / std::sinh(x);
    r -= sinh_pow.to_long_double() * csch * csch;
  }
  return r;
}

double PrefactorExponents::log_abs(double x) const {
  double r = rate.to_double() * x;
  if (!exp_coef.is_zero()) r += exp_coef.to_double() * std::exp(x);
  if (!sinh_pow.is_zero()) r += sinh_pow.to_double() * log_abs_sinh(x);
  if (!cosh_pow.is_zero()) r += cosh_pow.to_double() * log_cosh(x);
  if (!atan_coef.is_zero()) r += atan_coef.to_double() * std::atan(std::sinh(x));
  return r;
}

bool PrefactorExponents::is_trivial() const {
  return rate.is_zero() && exp_coef.is_zero() && sinh_pow.is_zero() && cosh_pow.is_zero() &&
         atan_coef.is_zero();
}

PrefactorExponents& PrefactorExponents::operator+=(const PrefactorExponents& o) {
  rate += o.rate;
  exp_coef += o.exp_coef;
  sinh_pow += o.sinh_pow;
  cosh_pow += o.cosh_pow;
  atan_coef += o.atan_coef;
  return *this;
}

PrefactorExponents& PrefactorExponents::operator-=(const PrefactorExponents& o) {
  rate -= o.rate;
  exp_coef -= o.exp_coef;
  sinh_pow -= o.sinh_pow;
  cosh_pow -= o.cosh_pow;
  atan_coef -= o.atan_coef;
  return *this;
}

PrefactorExponents operator*(const Rational& k, PrefactorExponents a) {
  a.rate *= k;
  a.exp_coef *= k;
  a.sinh_pow *= k;
  a.cosh_pow *= k;
  a.atan_coef *= k;
  return a;
}

// ---------------------------------------------------------------------------
// Coordinates

XDomain x_domain(FamilyTag tag) {
  return tag == FamilyTag::KH || tag == FamilyTag::HDPT ? XDomain::HalfLine : XDomain::FullLine;
}

OpenInterval eta_interval(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::M: return OpenInterval::above(Rational(0));
    case FamilyTag::S:
    case FamilyTag::HST: return OpenInterval::whole_line();
    case FamilyTag::RM: return OpenInterval::between(Rational(-1), Rational(1));
    case FamilyTag::KH:
    case FamilyTag::HDPT: return OpenInterval::above(Rational(1));
  }
  throw ConsistencyError("unknown family tag");
}

bool t_in_domain(FamilyTag tag, const Rational& t) {
  if (t.sign() <= 0) return false;
  if (x_domain(tag) == XDomain::HalfLine) return t > Rational(1);
  return true;
}

Rational eta_at(FamilyTag tag, const Rational& t) {
  const HyperbolicAt hy(t);
  switch (tag) {
    case FamilyTag::M: return t.inverse();
    case FamilyTag::S:
    case FamilyTag::HST: return hy.sinh;
    case FamilyTag::RM: return hy.tanh;
    case FamilyTag::KH: return coth_of(hy);
    case FamilyTag::HDPT: return (t.pow(4) + Rational(1)) / (Rational(2) * t * t);
  }
  throw ConsistencyError("unknown family tag");
}

Rational deta_dx_at(FamilyTag tag, const Rational& t) {
  const HyperbolicAt hy(t);
  switch (tag) {
    case FamilyTag::M: return -t.inverse();
    case FamilyTag::S:
    case FamilyTag::HST: return hy.cosh;
    case FamilyTag::RM: return hy.sech * hy.sech;
    case FamilyTag::KH: return -csch_of(hy) * csch_of(hy);
    case FamilyTag::HDPT: return t * t - (t * t).inverse();
  }
  throw ConsistencyError("unknown family tag");
}

Rational d2eta_dx2_at(FamilyTag tag, const Rational& t) {
  const HyperbolicAt hy(t);
  switch (tag) {
    case FamilyTag::M: return t.inverse();
    case FamilyTag::S:
    case FamilyTag::HST: return hy.sinh;
    case FamilyTag::RM: return Rational(-2) * hy.sech * hy.sech * hy.tanh;
    case FamilyTag::KH: return Rational(2) * csch_of(hy) * csch_of(hy) * coth_of(hy);
    case FamilyTag::HDPT: return Rational(2) * (t * t + (t * t).inverse());
  }
  throw ConsistencyError("unknown family tag");
}

namespace {

template <class T>
T eta_impl(FamilyTag tag, T x) {
  switch (tag) {
    case FamilyTag::M: return std::exp(-x);
    case FamilyTag::S:
    case FamilyTag::HST: return std::sinh(x);
    case FamilyTag::RM: return std::tanh(x);
    case FamilyTag::KH: return T(1) / std::tanh(x);
    case FamilyTag::HDPT: return std::cosh(T(2) * x);
  }
  return T(0);
}

template <class T>
T deta_impl(FamilyTag tag, T x) {
  switch (tag) {
    case FamilyTag::M: return -std::exp(-x);
    case FamilyTag::S:
    case FamilyTag::HST: return std::cosh(x);
    case FamilyTag::RM: {
      const T s = T(1) / std::cosh(x);
      return s * s;
    }
    case FamilyTag::KH: {
      const T s = T(1) / std::sinh(x);
      return -s * s;
    }
    case FamilyTag::HDPT: return T(2) * std::sinh(T(2) * x);
  }
  return T(0);
}

template <class T>
T d2eta_impl(FamilyTag tag, T x) {
  switch (tag) {
    case FamilyTag::M: return std::exp(-x);
    case FamilyTag::S:
    case FamilyTag::HST: return std::sinh(x);
    case FamilyTag::RM: {
      const T s = T(1) / std::cosh(x);
      return T(-2) * s * s * std::tanh(x);
    }
    case FamilyTag::KH: {
      const T s = T(1) / std::sinh(x);
      return T(2) * s * s / std::tanh(x);
    }
    case FamilyTag::HDPT: return T(4) * std::cosh(T(2) * x);
  }
  return T(0);
}

}  // namespace

double eta_at(FamilyTag tag, double x) { return eta_impl(tag, x); }
double deta_dx_at(FamilyTag tag, double x) { return deta_impl(tag, x); }
double d2eta_dx2_at(FamilyTag tag, double x) { return d2eta_impl(tag, x); }
long double eta_at(FamilyTag tag, long double x) { return eta_impl(tag, x); }
long double deta_dx_at(FamilyTag tag, long double x) { return deta_impl(tag, x); }
long double d2eta_dx2_at(FamilyTag tag, long double x) { return d2eta_impl(tag, x); }

// ---------------------------------------------------------------------------
// Spectrum data

long nmax(const Params& p) {
  switch (p.family) {
    case FamilyTag::M:
    case FamilyTag::S:
    case FamilyTag::HST: return static_cast<long>(mpz_class(p.h.ceil() - 1).get_si());
    case FamilyTag::RM: {
      long n = -1;
      while (true) {
        const Rational r = p.h - Rational(n + 1);
        if (r.sign() <= 0 || r * r <= p.mu) break;
        ++n;
      }
      return n;
    }
    case FamilyTag::KH: {
      long n = -1;
      while (true) {
        const Rational r = p.g + Rational(n + 1);
        if (r * r >= p.mu) break;
        ++n;
      }
      return n;
    }
    case FamilyTag::HDPT: {
      const Rational half = (p.h - p.g) / Rational(2);
      return static_cast<long>(mpz_class(half.ceil() - 1).get_si());
    }
  }
  throw ConsistencyError("unknown family tag");
}

Rational eigen_energy(const Params& p, const Rational& n) {
  switch (p.family) {
    case FamilyTag::M:
    case FamilyTag::S:
    case FamilyTag::HST: return p.h * p.h - (p.h - n) * (p.h - n);
    case FamilyTag::RM: {
      const Rational r = p.h - n;
      if (r.is_zero() || p.h.is_zero()) throw DomainError("RM energy has a pole at n = h");
      return p.h * p.h - r * r + p.mu * p.mu / (p.h * p.h) - p.mu * p.mu / (r * r);
    }
    case FamilyTag::KH: {
      const Rational r = p.g + n;
      if (r.is_zero() || p.g.is_zero()) throw DomainError("Kh energy has a pole at n = -g");
      return p.g * p.g - r * r + p.mu * p.mu / (p.g * p.g) - p.mu * p.mu / (r * r);
    }
    case FamilyTag::HDPT: return Rational(4) * n * (p.h - p.g - n);
  }
  throw ConsistencyError("unknown family tag");
}

Rational forward_shift_coefficient(const Params& p, long n) {
  const Rational nn(n);
  switch (p.family) {
    case FamilyTag::M: return (nn - Rational(2) * p.h) / (Rational(2) * p.mu);
    case FamilyTag::S: return p.h;
    case FamilyTag::HST: return (nn - Rational(2) * p.h) / Rational(2);
    case FamilyTag::RM: {
      const Rational r = p.h - nn;
      if (r.is_zero()) throw DomainError("RM shift coefficient has a pole at n = h");
      return (p.h * p.h * r * r - p.mu * p.mu) / (p.h * r * r);
    }
    case FamilyTag::KH: {
      const Rational r = p.g + nn;
      if (r.is_zero()) throw DomainError("Kh shift coefficient has a pole at n = -g");
      return (p.mu * p.mu - p.g * p.g * r * r) / (p.g * r * r);
    }
    case FamilyTag::HDPT: return Rational(2) * (nn + p.g - p.h);
  }
  throw ConsistencyError("unknown family tag");
}

Rational backward_shift_coefficient(const Params& p, long n) {
  const Rational nn(n);
  switch (p.family) {
    case FamilyTag::M: return Rational(-2) * nn * p.mu;
    case FamilyTag::S:
    case FamilyTag::RM: return nn * (Rational(2) * p.h - nn) / p.h;
    case FamilyTag::HST:
    case FamilyTag::HDPT: return Rational(-2) * nn;
    case FamilyTag::KH: return nn * (Rational(2) * p.g + nn) / p.g;
  }
  throw ConsistencyError("unknown family tag");
}

PolyQ jacobi_polynomial(long n, const GaussianRational& alpha, const GaussianRational& beta) {
  if (n < 0) throw DomainError("Jacobi degree must be non-negative");
  PolyQ acc;
  const GaussianRational ab1 = GaussianRational(Rational(n) + Rational(1)) + alpha + beta;
  const Rational nfact = factorial(n);
  for (long k = 0; k <= n; ++k) {
    GaussianRational c = pochhammer(GaussianRational(Rational(-n)), k) * pochhammer(ab1, k) *
                         pochhammer(alpha + GaussianRational(Rational(k + 1)), n - k);
    c /= GaussianRational(nfact * factorial(k));
    acc += half_one_minus_z_pow(k) * c;
  }
  return acc;
}

namespace {

PolyQ require_real(PolyQ p, const char* what) {
  if (!p.is_real()) throw ConsistencyError(std::string("imaginary residue in ") + what);
  return p;
}

PolyQ morse_polynomial(const Params& p, long n) {
  // (2 mu / eta)^{-n} L_n^{(2h-2n)}(2 mu / eta), cleared of eta^{-1}
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  const Rational top = Rational(2) * p.h - Rational(n);
  const Rational two_mu = Rational(2) * p.mu;
  for (long k = 0; k <= n; ++k) {
    Rational term = binomial(top, n - k) / factorial(k) * two_mu.pow(k - n);
    if (k % 2 != 0) term = -term;
    c[static_cast<std::size_t>(n - k)] = term;
  }
  return PolyQ::from_real(std::move(c));
}

PolyQ soliton_polynomial(const Params& p, long n) {
  const GaussianRational a(-p.h - Rational(1, 2));
  PolyQ q = jacobi_polynomial(n, a, a).scale_argument(GaussianRational::i());
  q *= GaussianRational::i().pow(n);
  const long fl_nm1 = (n - 1) >= 0 ? (n - 1) / 2 : -1;  // [(n-1)/2]
  const long fl_np1 = (n + 1) / 2;                       // [(n+1)/2]
  const Rational num = pochhammer(p.h - Rational(fl_nm1), fl_np1);
  const Rational den = pochhammer(p.h - Rational(n) + Rational(1, 2), fl_np1);
  if (!den.is_zero() && !num.is_zero()) q *= GaussianRational(num / den);
  return require_real(q, "soliton polynomial");
}

PolyQ hst_polynomial(const Params& p, long n) {
  const GaussianRational alpha(-p.h - Rational(1, 2), -p.mu);
  const GaussianRational beta(-p.h - Rational(1, 2), p.mu);
  PolyQ q = jacobi_polynomial(n, alpha, beta).scale_argument(GaussianRational::i());
  // i^{-n} = (-i)^n
  q *= GaussianRational(Rational(0), Rational(-1)).pow(n);
  return require_real(q, "hst polynomial");
}

}  // namespace

PolyQ eigen_polynomial(const Params& p, long n) {
  if (n < 0) throw DomainError("eigen_polynomial requires n >= 0");
  switch (p.family) {
    case FamilyTag::M: return morse_polynomial(p, n);
    case FamilyTag::S: return soliton_polynomial(p, n);
    case FamilyTag::HST: return hst_polynomial(p, n);
    case FamilyTag::RM: {
      const Rational r = p.h - Rational(n);
      if (r.is_zero()) throw DomainError("RM polynomial undefined at n = h");
      return jacobi_polynomial(n, GaussianRational(r + p.mu / r), GaussianRational(r - p.mu / r));
    }
    case FamilyTag::KH: {
      const Rational r = p.g + Rational(n);
      if (r.is_zero()) throw DomainError("Kh polynomial undefined at n = -g");
      return jacobi_polynomial(n, GaussianRational(-r + p.mu / r), GaussianRational(-r - p.mu / r));
    }
    case FamilyTag::HDPT:
      return jacobi_polynomial(n, GaussianRational(p.g - Rational(1, 2)),
                               GaussianRational(-p.h - Rational(1, 2)));
  }
  throw ConsistencyError("unknown family tag");
}

PrefactorExponents phi0_prefactor(const Params& p, long shift) {
  const Params q = p.shifted(shift);
  PrefactorExponents e;
  switch (p.family) {
    case FamilyTag::M:
      e.rate = q.h;
      e.exp_coef = -q.mu;
      break;
    case FamilyTag::S: e.cosh_pow = -q.h; break;
    case FamilyTag::RM:
      if (q.h.is_zero()) throw DomainError("RM ground state undefined at h = 0");
      e.rate = -q.mu / q.h;
      e.cosh_pow = -q.h;
      break;
    case FamilyTag::HST:
      e.cosh_pow = -q.h;
      e.atan_coef = -q.mu;
      break;
    case FamilyTag::KH:
      if (q.g.is_zero()) throw DomainError("Kh ground state undefined at g = 0");
      e.rate = -q.mu / q.g;
      e.sinh_pow = q.g;
      break;
    case FamilyTag::HDPT:
      e.sinh_pow = q.g;
      e.cosh_pow = -q.h;
      break;
  }
  return e;
}

PrefactorExponents eigen_prefactor(const Params& p, long n) {
  return is_group_b(p.family) ? phi0_prefactor(p, n) : phi0_prefactor(p, 0);
}

Rational phi0_logderiv(const Params& p, long shift, const Rational& t) {
  require_domain(p.family, t);
  return phi0_prefactor(p, shift).logderiv(t);
}

Rational potential_value(const Params& p, const Rational& t) {
  require_domain(p.family, t);
  const HyperbolicAt hy(t);
  const Rational sech2 = hy.sech * hy.sech;
  switch (p.family) {
    case FamilyTag::M: return p.mu * p.mu * t * t - p.mu * (Rational(2) * p.h + Rational(1)) * t + p.h * p.h;
    case FamilyTag::S: return -p.h * (p.h + Rational(1)) * sech2 + p.h * p.h;
    case FamilyTag::RM:
      return -p.h * (p.h + Rational(1)) * sech2 + Rational(2) * p.mu * hy.tanh + p.h * p.h +
             p.mu * p.mu / (p.h * p.h);
    case FamilyTag::HST:
      return (-p.h * (p.h + Rational(1)) + p.mu * p.mu + p.mu * (Rational(2) * p.h + Rational(1)) * hy.sinh) *
                 sech2 +
             p.h * p.h;
    case FamilyTag::KH: {
      const Rational& cs = csch_of(hy);
      return p.g * (p.g - Rational(1)) * cs * cs - Rational(2) * p.mu * coth_of(hy) + p.g * p.g +
             p.mu * p.mu / (p.g * p.g);
    }
    case FamilyTag::HDPT: {
      const Rational& cs = csch_of(hy);
      return p.g * (p.g - Rational(1)) * cs * cs - p.h * (p.h + Rational(1)) * sech2 +
             (p.h - p.g) * (p.h - p.g);
    }
  }
  throw ConsistencyError("unknown family tag");
}

template <class T>
T potential_impl(const Params& p, T x) {
  const T h = p.h.to_long_double();
  const T mu = p.mu.to_long_double();
  const T g = p.g.to_long_double();
  const T sech = T(1) / std::cosh(x);
  const T sech2 = sech * sech;
  switch (p.family) {
    case FamilyTag::M: {
      const T e = std::exp(x);
      return mu * mu * e * e - mu * (T(2) * h + T(1)) * e + h * h;
    }
    case FamilyTag::S: return -h * (h + T(1)) * sech2 + h * h;
    case FamilyTag::RM: return -h * (h + T(1)) * sech2 + T(2) * mu * std::tanh(x) + h * h + mu * mu / (h * h);
    case FamilyTag::HST:
      return (-h * (h + T(1)) + mu * mu) * sech2 + mu * (T(2) * h + T(1)) * std::tanh(x) * sech + h * h;
    case FamilyTag::KH: {
      const T cs = T(1) / std::sinh(x);
      return g * (g - T(1)) * cs * cs - T(2) * mu / std::tanh(x) + g * g + mu * mu / (g * g);
    }
    case FamilyTag::HDPT: {
      const T cs = T(1) / std::sinh(x);
      return g * (g - T(1)) * cs * cs - h * (h + T(1)) * sech2 + (h - g) * (h - g);
    }
  }
  return T(0);
}

double potential_value(const Params& p, double x) { return potential_impl(p, x); }
long double potential_value(const Params& p, long double x) { return potential_impl(p, x); }

Rational ContinuumLimits::threshold() const {
  if (left && right) return min(*left, *right);
  if (left) return *left;
  if (right) return *right;
  throw ConsistencyError("potential without a continuum edge");
}

ContinuumLimits continuum_limits(const Params& p) {
  ContinuumLimits c;
  switch (p.family) {
    case FamilyTag::M: c.left = p.h * p.h; break;
    case FamilyTag::S:
    case FamilyTag::HST:
      c.left = p.h * p.h;
      c.right = p.h * p.h;
      break;
    case FamilyTag::RM: {
      const Rational r = p.mu / p.h;
      c.left = (p.h - r) * (p.h - r);
      c.right = (p.h + r) * (p.h + r);
      break;
    }
    case FamilyTag::KH: {
      const Rational r = p.mu / p.g - p.g;
      c.right = r * r;
      break;
    }
    case FamilyTag::HDPT: c.right = (p.h - p.g) * (p.h - p.g); break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Norms

double log_abs_gamma(double x, double y) {
  if (y == 0.0 && x > 0.0) return std::lgamma(x);
  std::complex<double> z(x, y);
  double shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(std::abs(z));
    z += 1.0;
  }
  const std::complex<double> zi = 1.0 / z;
  const std::complex<double> zi2 = zi * zi;
  const std::complex<double> series =
      zi * (1.0 / 12.0 - zi2 * (1.0 / 360.0 - zi2 * (1.0 / 1260.0 - zi2 * (1.0 / 1680.0))));
  const std::complex<double> lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return lg.real() - shift;
}

namespace {

double lgamma_positive(double x) {
  if (x <= 0.0) throw DomainError("norm constant: gamma argument not positive");
  return std::lgamma(x);
}

}  // namespace

double norm_constant(const Params& p, long n) {
  if (n < 0 || n > nmax(p)) throw DomainError("norm_constant requires 0 <= n <= nmax");
  const double h = p.h.to_double();
  const double mu = p.mu.to_double();
  const double g = p.g.to_double();
  const double dn = static_cast<double>(n);
  const double lfact = std::lgamma(dn + 1.0);
  const double ln2 = std::numbers::ln2;
  double lg = 0.0;
  switch (p.family) {
    case FamilyTag::M:
      lg = lgamma_positive(2.0 * h - dn + 1.0) - 2.0 * h * std::log(2.0 * mu) - lfact - std::log(2.0 * (h - dn));
      break;
    case FamilyTag::S:
      lg = (2.0 * h - 2.0 * dn) * ln2 + 2.0 * lgamma_positive(h + 1.0) - lfact - std::log(h - dn) -
           lgamma_positive(2.0 * h - dn + 1.0);
      break;
    case FamilyTag::RM: {
      const double r = h - dn;
      const double q = mu / r;
      lg = (2.0 * h - 2.0 * dn) * ln2 + std::log(r) + lgamma_positive(h + q + 1.0) + lgamma_positive(h - q + 1.0) -
           lfact - std::log(r * r - q * q) - lgamma_positive(2.0 * h - dn + 1.0);
      break;
    }
    case FamilyTag::HST:
      lg = std::log(std::numbers::pi) + lgamma_positive(2.0 * h - dn + 1.0) - 2.0 * h * ln2 - lfact -
           std::log(h - dn) - 2.0 * log_abs_gamma(h - dn + 0.5, mu);
      break;
    case FamilyTag::KH: {
      const double r = g + dn;
      const double q = mu / r;
      lg = std::log(r) + lgamma_positive(1.0 - g + q) + lgamma_positive(2.0 * g + dn) - (2.0 * g + 2.0 * dn) * ln2 -
           lfact - std::log(q * q - r * r) - lgamma_positive(g + q);
      break;
    }
    case FamilyTag::HDPT:
      lg = lgamma_positive(dn + g + 0.5) + lgamma_positive(h - g - dn + 1.0) - ln2 - lfact -
           std::log(h - g - 2.0 * dn) - lgamma_positive(h - dn + 0.5);
      break;
  }
  return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Energy curves

bool CurveRegion::contains(const Rational& n) const {
  if (closed) return lo && hi && *lo <= n && n <= *hi;
  if (lo && !(*lo < n)) return false;
  if (hi && !(n < *hi)) return false;
  return true;
}

std::vector<CurveRegion> curve_regions(const Params& p) {
  std::vector<CurveRegion> r;
  r.push_back({"a", Rational(0), Rational(nmax(p)), true});
  switch (p.family) {
    case FamilyTag::M:
    case FamilyTag::S:
    case FamilyTag::HST:
      r.push_back({"b", Rational(2) * p.h, std::nullopt, false});
      r.push_back({"c", std::nullopt, Rational(0), false});
      break;
    case FamilyTag::HDPT:
      r.push_back({"b", p.h - p.g, std::nullopt, false});
      r.push_back({"c", std::nullopt, Rational(0), false});
      break;
    case FamilyTag::RM: {
      const Rational q = p.mu / p.h;
      r.push_back({"b1", p.h - q, p.h, false});
      r.push_back({"b2", p.h, p.h + q, false});
      r.push_back({"b3", Rational(2) * p.h, std::nullopt, false});
      r.push_back({"c", std::nullopt, Rational(0), false});
      break;
    }
    case FamilyTag::KH:
      r.push_back({"b", p.mu / p.g - p.g, std::nullopt, false});
      // twisted seeds v sit at n = -v-1
      r.push_back({"c1", -p.g, Rational(0), false});
      r.push_back({"c2", Rational(-2) * p.g, -p.g, false});
      r.push_back({"c3", std::nullopt, -p.mu / p.g - p.g, false});
      break;
  }
  return r;
}

EnergyCurve energy_curve(const Params& p, const Rational& n_lo, const Rational& n_hi, const Rational& step) {
  if (step.sign() <= 0) throw DomainError("energy curve step must be positive");
  if (n_hi < n_lo) throw DomainError("energy curve range is empty");
  EnergyCurve out;
  out.regions = curve_regions(p);
  for (const auto& reg : out.regions) {
    if (reg.label.front() == 'b') out.negative_energy_regions.push_back(reg);
  }
  const long top = nmax(p);
  for (Rational n = n_lo; n <= n_hi; n += step) {
    Rational e;
    try {
      e = eigen_energy(p, n);
    } catch (const DomainError&) {
      out.skipped_poles.push_back(n);
      continue;
    }
    CurveSample s{n, e, "-", false};
    for (const auto& reg : out.regions) {
      if (reg.contains(n)) {
        s.region = reg.label;
        break;
      }
    }
    s.discrete = n.is_integer() && n.sign() >= 0 && n <= Rational(top);
    if (s.region == "a" && !n.is_integer()) s.region = "-";
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace ratext
