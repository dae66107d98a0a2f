#include "ratext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace ratext {

namespace {

PolyQ eta_poly() { return PolyQ::x(); }
PolyQ cst(const Rational& c) { return PolyQ(GaussianRational(c)); }

long half_m(long m) { return m * (m - 1) / 2; }

// Data of the differentiation scheme (F P)^{(k)} = F r^k Q_k(eta):
//   Q_{k+1} = (lF + k lr) Q_k + e Q_k',
// with lF = F'/(F r), lr = r'/r^2 and e = eta'/r polynomials in eta.
struct DiffScheme {
  PrefactorExponents r;
  PolyQ lr;
  PolyQ e;
};

DiffScheme diff_scheme(FamilyTag family) {
  const PolyQ x = eta_poly();
  DiffScheme s;
  switch (family) {
    case FamilyTag::M:
      s.r.rate = Rational(1);
      s.lr = x;
      s.e = -(x * x);
      break;
    case FamilyTag::S:
    case FamilyTag::HST:
      s.r.cosh_pow = Rational(-1);
      s.lr = -x;
      s.e = cst(1) + x * x;
      break;
    case FamilyTag::RM:
    case FamilyTag::KH: s.e = cst(1) - x * x; break;
    case FamilyTag::HDPT:
      s.r.sinh_pow = Rational(-1);
      s.r.cosh_pow = Rational(-1);
      s.lr = -x;
      s.e = x * x - cst(1);
      break;
  }
  return s;
}

PolyQ prefactor_logderiv_poly(FamilyTag family, const PrefactorExponents& F) {
  const PolyQ x = eta_poly();
  const auto need_zero = [&](const Rational& v, const char* what) {
    if (!v.is_zero()) {
      throw ConsistencyError(std::string("prefactor exponent ") + what + " not representable for " +
                             family_name(family));
    }
  };
  if (family != FamilyTag::M) need_zero(F.exp_coef, "exp_coef");
  switch (family) {
    case FamilyTag::M:
      need_zero(F.sinh_pow, "sinh");
      need_zero(F.cosh_pow, "cosh");
      need_zero(F.atan_coef, "atan");
      return F.rate * x + cst(F.exp_coef);
    case FamilyTag::S:
    case FamilyTag::HST:
      need_zero(F.rate, "rate");
      need_zero(F.sinh_pow, "sinh");
      return F.cosh_pow * x + cst(F.atan_coef);
    case FamilyTag::RM:
      need_zero(F.sinh_pow, "sinh");
      need_zero(F.atan_coef, "atan");
      return cst(F.rate) + F.cosh_pow * x;
    case FamilyTag::KH:
      need_zero(F.cosh_pow, "cosh");
      need_zero(F.atan_coef, "atan");
      return cst(F.rate) + F.sinh_pow * x;
    case FamilyTag::HDPT: {
      need_zero(F.rate, "rate");
      need_zero(F.atan_coef, "atan");
      const Rational half(1, 2);
      return (F.sinh_pow * half) * (x + cst(1)) + (F.cosh_pow * half) * (x - cst(1));
    }
  }
  throw ConsistencyError("unknown family tag");
}

// (eta'/c_F) as an exponent record.
PrefactorExponents deta_over_cf(FamilyTag family) {
  PrefactorExponents e;
  switch (family) {
    case FamilyTag::M: e.rate = Rational(-1); break;
    case FamilyTag::S:
    case FamilyTag::HST: e.cosh_pow = Rational(1); break;
    case FamilyTag::HDPT:
      e.sinh_pow = Rational(1);
      e.cosh_pow = Rational(1);
      break;
    default: throw ConsistencyError("eta'/c_F only defined for Group A");
  }
  return e;
}

long even_half(const Rational& v, const char* what) {
  if (!v.is_integer() || v.floor() % 2 != 0) {
    throw ConsistencyError(std::string("prefactor difference in ") + what + " is not an even integer: " +
                           v.to_string());
  }
  return v.to_long() / 2;
}

void mul_power(PolyQ& num, PolyQ& den, const PolyQ& base, long k) {
  if (k > 0) num *= base.pow(static_cast<unsigned>(k));
  if (k < 0) den *= base.pow(static_cast<unsigned>(-k));
}

}  // namespace

WronskianForm wronskian_direct(FamilyTag family, std::span<const SeedFunction> fs) {
  const DiffScheme s = diff_scheme(family);
  const std::size_t m = fs.size();
  WronskianForm out;
  std::vector<std::vector<PolyQ>> q(m, std::vector<PolyQ>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const PolyQ lf = prefactor_logderiv_poly(family, fs[j].prefactor);
    PolyQ cur = fs[j].poly;
    for (std::size_t k = 0; k < m; ++k) {
      q[k][j] = cur;
      if (k + 1 < m) cur = (lf + Rational(static_cast<long>(k)) * s.lr) * cur + s.e * cur.derivative();
    }
    out.prefactor += fs[j].prefactor;
  }
  out.prefactor += Rational(half_m(static_cast<long>(m))) * s.r;
  out.poly = determinant<PolyQ>(q, PolyQ(), PolyQ(GaussianRational(1)));
  return out;
}

PolyQ normalize_to(FamilyTag family, const WronskianForm& form, const PrefactorExponents& target,
                   const Rational& target_scale) {
  const PrefactorExponents d = form.prefactor - target;
  if (!d.exp_coef.is_zero() || !d.atan_coef.is_zero()) {
    throw ConsistencyError("prefactor difference has exponential or arctangent part");
  }
  const PolyQ x = eta_poly();
  PolyQ num(GaussianRational(form.scale / target_scale));
  PolyQ den(GaussianRational(1));
  const auto zero_or_fail = [&](const Rational& v, const char* what) {
    if (!v.is_zero()) throw ConsistencyError(std::string("prefactor difference in ") + what + " for " +
                                             family_name(family) + ": " + v.to_string());
  };
  switch (family) {
    case FamilyTag::M:
      zero_or_fail(d.sinh_pow, "sinh");
      zero_or_fail(d.cosh_pow, "cosh");
      if (!d.rate.is_integer()) zero_or_fail(d.rate, "rate");
      mul_power(num, den, x, -d.rate.to_long());  // e^{k x} = eta^{-k}
      break;
    case FamilyTag::S:
    case FamilyTag::HST:
      zero_or_fail(d.rate, "rate");
      zero_or_fail(d.sinh_pow, "sinh");
      mul_power(num, den, cst(1) + x * x, even_half(d.cosh_pow, "cosh"));
      break;
    case FamilyTag::RM:
    case FamilyTag::KH:
      zero_or_fail(d.rate, "rate");
      zero_or_fail(d.sinh_pow, "sinh");
      zero_or_fail(d.cosh_pow, "cosh");
      break;
    case FamilyTag::HDPT: {
      zero_or_fail(d.rate, "rate");
      const Rational half(1, 2);
      mul_power(num, den, half * (x - cst(1)), even_half(d.sinh_pow, "sinh"));
      mul_power(num, den, half * (x + cst(1)), even_half(d.cosh_pow, "cosh"));
      break;
    }
  }
  return exact_div(form.poly * num, den);
}

long ell_generic(std::span<const long> degrees) {
  long s = 0;
  for (long d : degrees) s += d;
  return s - half_m(static_cast<long>(degrees.size()));
}

WronskianForm group_a_form(const Params& formal, std::span<const long> degrees) {
  const Family fam = family_info(formal.family);
  if (fam.group != Group::A) throw DomainError("group_a_form requires a Group A family");
  const long m = static_cast<long>(degrees.size());
  std::vector<PolyQ> ps;
  ps.reserve(degrees.size());
  for (long d : degrees) ps.push_back(eigen_polynomial(formal, d));
  WronskianForm w;
  w.poly = poly_wronskian(ps) * GaussianRational(fam.c_F.pow(half_m(m)));
  w.prefactor = Rational(m) * phi0_prefactor(formal) + Rational(half_m(m)) * deta_over_cf(formal.family);
  return w;
}

WronskianForm group_b_form(const Params& formal, std::span<const long> degrees) {
  if (family_info(formal.family).group != Group::B) throw DomainError("group_b_form requires a Group B family");
  const std::size_t m = degrees.size();
  std::vector<std::vector<PolyQ>> x(m, std::vector<PolyQ>(m));
  WronskianForm w;
  for (std::size_t k = 0; k < m; ++k) {
    const long d = degrees[k];
    Rational coef(1);
    for (std::size_t j = 0; j < m; ++j) {
      // row j (0-based) carries prod_{i<j} f_{d-i}(lambda + i delta) P_{d-j}(lambda + j delta)
      const long deg = d - static_cast<long>(j);
      if (deg < 0) break;
      if (j > 0) coef *= forward_shift_coefficient(formal.shifted(static_cast<long>(j) - 1), deg + 1);
      x[j][k] = eigen_polynomial(formal.shifted(static_cast<long>(j)), deg) * GaussianRational(coef);
    }
    w.prefactor += phi0_prefactor(formal, d);
  }
  w.poly = determinant<PolyQ>(x, PolyQ(), PolyQ(GaussianRational(1)));
  return w;
}

WronskianForm eigen_wronskian_form(const Params& formal, std::span<const long> degrees) {
  return family_info(formal.family).group == Group::A ? group_a_form(formal, degrees)
                                                      : group_b_form(formal, degrees);
}

// ---------------------------------------------------------------------------
// Specs

namespace {

enum class Route { Empty, Plain, Uniform, HdptTwist };

struct Layout {
  Route route = Route::Empty;
  Params formal;  // shared seed parameters for Plain / Uniform
  long m1 = 0;    // hDPT twist counts
  long m2 = 0;
};

bool is_twist(const SeedKind& k) { return k.tag != SeedKindTag::Eigen && k.tag != SeedKindTag::Overshoot; }

Layout layout_of(const ExtensionSpec& spec) {
  Layout l;
  l.formal = spec.params;
  if (spec.seeds.empty()) return l;
  const bool hdpt = spec.params.family == FamilyTag::HDPT;
  bool any_hdpt_12 = false;
  for (const auto& k : spec.seeds) {
    if (hdpt && k.tag == SeedKindTag::TwistedI) ++l.m1;
    if (hdpt && k.tag == SeedKindTag::TwistedII) ++l.m2;
    any_hdpt_12 = any_hdpt_12 || (hdpt && (k.tag == SeedKindTag::TwistedI || k.tag == SeedKindTag::TwistedII));
  }
  if (any_hdpt_12) {
    l.route = Route::HdptTwist;
    return l;
  }
  if (is_twist(spec.seeds.front())) {
    l.route = Route::Uniform;
    l.formal = twisted_params(spec.params, spec.seeds.front().tag);
  } else {
    l.route = Route::Plain;
  }
  return l;
}

// hDPT mixed-twist prefactors A_D (extra = 0) and A_{D,n} (extra = 1).
PrefactorExponents hdpt_twist_prefactor(const Params& p, long m1, long m2, long extra) {
  PrefactorExponents a;
  const Rational M1(m1), M2(m2);
  const Rational half(1, 2);
  if (extra == 0) {
    a.sinh_pow = p.g * (M1 - M2) + half * M1 * (M1 - 1) + half * M2 * (M2 + 1) - M1 * M2;
    a.cosh_pow = -p.h * (M2 - M1) + half * M1 * (M1 + 1) + half * M2 * (M2 - 1) - M1 * M2;
  } else {
    a.sinh_pow = p.g * (M1 - M2 + 1) + half * M1 * (M1 + 1) + half * M2 * (M2 - 1) - M1 * M2;
    a.cosh_pow = -p.h * (M2 - M1 + 1) + half * M1 * (M1 - 1) + half * M2 * (M2 + 1) - M1 * M2;
  }
  return a;
}

std::vector<SeedFunction> seed_functions(const std::vector<Seed>& seeds) {
  std::vector<SeedFunction> fs;
  fs.reserve(seeds.size());
  for (const auto& s : seeds) fs.push_back({s.prefactor, s.poly});
  return fs;
}

SeedFunction eigen_function(const Params& p, long n) { return {eigen_prefactor(p, n), eigen_polynomial(p, n)}; }

}  // namespace

ExtensionSpec ExtensionSpec::make(Params params, std::vector<SeedKind> seeds) {
  ExtensionSpec s{std::move(params), std::move(seeds)};
  s.validate();
  return s;
}

std::vector<Seed> ExtensionSpec::make_seeds() const {
  std::vector<Seed> out;
  out.reserve(seeds.size());
  for (const auto& k : seeds) out.push_back(make_seed(params, k));
  return out;
}

std::vector<long> ExtensionSpec::degrees() const {
  std::vector<long> d;
  d.reserve(seeds.size());
  for (const auto& k : seeds) d.push_back(k.v);
  return d;
}

std::string ExtensionSpec::to_string() const {
  std::ostringstream os;
  os << params.to_string() << " D={";
  for (std::size_t i = 0; i < seeds.size(); ++i) os << (i ? ", " : "") << seeds[i].to_string();
  os << "}";
  return os.str();
}

void ExtensionSpec::validate() const {
  params.validate();
  const auto fail = [&](const std::string& why) { throw InvalidSpecError("invalid extension " + to_string() + ": " + why); };
  const std::vector<Seed> ss = make_seeds();
  long n1 = 0, n2 = 0, n3 = 0;
  bool overshoot = false, twist = false;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (!ss[i].kind.is_virtual()) fail("eigen seeds are not allowed (Krein-Adler deletions are out of scope)");
    for (std::size_t j = 0; j < i; ++j) {
      if (ss[i].formal == ss[j].formal && ss[i].kind.v == ss[j].kind.v) fail("duplicate seed " + ss[i].kind.to_string());
    }
    switch (ss[i].boundary_type) {
      case BoundaryType::TypeI: ++n1; break;
      case BoundaryType::TypeII: ++n2; break;
      case BoundaryType::TypeIII: ++n3; break;
      case BoundaryType::Eigen: break;
    }
    (is_twist(ss[i].kind) ? twist : overshoot) = true;
  }
  if (n3 > 0 && n1 + n2 > 0) fail("pseudo-virtual seeds cannot be mixed with virtual seeds");
  if (n3 > 1 && !params.half_integer_mode) fail("at most one pseudo-virtual seed");
  if (params.family != FamilyTag::HDPT && n1 > 0 && n2 > 0) fail("type I and type II seeds cannot be mixed");
  if (overshoot && twist) fail("overshoot and twisted seeds cannot be mixed");
  if (twist) {
    SeedKindTag first = ss.front().kind.tag;
    for (const auto& s : ss) {
      const bool both_12 = params.family == FamilyTag::HDPT &&
                           (s.kind.tag == SeedKindTag::TwistedI || s.kind.tag == SeedKindTag::TwistedII) &&
                           (first == SeedKindTag::TwistedI || first == SeedKindTag::TwistedII);
      if (!(s.formal == ss.front().formal) && !both_12) fail("twisted seeds of different kinds cannot be mixed");
    }
  }
  const bool half_line = params.family == FamilyTag::KH || params.family == FamilyTag::HDPT;
  if (half_line && n1 + n2 > 0 && params.g <= Rational(3, 2)) fail("requires g > 3/2");
  if (half_line && n1 > 0 && params.g <= Rational(static_cast<long>(ss.size()) - 1)) {
    fail("type I deletions require g > M - 1");
  }
}

WronskianForm denominator_form(const ExtensionSpec& spec) {
  const Layout l = layout_of(spec);
  switch (l.route) {
    case Route::Empty: return WronskianForm{Rational(1), {}, PolyQ(GaussianRational(1))};
    case Route::Plain:
    case Route::Uniform: {
      const std::vector<long> d = spec.degrees();
      return eigen_wronskian_form(l.formal, d);
    }
    case Route::HdptTwist: {
      const std::vector<SeedFunction> fs = seed_functions(spec.make_seeds());
      const WronskianForm raw = wronskian_direct(spec.params.family, fs);
      const long m = static_cast<long>(fs.size());
      WronskianForm w;
      w.scale = family_info(FamilyTag::HDPT).c_F.pow(-half_m(m));
      w.prefactor = hdpt_twist_prefactor(spec.params, l.m1, l.m2, 0);
      w.poly = normalize_to(FamilyTag::HDPT, raw, w.prefactor, w.scale);
      return w;
    }
  }
  throw ConsistencyError("unknown route");
}

WronskianForm numerator_form(const ExtensionSpec& spec, long n) {
  if (n < 0 || n > nmax(spec.params)) {
    throw DomainError("eigen index " + std::to_string(n) + " outside 0.." + std::to_string(nmax(spec.params)));
  }
  const Layout l = layout_of(spec);
  if (l.route == Route::Empty || l.route == Route::Plain) {
    std::vector<long> d = spec.degrees();
    if (std::find(d.begin(), d.end(), n) != d.end()) {
      throw InvalidSpecError("eigen index " + std::to_string(n) + " duplicates a seed degree");
    }
    d.push_back(n);
    return eigen_wronskian_form(spec.params, d);
  }
  std::vector<SeedFunction> fs = seed_functions(spec.make_seeds());
  fs.push_back(eigen_function(spec.params, n));
  const WronskianForm raw = wronskian_direct(spec.params.family, fs);
  if (l.route == Route::Uniform) return raw;
  const long m = static_cast<long>(fs.size()) - 1;
  WronskianForm w;
  w.scale = family_info(FamilyTag::HDPT).c_F.pow(-half_m(m + 1));
  w.prefactor = hdpt_twist_prefactor(spec.params, l.m1, l.m2, 1);
  w.poly = normalize_to(FamilyTag::HDPT, raw, w.prefactor, w.scale);
  return w;
}

PolyQ xi_polynomial(const ExtensionSpec& spec) { return denominator_form(spec).poly; }

PolyQ extended_eigen_polynomial(const ExtensionSpec& spec, long n) { return numerator_form(spec, n).poly; }

long extension_degree(const ExtensionSpec& spec) {
  const Layout l = layout_of(spec);
  std::vector<long> d = spec.degrees();
  if (l.route == Route::HdptTwist) {
    long s = 0;
    for (long v : d) s += v;
    return s - half_m(l.m1) - half_m(l.m2) + l.m1 * l.m2;
  }
  const Params& p = spec.params;
  const Rational two_h = Rational(2) * p.h;
  if (p.family == FamilyTag::RM && p.half_integer_mode && two_h.is_integer() && l.route == Route::Plain) {
    for (long& v : d) {
      if (Rational(v) > two_h) v -= two_h.to_long() + 1;
    }
  }
  return ell_generic(d);
}

// ---------------------------------------------------------------------------
// Nodes

NodelessReport check_nodeless(const ExtensionSpec& spec) {
  NodelessReport r;
  const PolyQ xi = xi_polynomial(spec);
  const RootCount rc = sturm_root_report(xi, eta_interval(spec.params.family));
  r.root_count = rc.count;
  r.degenerate = rc.root_at_lo || rc.root_at_hi;
  r.nodeless = rc.count == 0 && !r.degenerate;
  const Layout l = layout_of(spec);
  if (l.route == Route::HdptTwist && l.m1 > 0 && l.m2 > 0) {
    bool agree = true;
    for (std::size_t k = 1; k <= spec.seeds.size(); ++k) {
      ExtensionSpec sub{spec.params, std::vector<SeedKind>(spec.seeds.begin(), spec.seeds.begin() + k)};
      const PolyQ x = xi_polynomial(sub);
      agree = agree && sign_near(x, Rational(1), true) == sign_at_infinity(x, true);
    }
    r.endpoint_signs_agree = agree;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Evaluators

namespace {

// d/deta log P and d^2/dx^2 log P(eta(x)) pieces at a rational point.
Rational dlog_dx(const PolyQ& p, FamilyTag tag, const Rational& t) {
  const Rational e = eta_at(tag, t);
  return deta_dx_at(tag, t) * p.derivative().eval_real(e) / p.eval_real(e);
}

Rational d2log_dx2(const PolyQ& p, FamilyTag tag, const Rational& t) {
  const Rational e = eta_at(tag, t);
  const PolyQ d1 = p.derivative();
  const Rational p0 = p.eval_real(e);
  const Rational r1 = d1.eval_real(e) / p0;
  const Rational r2 = d1.derivative().eval_real(e) / p0;
  const Rational e1 = deta_dx_at(tag, t);
  return d2eta_dx2_at(tag, t) * r1 + e1 * e1 * (r2 - r1 * r1);
}

}  // namespace

double RatioFunction::log_abs(double x) const {
  const double e = eta_at(family, x);
  return log_abs_rational(scale) + prefactor.log_abs(x) + ScaledPoly(num).log_abs(e) - ScaledPoly(den).log_abs(e);
}

int RatioFunction::sign(double x) const {
  const double e = eta_at(family, x);
  return scale.sign() * ScaledPoly(num).sign(e) * ScaledPoly(den).sign(e);
}

double RatioFunction::operator()(double x) const {
  const int s = sign(x);
  if (s == 0) return 0.0;
  return s * std::exp(log_abs(x));
}

Rational RatioFunction::logderiv(const Rational& t) const {
  return prefactor.logderiv(t) + dlog_dx(num, family, t) - dlog_dx(den, family, t);
}

Rational RatioFunction::logderiv_dx(const Rational& t) const {
  return prefactor.logderiv_dx(t) + d2log_dx2(num, family, t) - d2log_dx2(den, family, t);
}

PotentialEvaluator::PotentialEvaluator(Params params, PrefactorExponents prefactor, PolyQ xi, bool singular)
    : params_(std::move(params)),
      prefactor_(std::move(prefactor)),
      xi_(std::move(xi)),
      xi1_(xi_.derivative()),
      xi2_(xi1_.derivative()),
      scaled_(xi_),
      singular_(singular) {}

Rational PotentialEvaluator::exact(const Rational& t) const {
  return potential_value(params_, t) - Rational(2) * (prefactor_.logderiv_dx(t) + d2log_dx2(xi_, params_.family, t));
}

double PotentialEvaluator::operator()(double x) const {
  const FamilyTag tag = params_.family;
  const long double xl = x;
  const auto [r1, r2] = scaled_.log_derivs(eta_at(tag, xl));
  const long double e1 = deta_dx_at(tag, xl);
  const long double d2 = d2eta_dx2_at(tag, xl) * r1 + e1 * e1 * (r2 - r1 * r1);
  return static_cast<double>(potential_value(params_, xl) - 2.0L * (prefactor_.logderiv_dx(xl) + d2));
}

PotentialEvaluator extended_potential(const ExtensionSpec& spec) {
  const WronskianForm w = denominator_form(spec);
  const NodelessReport r = check_nodeless(spec);
  return PotentialEvaluator(spec.params, w.prefactor, w.poly, !r.nodeless);
}

double extended_norm(const ExtensionSpec& spec, long n) {
  const Rational en = eigen_energy(spec.params, Rational(n));
  double prod = norm_constant(spec.params, n);
  for (const auto& k : spec.seeds) prod *= (en - seed_energy(spec.params, k)).to_double();
  return prod;
}

RatioFunction extended_eigenfunction(const ExtensionSpec& spec, long n) {
  const WronskianForm num = numerator_form(spec, n);
  const WronskianForm den = denominator_form(spec);
  return RatioFunction{spec.params.family, num.scale / den.scale, num.prefactor - den.prefactor, num.poly, den.poly};
}

// ---------------------------------------------------------------------------
// Shifts and dualities

ExtensionSpec shifted_set(const ExtensionSpec& spec, int direction) {
  if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
  const Layout l = layout_of(spec);
  const auto bad = [&](const std::string& why) { throw InvalidSpecError("no shifted set for " + spec.to_string() + ": " + why); };
  long step = 0;
  switch (l.route) {
    case Route::Empty: break;
    case Route::HdptTwist: step = 0; break;
    case Route::Plain:
      if (direction != -1) bad("overshoot sets shift downwards");
      step = -1;
      break;
    case Route::Uniform:
      if (spec.params.family != FamilyTag::KH) bad("only Kh twists shift upwards");
      if (direction != 1) bad("Kh twisted sets shift upwards");
      step = 1;
      break;
  }
  std::vector<SeedKind> ks = spec.seeds;
  for (auto& k : ks) k.v += step;
  try {
    return ExtensionSpec::make(spec.params.shifted_valid(1), std::move(ks));
  } catch (const InvalidSpecError&) {
    throw;
  } catch (const DomainError& e) {
    throw InvalidSpecError(std::string("shifted set leaves the valid range: ") + e.what());
  }
}

namespace {

void require_dual_available(const ExtensionSpec& spec) {
  const Params& p = spec.params;
  const Rational two_h = Rational(2) * p.h;
  switch (p.family) {
    case FamilyTag::RM:
      if (!two_h.is_integer()) throw EquivalenceUnavailableError("RM duality needs 2h integer, got h = " + p.h.to_string());
      break;
    case FamilyTag::S:
      if (!two_h.is_integer() || two_h.floor() % 2 == 0) {
        throw EquivalenceUnavailableError("soliton duality needs h half an odd integer, got h = " + p.h.to_string());
      }
      break;
    case FamilyTag::HST: throw EquivalenceUnavailableError("no degree reduction for hst: equivalence does not hold");
    default: throw EquivalenceUnavailableError("Krein-Adler duality only for RM and s");
  }
  for (const auto& k : spec.seeds) {
    if (k.tag != SeedKindTag::Overshoot || Rational(k.v) <= two_h) {
      throw InvalidSpecError("duality needs overshoot seeds with d > 2h, got " + k.to_string());
    }
  }
}

}  // namespace

KreinAdlerDual krein_adler_dual(const ExtensionSpec& spec, std::optional<long> N) {
  require_dual_available(spec);
  if (spec.seeds.empty()) throw InvalidSpecError("duality needs at least one seed");
  const long shift = (Rational(2) * spec.params.h).to_long() + 1;
  KreinAdlerDual out;
  long maxd = 0, maxr = 0;
  for (const auto& k : spec.seeds) {
    out.reduced.push_back(k.v - shift);
    maxd = std::max(maxd, k.v);
    maxr = std::max(maxr, k.v - shift);
  }
  out.N = N.value_or(maxd - 1);
  if (out.N < maxr) {
    throw InvalidSpecError("N = " + std::to_string(out.N) + " below max reduced degree " + std::to_string(maxr));
  }
  std::set<long> removed;
  for (long r : out.reduced) removed.insert(out.N - r);
  for (long e = 0; e <= out.N; ++e) {
    if (!removed.count(e)) out.bar_degrees.push_back(e);
  }
  const Params q = spec.params.shifted(-(out.N + 1));
  out.bar_params = Params::make(q.family, q.h, q.mu, q.g, true);
  return out;
}

PolyQ krein_adler_reduced_xi(const ExtensionSpec& spec) {
  require_dual_available(spec);
  const PolyQ xi = xi_polynomial(spec);
  if (spec.params.family != FamilyTag::S) return xi;
  const long e = (spec.params.h + Rational(1, 2)).to_long() * static_cast<long>(spec.seeds.size());
  const PolyQ base = cst(1) + eta_poly() * eta_poly();
  return exact_div(xi, base.pow(static_cast<unsigned>(e)));
}

AddedState added_bound_state(const ExtensionSpec& spec) {
  if (spec.seeds.size() != 1) throw InvalidSpecError("added bound state needs exactly one pseudo-virtual seed");
  const Seed s = make_seed(spec.params, spec.seeds.front());
  if (s.boundary_type != BoundaryType::TypeIII) {
    throw InvalidSpecError("seed " + s.kind.to_string() + " is type " + boundary_type_name(s.boundary_type) +
                           ", not pseudo-virtual");
  }
  const NodelessReport r = check_nodeless(spec);
  if (!r.nodeless) {
    throw SingularExtensionError("seed " + s.kind.to_string() + " has " + std::to_string(r.root_count) +
                                 " node(s); the extension is singular");
  }
  RatioFunction f;
  f.family = spec.params.family;
  f.prefactor = Rational(-1) * s.prefactor;
  f.den = s.poly;
  return {s.energy, f};
}

ExtendedSystem extend(const ExtensionSpec& spec) {
  spec.validate();
  ExtendedSystem sys;
  sys.spec = spec;
  sys.seeds = spec.make_seeds();
  sys.denominator = denominator_form(spec);
  sys.xi = sys.denominator.poly;
  sys.ell = extension_degree(spec);
  sys.degenerate = sys.xi.degree() != sys.ell;
  sys.nodes = check_nodeless(spec);
  for (long n = 0; n <= nmax(spec.params); ++n) sys.spectrum.push_back({n, eigen_energy(spec.params, Rational(n)), false});
  for (const auto& s : sys.seeds) {
    if (s.boundary_type == BoundaryType::TypeIII) sys.spectrum.push_back({s.kind.v, s.energy, true});
  }
  std::sort(sys.spectrum.begin(), sys.spectrum.end(),
            [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.energy < b.energy; });
  return sys;
}

}  // namespace ratext
