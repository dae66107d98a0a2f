#include "ratext/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ratext {

std::string shape_variant_name(ShapeVariant v) {
  switch (v) {
    case ShapeVariant::Minus: return "minus";
    case ShapeVariant::Plus: return "plus";
    case ShapeVariant::Fixed: return "fixed";
  }
  return "?";
}

ShapeVariant parse_shape_variant(std::string_view s) {
  std::string low;
  for (char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "minus" || low == "-") return ShapeVariant::Minus;
  if (low == "plus" || low == "+") return ShapeVariant::Plus;
  if (low == "fixed" || low == "0") return ShapeVariant::Fixed;
  throw DomainError("unknown shape-invariance variant '" + std::string(s) + "'");
}

namespace {

bool all_tag(const ExtensionSpec& spec, std::initializer_list<SeedKindTag> tags) {
  return std::all_of(spec.seeds.begin(), spec.seeds.end(), [&](const SeedKind& k) {
    return std::find(tags.begin(), tags.end(), k.tag) != tags.end();
  });
}

void require_variant(const ExtensionSpec& spec, ShapeVariant v) {
  const FamilyTag f = spec.params.family;
  const auto fail = [&](const std::string& why) {
    throw InvalidSpecError("shape invariance (" + shape_variant_name(v) + ") not applicable to " + spec.to_string() +
                           ": " + why);
  };
  if (spec.seeds.empty()) fail("empty seed set");
  switch (v) {
    case ShapeVariant::Minus:
      if (!all_tag(spec, {SeedKindTag::Overshoot})) fail("needs overshoot seeds");
      if (f == FamilyTag::S || f == FamilyTag::HST) fail("pseudo-virtual overshoot family");
      if (f == FamilyTag::M) {
        for (const auto& k : spec.seeds) {
          if (k.v < 2) fail("Morse needs min d >= 2");
        }
      }
      break;
    case ShapeVariant::Plus:
      if (f != FamilyTag::KH || !all_tag(spec, {SeedKindTag::TwistedII, SeedKindTag::TwistedIII})) {
        fail("needs Kh twisted seeds");
      }
      break;
    case ShapeVariant::Fixed:
      if (f != FamilyTag::HDPT || !all_tag(spec, {SeedKindTag::TwistedI, SeedKindTag::TwistedII})) {
        fail("needs hDPT type I/II twists");
      }
      break;
  }
}

// Rational function of t whose zeros or poles must be avoided at a sample.
bool regular_at(const RatioFunction& f, const Rational& t) {
  const Rational e = eta_at(f.family, t);
  return !f.num.eval_real(e).is_zero() && !f.den.eval_real(e).is_zero();
}

long sample_bound(std::initializer_list<const RatioFunction*> fs) {
  long deg = 4;
  for (const auto* f : fs) deg += f->num.degree() + f->den.degree() + 2;
  // eta has t-degree <= 4; the identity is quadratic in the log-derivatives
  return 8 * deg + 1;
}

}  // namespace

ShapeVariant default_shape_variant(const ExtensionSpec& spec) {
  if (all_tag(spec, {SeedKindTag::Overshoot})) return ShapeVariant::Minus;
  if (spec.params.family == FamilyTag::KH) return ShapeVariant::Plus;
  return ShapeVariant::Fixed;
}

namespace {

std::optional<Rational> sample_at(FamilyTag family, long k) {
  Rational t(2 * k + 3, k + 2);
  if (x_domain(family) == XDomain::FullLine && k % 2 == 1) t = t.inverse();
  if (!t_in_domain(family, t)) return std::nullopt;
  return t;
}

}  // namespace

std::vector<Rational> sample_points(FamilyTag family, long count, long start) {
  std::vector<Rational> ts;
  for (long k = start; static_cast<long>(ts.size()) < count; ++k) {
    if (auto t = sample_at(family, k)) ts.push_back(*t);
  }
  return ts;
}

IdentityReport verify_shape_invariance(const ExtensionSpec& spec, ShapeVariant variant,
                                       std::optional<XiMutation> mutation) {
  spec.validate();
  require_variant(spec, variant);
  const ExtensionSpec shifted = variant == ShapeVariant::Fixed
                                    ? shifted_set(spec, 1)
                                    : shifted_set(spec, variant == ShapeVariant::Minus ? -1 : 1);
  RatioFunction lhs = extended_eigenfunction(spec, 0);
  const RatioFunction rhs = extended_eigenfunction(shifted, 0);
  if (mutation) {
    if (mutation->index >= lhs.den.coeffs().size()) throw DomainError("mutation index beyond deg Xi_D");
    lhs.den = lhs.den.with_coeff(mutation->index, lhs.den.coeff(mutation->index) + GaussianRational(mutation->delta));
  }
  const Rational e1 = eigen_energy(spec.params, Rational(1));

  IdentityReport r;
  r.id = "shape-invariance-" + shape_variant_name(variant);
  const long need = std::max<long>(64, sample_bound({&lhs, &rhs}));
  const FamilyTag f = spec.params.family;
  long k = 0;
  while (r.sample_count < need) {
    const auto ot = sample_at(f, k++);
    if (!ot) continue;
    const Rational& t = *ot;
    if (!regular_at(lhs, t) || !regular_at(rhs, t) || deta_dx_at(f, t).is_zero()) {
      ++r.skipped_poles;
      continue;
    }
    const Rational a = lhs.logderiv(t), b = rhs.logderiv(t);
    const Rational res = a * a - lhs.logderiv_dx(t) - (b * b + rhs.logderiv_dx(t) + e1);
    if (res.abs() > r.max_residual) r.max_residual = res.abs();
    ++r.sample_count;
  }
  r.pass = r.max_residual.is_zero();
  return r;
}

namespace {

// F(t)^2 for a prefactor whose doubled exponents are integers.
Rational prefactor_square(const PrefactorExponents& F, const Rational& t) {
  if (!F.exp_coef.is_zero() || !F.atan_coef.is_zero()) {
    throw ConsistencyError("prefactor ratio is not rational in t");
  }
  const HyperbolicAt hy(t);
  const auto ipow = [](const Rational& base, const Rational& e2) {
    if (!e2.is_integer()) throw ConsistencyError("prefactor ratio has a non-half-integer exponent");
    return base.pow(e2.to_long());
  };
  const Rational two(2);
  Rational v = ipow(t, two * F.rate) * ipow(hy.cosh, two * F.cosh_pow);
  if (!F.sinh_pow.is_zero()) v *= ipow(hy.sinh, two * F.sinh_pow);
  return v;
}

}  // namespace

IdentityReport verify_ddx_wronskian(const ExtensionSpec& spec, long s, const Rational& energy_offset) {
  if (s < 1 || static_cast<std::size_t>(s + 1) > spec.seeds.size()) {
    throw InvalidSpecError("ddxW needs s >= 1 and at least s + 1 seeds");
  }
  const auto sub = [&](std::vector<std::size_t> idx) {
    std::vector<SeedKind> ks;
    for (auto i : idx) ks.push_back(spec.seeds[i]);
    return ExtensionSpec::make(spec.params, std::move(ks));
  };
  std::vector<std::size_t> base;
  for (long i = 0; i + 1 < s; ++i) base.push_back(static_cast<std::size_t>(i));
  const std::size_t is = static_cast<std::size_t>(s - 1), is1 = static_cast<std::size_t>(s);
  auto with = [&](std::initializer_list<std::size_t> extra) {
    std::vector<std::size_t> v = base;
    v.insert(v.end(), extra);
    return v;
  };
  const WronskianForm w0 = denominator_form(sub(base));
  const WronskianForm wa = denominator_form(sub(with({is, is1})));
  const WronskianForm wb = denominator_form(sub(with({is})));
  const WronskianForm wc = denominator_form(sub(with({is1})));
  const FamilyTag f = spec.params.family;
  // lhs: (log R_a)' with R_a = W_a / W_0; rhs: dE R_b R_c / R_a = dE W_b W_c / (W_a W_0)
  const RatioFunction ra{f, wa.scale / w0.scale, wa.prefactor - w0.prefactor, wa.poly, w0.poly};
  const RatioFunction q{f, wb.scale * wc.scale / (wa.scale * w0.scale),
                        wb.prefactor + wc.prefactor - wa.prefactor - w0.prefactor, wb.poly * wc.poly,
                        wa.poly * w0.poly};
  const Rational de =
      seed_energy(spec.params, spec.seeds[is]) - seed_energy(spec.params, spec.seeds[is1]) + energy_offset;

  IdentityReport r;
  r.id = "ddx-wronskian-s" + std::to_string(s);
  const long need = std::max<long>(64, sample_bound({&ra, &q}));
  long k = 0;
  while (r.sample_count < need) {
    const auto ot = sample_at(f, k++);
    if (!ot) continue;
    const Rational& t = *ot;
    if (!regular_at(ra, t) || !regular_at(q, t)) {
      ++r.skipped_poles;
      continue;
    }
    const Rational e = eta_at(f, t);
    const Rational qv = q.scale * q.num.eval_real(e) / q.den.eval_real(e) * de;
    const Rational lhs = ra.logderiv(t);
    // compare squares (prefactor may carry half-integer powers) and signs
    Rational res = lhs * lhs - qv * qv * prefactor_square(q.prefactor, t);
    if (res.is_zero() && lhs.sign() != qv.sign()) res = Rational(2) * lhs.abs();
    if (res.abs() > r.max_residual) r.max_residual = res.abs();
    ++r.sample_count;
  }
  r.pass = r.max_residual.is_zero();
  return r;
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureResult integrate(const std::function<double(double)>& f, XDomain domain, double rel_tol) {
  constexpr double kUMax = 3.2;
  constexpr double kHalfPi = std::numbers::pi / 2;
  QuadratureResult r;
  double prev = 0.0;
  for (int level = 1; level <= 10; ++level) {
    const double h = std::ldexp(1.0, -level);
    const long jmax = static_cast<long>(kUMax / h);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(2 * jmax + 1));
    for (long j = -jmax; j <= jmax; ++j) {
      const double u = static_cast<double>(j) * h;
      const double s = kHalfPi * std::sinh(u);
      double x, w;
      if (domain == XDomain::FullLine) {
        x = std::sinh(s);
        w = kHalfPi * std::cosh(u) * std::cosh(s);
      } else {
        x = std::exp(s);
        w = kHalfPi * std::cosh(u) * x;
      }
      double v = f(x) * w;
      ++r.evaluations;
      if (!std::isfinite(v)) v = 0.0;
      terms.push_back(v);
    }
    double peak = 0.0;
    for (double v : terms) peak = std::max(peak, std::abs(v));
    double sum = 0.0, l1 = 0.0;
    for (double v : terms) {
      if (std::abs(v) < 1e-18 * peak) continue;
      sum += v;
      l1 += std::abs(v);
    }
    sum *= h;
    l1 *= h;
    if (std::max(std::abs(terms.front()), std::abs(terms.back())) > 1e-10 * peak) {
      r.warning = "integrand does not decay at the truncation; the integral may diverge";
    }
    r.value = sum;
    if (level > 1) {
      r.error_estimate = std::abs(sum - prev);
      if (level >= 4 && r.error_estimate <= rel_tol * l1) {
        r.converged = true;
        break;
      }
    }
    prev = sum;
  }
  return r;
}

QuadratureResult quadrature_inner_product(const RatioFunction& f, const RatioFunction& g, double rel_tol) {
  const auto integrand = [&](double x) {
    const int s = f.sign(x) * g.sign(x);
    if (s == 0) return 0.0;
    return s * std::exp(f.log_abs(x) + g.log_abs(x));
  };
  return integrate(integrand, x_domain(f.family), rel_tol);
}

RatioFunction eigenfunction(const Params& p, long n) {
  RatioFunction f;
  f.family = p.family;
  f.prefactor = eigen_prefactor(p, n);
  f.num = eigen_polynomial(p, n);
  return f;
}

// ---------------------------------------------------------------------------
// Finite differences

std::string grid_kind_name(GridKind k) { return k == GridKind::Uniform ? "uniform" : "log"; }

namespace {

// A - lambda W with A symmetric tridiagonal (constant off-diagonal) and W diagonal.
struct Pencil {
  std::vector<double> diag, weight;
  double off2 = 0.0;

  long count_below(double lambda) const {
    long c = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - lambda * weight[i] - (i == 0 ? 0.0 : off2 / q);
      if (q == 0.0) q = -std::numeric_limits<double>::min();
      if (q < 0.0) ++c;
    }
    return c;
  }
};

double grid_span(double x_lo, double x_hi, GridKind kind) {
  return kind == GridKind::Uniform ? x_hi - x_lo : std::log(x_hi / x_lo);
}

long nodes_for(double x_lo, double x_hi, double grid, GridKind kind) {
  return std::max<long>(2, std::lround(grid_span(x_lo, x_hi, kind) / grid) - 1);
}

}  // namespace

std::vector<double> fd_eigenvalues(const std::function<double(double)>& U, double x_lo, double x_hi, long n,
                                   double below, GridKind kind) {
  if (n < 2 || !(x_hi > x_lo) || (kind == GridKind::Logarithmic && !(x_lo > 0.0))) {
    throw DomainError("finite-difference grid needs x_hi > x_lo (> 0 on a log grid) and n >= 2");
  }
  const double ds = grid_span(x_lo, x_hi, kind) / static_cast<double>(n + 1);
  const double inv = 1.0 / (ds * ds);
  Pencil m;
  m.diag.resize(static_cast<std::size_t>(n));
  m.weight.assign(static_cast<std::size_t>(n), 1.0);
  m.off2 = inv * inv;
  double lo = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double s = static_cast<double>(i + 1) * ds;
    // log grid: psi = x^{1/2} chi(s), -chi'' + (1/4 + x^2 U) chi = E x^2 chi
    const double x = kind == GridKind::Uniform ? x_lo + s : x_lo * std::exp(s);
    const double u = U(x);
    if (!std::isfinite(u)) throw SingularExtensionError("potential is not finite at x = " + std::to_string(x));
    if (kind == GridKind::Uniform) {
      m.diag[k] = 2.0 * inv + u;
      lo = std::min(lo, u);
    } else {
      m.weight[k] = x * x;
      m.diag[k] = 2.0 * inv + 0.25 + x * x * u;
      lo = std::min(lo, u + 0.25 / (x * x));
    }
  }
  const long count = m.count_below(below);
  std::vector<double> out;
  for (long k = 0; k < count; ++k) {
    double a = lo, b = below;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (m.count_below(mid) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

SpectrumReport schrodinger_spectrum(const std::function<double(double)>& U, double threshold, double x_lo,
                                    double x_hi, const SpectrumOptions& opts) {
  SpectrumReport rep;
  rep.x_lo = x_lo;
  rep.x_hi = x_hi;
  rep.threshold = threshold;
  rep.grid_kind = opts.grid_kind.value_or(GridKind::Uniform);
  const GridKind kind = rep.grid_kind;
  const double below = threshold - opts.margin;
  const int ngrids = opts.order_study ? 3 : 2;
  std::vector<std::vector<double>> vals;
  for (int gi = 0; gi < ngrids; ++gi) {
    const long n = nodes_for(x_lo, x_hi, std::ldexp(opts.grid, -gi), kind);
    rep.grids.push_back(grid_span(x_lo, x_hi, kind) / static_cast<double>(n + 1));
    vals.push_back(fd_eigenvalues(U, x_lo, x_hi, n, below, kind));
  }
  std::size_t count = vals.front().size();
  for (const auto& v : vals) {
    if (v.size() != count) rep.warnings.push_back("level count changes with the grid");
    count = std::min(count, v.size());
  }
  for (std::size_t k = 0; k < count; ++k) {
    NumericLevel l;
    l.index = static_cast<long>(k);
    for (const auto& v : vals) l.values.push_back(v[k]);
    const double c = l.values[l.values.size() - 2], f = l.values.back();
    l.extrapolated = (4.0 * f - c) / 3.0;
    for (double v : l.values) l.error_estimates.push_back(std::abs(v - l.extrapolated));
    if (ngrids == 3) {
      const double d1 = l.values[0] - l.values[1], d2 = l.values[1] - l.values[2];
      if (d1 != 0.0 && d2 != 0.0 && d1 / d2 > 0.0) l.observed_order = std::log2(d1 / d2);
    }
    rep.levels.push_back(std::move(l));
  }
  if (opts.enlargement_check) {
    double lo2 = x_lo, hi2 = x_hi;
    if (kind == GridKind::Logarithmic) {
      lo2 = x_lo * 1e-2;
      hi2 = x_hi * 1.25;
    } else {
      const double span = x_hi - x_lo;
      if (x_lo < 0.0) lo2 = x_lo - 0.25 * span;
      hi2 = x_hi + 0.25 * span;
    }
    const auto big = fd_eigenvalues(U, lo2, hi2, nodes_for(lo2, hi2, opts.grid, kind), below, kind);
    bool sensitive = big.size() != vals.front().size();
    for (std::size_t k = 0; !sensitive && k < big.size(); ++k) {
      sensitive = std::abs(big[k] - vals.front()[k]) > opts.enlargement_tol * std::max(1.0, std::abs(big[k]));
    }
    if (sensitive) rep.warnings.push_back("domain enlargement changes the spectrum; truncation may be too small");
  }
  return rep;
}

SpectrumReport schrodinger_spectrum(const PotentialEvaluator& pot, const SpectrumOptions& opts) {
  if (pot.singular()) throw SingularExtensionError("extended potential is singular on the domain");
  const Params& p = pot.params();
  const ContinuumLimits lim = continuum_limits(p);
  SpectrumOptions o = opts;
  double lo, hi;
  if (x_domain(p.family) == XDomain::FullLine) {
    lo = opts.x_lo.value_or(-opts.truncate);
    hi = opts.x_hi.value_or(opts.truncate);
  } else {
    if (!o.grid_kind) o.grid_kind = GridKind::Logarithmic;
    lo = opts.x_lo.value_or(*o.grid_kind == GridKind::Logarithmic ? kLogGridWall : 1e-3);
    hi = opts.x_hi.value_or(1.25 * opts.truncate);
  }
  SpectrumReport rep =
      schrodinger_spectrum([&](double x) { return pot(x); }, lim.threshold().to_double(), lo, hi, o);
  if (lim.left) rep.left_limit = lim.left->to_double();
  if (lim.right) rep.right_limit = lim.right->to_double();
  return rep;
}

IsospectralReport verify_isospectral(const ExtensionSpec& spec, const SpectrumOptions& opts, double rel_tol) {
  const ExtendedSystem sys = extend(spec);
  if (!sys.nodes.nodeless) {
    throw SingularExtensionError("Wronskian of " + spec.to_string() + " has nodes; extension rejected");
  }
  IsospectralReport r;
  r.tolerance = rel_tol;
  r.numeric = schrodinger_spectrum(extended_potential(spec), opts);
  std::vector<SpectrumLevel> expect;
  for (const auto& l : sys.spectrum) {
    if (l.energy.to_double() < r.numeric.threshold - opts.margin) expect.push_back(l);
  }
  r.pass = expect.size() == r.numeric.levels.size();
  if (!r.pass) {
    r.detail = "expected " + std::to_string(expect.size()) + " levels, found " +
               std::to_string(r.numeric.levels.size());
  }
  for (std::size_t k = 0; k < std::min(expect.size(), r.numeric.levels.size()); ++k) {
    LevelComparison c;
    c.n = expect[k].n;
    c.exact = expect[k].energy;
    c.added = expect[k].added;
    c.numeric = r.numeric.levels[k].extrapolated;
    const double e = c.exact.to_double();
    c.abs_err = std::abs(c.numeric - e);
    if (c.abs_err > rel_tol * std::max(1.0, std::abs(e))) r.pass = false;
    r.levels.push_back(std::move(c));
  }
  return r;
}

std::string spectrum_csv(const IsospectralReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,E_exact,E_numeric,abs_err\n";
  for (const auto& l : r.levels) os << l.n << ',' << l.exact.to_double() << ',' << l.numeric << ',' << l.abs_err << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Half-integer equivalence

EquivalenceReport verify_halfint_equivalence(const ExtensionSpec& spec, std::optional<long> N) {
  EquivalenceReport r;
  const Params& p = spec.params;
  try {
    const KreinAdlerDual d = krein_adler_dual(spec, N);
    r.available = true;
    r.reduced = d.reduced;
    r.N = d.N;
    r.bar_degrees = d.bar_degrees;
    r.bar_params = d.bar_params;
  } catch (const EquivalenceUnavailableError& e) {
    r.reason = e.what();
  }
  const Rational two_h = Rational(2) * p.h;
  if (!r.available && two_h.is_integer() && !spec.seeds.empty() &&
      all_tag(spec, {SeedKindTag::Overshoot})) {
    // the same construction, to exhibit the failure
    const long shift = two_h.to_long() + 1;
    long maxd = 0;
    for (const auto& k : spec.seeds) {
      r.reduced.push_back(k.v - shift);
      maxd = std::max(maxd, k.v);
    }
    r.N = N.value_or(maxd - 1);
    std::vector<bool> removed(static_cast<std::size_t>(r.N + 1), false);
    bool ok = true;
    for (long d : r.reduced) {
      if (d < 0 || d > r.N) ok = false;
      else removed[static_cast<std::size_t>(r.N - d)] = true;
    }
    if (ok) {
      for (long e = 0; e <= r.N; ++e) {
        if (!removed[static_cast<std::size_t>(e)]) r.bar_degrees.push_back(e);
      }
      try {
        const Params q = p.shifted(-(r.N + 1));
        r.bar_params = Params::make(q.family, q.h, q.mu, q.g, true);
      } catch (const DomainError&) {
      }
    }
  }
  const long m = static_cast<long>(r.reduced.size());
  for (long d : r.reduced) r.ell_bar += d;
  r.ell_bar -= m * (m - 1) / 2;
  if (!r.bar_params) return r;

  PolyQ lhs = xi_polynomial(spec);
  if (p.family == FamilyTag::S || p.family == FamilyTag::HST) {
    const Rational e = (p.h + Rational(1, 2)) * Rational(m);
    if (e.is_integer()) {
      const PolyQ base = PolyQ(GaussianRational(1)) + PolyQ::x() * PolyQ::x();
      try {
        lhs = exact_div(lhs, base.pow(static_cast<unsigned>(e.to_long())));
      } catch (const DomainError&) {
      }
    }
  }
  const PolyQ bar = eigen_wronskian_form(*r.bar_params, r.bar_degrees).poly;
  r.bar_degree = bar.degree();
  r.degree_ok = r.bar_degree == r.ell_bar;
  if (const auto c = poly_proportional(lhs, bar); c && c->is_real() && !c->is_zero()) {
    r.proportional = true;
    r.ratio = c->re;
  }
  r.pass = r.available && r.proportional && r.degree_ok;
  return r;
}

}  // namespace ratext
