#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ratext/extension.hpp"

using namespace ratext;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

const Params M = Params::morse(R(10, 3), R(1));
const Params S = Params::soliton(R(7, 3));
const Params RM = Params::rosen_morse(R(10, 3), R(4));
const Params RM2 = Params::rosen_morse(R(31, 3), R(50));
const Params HST = Params::hst(R(7, 3), R(1));
const Params KH = Params::kh(R(5, 3), R(9));
const Params HD = Params::hdpt(R(5, 3), R(10));
const Params HD2 = Params::hdpt(R(7, 3), R(10));

SeedKind os(long v) { return SeedKind::overshoot(v); }

std::vector<ExtensionSpec> fixtures() {
  using K = SeedKind;
  return {
      ExtensionSpec::make(M, {os(7)}),
      ExtensionSpec::make(M, {os(7), os(8)}),
      ExtensionSpec::make(M, {os(7), os(9), os(12)}),
      ExtensionSpec::make(S, {os(5)}),
      ExtensionSpec::make(RM, {os(3)}),
      ExtensionSpec::make(RM, {os(4)}),
      ExtensionSpec::make(RM, {os(7)}),
      ExtensionSpec::make(RM2, {os(6), os(8)}),
      ExtensionSpec::make(RM2, {os(7), os(9), os(10)}),
      ExtensionSpec::make(RM2, {os(11), os(12)}),
      ExtensionSpec::make(HST, {os(5)}),
      ExtensionSpec::make(KH, {os(4), os(5)}),
      ExtensionSpec::make(KH, {K::twisted_ii(1), K::twisted_ii(2)}),
      ExtensionSpec::make(KH, {K::twisted_iii(0)}),
      ExtensionSpec::make(HD, {os(9), os(10)}),
      ExtensionSpec::make(HD, {K::twisted_i(0), K::twisted_i(2)}),
      ExtensionSpec::make(HD, {K::twisted_ii(0), K::twisted_ii(1)}),
      ExtensionSpec::make(HD, {K::twisted_i(0), K::twisted_ii(0)}),
      ExtensionSpec::make(HD2, {K::twisted_i(1), K::twisted_i(2), K::twisted_ii(1)}),
      ExtensionSpec::make(HD, {K::twisted_iii(3)}),
  };
}

// W = scale A Xi checked at t0 against a determinant of jet derivatives.
void check_factorisation(const ExtensionSpec& spec, const WronskianForm& w,
                         const std::vector<std::pair<PrefactorExponents, PolyQ>>& fs, const Rational& t0) {
  PrefactorExponents sum;
  for (const auto& f : fs) sum += f.first;
  const Rational lhs = oracle::wronskian_over_prefactors(spec.params.family, fs, t0);
  const Rational rhs =
      w.scale * oracle::integer_prefactor_value(w.prefactor - sum, t0) * w.poly.eval_real(eta_at(spec.params.family, t0));
  CHECK(lhs == rhs);
}

std::vector<std::pair<PrefactorExponents, PolyQ>> seed_pairs(const ExtensionSpec& spec) {
  std::vector<std::pair<PrefactorExponents, PolyQ>> fs;
  for (const auto& s : spec.make_seeds()) fs.emplace_back(s.prefactor, s.poly);
  return fs;
}

}  // namespace

TEST_CASE("trivial and single-seed denominators") {
  CHECK(xi_polynomial(ExtensionSpec::make(M, {})) == PolyQ(GaussianRational(1)));
  CHECK(xi_polynomial(ExtensionSpec::make(M, {os(7)})) == eigen_polynomial(M, 7));
  CHECK(xi_polynomial(ExtensionSpec::make(S, {os(5)})) == eigen_polynomial(S, 5));
  const PolyQ rm3 = xi_polynomial(ExtensionSpec::make(RM, {os(3)}));
  const Rational r = RM.h - R(3);
  for (long k = -3; k <= 3; ++k) {
    const Rational z(k, 4);
    CHECK(rm3.eval_real(z) == oracle::jacobi_at(3, r + RM.mu / r, r - RM.mu / r, z));
  }
}

TEST_CASE("denominators factorise the Wronskian of the seeds") {
  for (const auto& spec : fixtures()) {
    CAPTURE(spec.to_string());
    const WronskianForm w = denominator_form(spec);
    for (const auto& t0 : oracle::sample_ts(spec.params.family, 3)) check_factorisation(spec, w, seed_pairs(spec), t0);
  }
}

TEST_CASE("numerators factorise the Wronskian with one eigenfunction added") {
  for (const auto& spec : fixtures()) {
    CAPTURE(spec.to_string());
    for (long n = 0; n <= std::min(nmax(spec.params), 2L); ++n) {
      CAPTURE(n);
      auto fs = seed_pairs(spec);
      fs.emplace_back(eigen_prefactor(spec.params, n), eigen_polynomial(spec.params, n));
      const WronskianForm w = numerator_form(spec, n);
      check_factorisation(spec, w, fs, oracle::sample_ts(spec.params.family, 2).back());
    }
  }
}

TEST_CASE("closed-form routes agree with direct differentiation") {
  for (const auto& spec : fixtures()) {
    CAPTURE(spec.to_string());
    const WronskianForm w = denominator_form(spec);
    std::vector<SeedFunction> fs;
    for (const auto& s : spec.make_seeds()) fs.push_back({s.prefactor, s.poly});
    CHECK(normalize_to(spec.params.family, wronskian_direct(spec.params.family, fs), w.prefactor, w.scale) == w.poly);
  }
  // pure hDPT twists: the mixed formula reduces to the Group A one at the twisted parameters
  const auto spec = ExtensionSpec::make(HD, {SeedKind::twisted_i(0), SeedKind::twisted_i(2)});
  const std::vector<long> d{0, 2};
  const WronskianForm ga = group_a_form(twisted_params(HD, SeedKindTag::TwistedI), d);
  const WronskianForm ad = denominator_form(spec);
  CHECK(normalize_to(FamilyTag::HDPT, ga, ad.prefactor, ad.scale) == ad.poly);
}

TEST_CASE("degree examples") {
  CHECK(extension_degree(ExtensionSpec::make(M, {os(7), os(8)})) == 14);
  CHECK(xi_polynomial(ExtensionSpec::make(M, {os(7), os(8)})).degree() == 14);
  const auto mixed = ExtensionSpec::make(HD, {SeedKind::twisted_i(0), SeedKind::twisted_ii(0)});
  CHECK(extension_degree(mixed) == 1);
  CHECK(xi_polynomial(mixed).degree() == 1);
  const auto half = ExtensionSpec::make(Params::rosen_morse(R(7, 2), R(1), true), {os(8)});
  CHECK(extension_degree(half) == 0);
  CHECK(xi_polynomial(half).degree() == 0);
  CHECK(extended_eigen_polynomial(ExtensionSpec::make(M, {os(7)}), 0).degree() == 6);
}

TEST_CASE("degree law on random generic specs") {
  std::mt19937 rng(11);
  long checked = 0;
  const auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  while (checked < 200) {
    std::vector<SeedKind> seeds;
    Params p;
    try {
      switch (pick(0, 4)) {
        case 0: {
          p = Params::morse(Rational(pick(7, 40), 7), Rational(pick(1, 9), pick(1, 4)));
          if ((Rational(2) * p.h).is_integer()) continue;
          const long base = (Rational(2) * p.h).floor().get_si() + 1;
          for (long v = base; static_cast<long>(seeds.size()) < pick(1, 3); v += pick(1, 3)) seeds.push_back(os(v));
          break;
        }
        case 1: {
          const Rational h(pick(22, 80), 7);
          const Rational mu = h * h * Rational(pick(1, 9), 10);
          p = Params::rosen_morse(h, mu);
          if ((Rational(2) * h).is_integer()) continue;
          const Rational q = mu / h;
          std::vector<long> pool;
          const bool type1 = pick(0, 1) == 1;
          for (long v = 0; v < 30; ++v) {
            const Rational vv(v);
            if (type1 ? (h < vv && vv < h + q) : (h - q < vv && vv < h)) pool.push_back(v);
          }
          if (pool.empty()) continue;
          std::shuffle(pool.begin(), pool.end(), rng);
          pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(pick(1, 3))));
          for (long v : pool) seeds.push_back(os(v));
          break;
        }
        case 2: {
          const Rational g(pick(11, 30), 7);
          if ((Rational(2) * g).is_integer()) continue;
          p = Params::kh(g, g * g * Rational(pick(11, 40), 10));
          if (pick(0, 1) == 1) {
            const long base = (p.mu / g - g).floor().get_si() + 1;
            const long m = std::min(pick(1, 3), (g - Rational(1, 100)).ceil().get_si());
            for (long v = base; static_cast<long>(seeds.size()) < m; v += pick(1, 2)) seeds.push_back(os(v));
          } else {
            for (long v = 0; v < 20; ++v) {
              const Rational vv(v);
              if (g - Rational(1) < vv && vv < Rational(2) * g - Rational(1) && pick(0, 1) == 1) {
                seeds.push_back(SeedKind::twisted_ii(v));
              }
            }
          }
          break;
        }
        case 3: {
          const Rational g(pick(11, 30), 7);
          const Rational h = g + Rational(pick(1, 40), 3);
          if ((Rational(2) * g).is_integer()) continue;
          p = Params::hdpt(g, h);
          const long mmax = std::min(3L, (g - Rational(1, 100)).ceil().get_si());
          const long m1 = pick(0, mmax);
          for (long k = 0; k < m1; ++k) seeds.push_back(SeedKind::twisted_i(k + pick(0, 2) + 3 * k));
          for (long v = 0; Rational(v) < g - Rational(1, 2) && static_cast<long>(seeds.size()) < mmax; ++v) {
            if (pick(0, 1) == 1) seeds.push_back(SeedKind::twisted_ii(v));
          }
          break;
        }
        default: {
          const Rational h(pick(7, 40), 7);
          if ((Rational(2) * h).is_integer()) continue;
          p = pick(0, 1) == 1 ? Params::soliton(h) : Params::hst(h, Rational(pick(1, 5), 2));
          seeds.push_back(os((Rational(2) * h).floor().get_si() + pick(1, 6)));
          break;
        }
      }
    } catch (const DomainError&) {
      continue;
    }
    if (seeds.empty()) continue;
    ExtensionSpec spec;
    try {
      spec = ExtensionSpec::make(p, seeds);
    } catch (const DomainError&) {
      continue;
    }
    CAPTURE(spec.to_string());
    CHECK(xi_polynomial(spec).degree() == extension_degree(spec));
    ++checked;
  }
}

TEST_CASE("nodeless checks and spec rejections") {
  for (const auto& spec : {ExtensionSpec::make(M, {os(7)}), ExtensionSpec::make(M, {os(7), os(8)})}) {
    const NodelessReport r = check_nodeless(spec);
    CHECK(r.nodeless);
    CHECK(r.root_count == 0);
    // dense sign scan on (0, 60)
    const PolyQ xi = xi_polynomial(spec);
    const int s0 = xi.eval_real(R(1, 1000)).sign();
    for (long k = 1; k < 3000; ++k) CHECK(xi.eval_real(R(k, 50)).sign() == s0);
  }
  CHECK_THROWS_AS(ExtensionSpec::make(RM2, {os(6), os(11)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(S, {os(5), os(6)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(M, {os(7), os(7)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(M, {SeedKind::eigen(1)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(KH, {os(4), os(5), os(6)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(KH, {os(4), SeedKind::twisted_ii(1)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(HD, {os(9), SeedKind::twisted_i(1)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(HD, {SeedKind::twisted_iii(2), SeedKind::twisted_i(1)}), InvalidSpecError);
  CHECK_THROWS_AS(ExtensionSpec::make(M, {os(5)}), InvalidSeedError);
}

TEST_CASE("extended norms") {
  const auto m7 = ExtensionSpec::make(M, {os(7)});
  CHECK(extended_norm(m7, 0) == doctest::Approx(7.0 / 3.0 * norm_constant(M, 0)).epsilon(1e-12));
  CHECK(extended_norm(ExtensionSpec::make(M, {}), 2) == doctest::Approx(norm_constant(M, 2)).epsilon(1e-12));
  for (const auto& spec : fixtures()) {
    bool all_negative = true;
    for (const auto& s : spec.make_seeds()) all_negative = all_negative && s.energy.sign() < 0;
    REQUIRE(all_negative);
    for (long n = 0; n <= nmax(spec.params); ++n) CHECK(extended_norm(spec, n) > 0.0);
  }
}

TEST_CASE("shifted index sets") {
  const auto m = shifted_set(ExtensionSpec::make(M, {os(7), os(8)}), -1);
  CHECK(m.degrees() == std::vector<long>{6, 7});
  CHECK(m.params.h == R(7, 3));
  const auto k = shifted_set(ExtensionSpec::make(KH, {SeedKind::twisted_ii(1), SeedKind::twisted_ii(2)}), 1);
  CHECK(k.degrees() == std::vector<long>{2, 3});
  CHECK(k.params.g == R(8, 3));
  const auto h = shifted_set(ExtensionSpec::make(HD, {SeedKind::twisted_i(0), SeedKind::twisted_ii(0)}), 1);
  CHECK(h.degrees() == std::vector<long>{0, 0});
  CHECK(h.params == Params::hdpt(R(8, 3), R(9)));
  CHECK_THROWS_AS(shifted_set(ExtensionSpec::make(M, {os(7)}), 1), InvalidSpecError);
}

TEST_CASE("hDPT lowest extended polynomial is the shifted denominator") {
  using K = SeedKind;
  for (const auto& spec : {ExtensionSpec::make(HD, {K::twisted_i(0), K::twisted_ii(0)}),
                           ExtensionSpec::make(HD, {K::twisted_i(1), K::twisted_i(3)}),
                           ExtensionSpec::make(HD, {K::twisted_ii(1)}),
                           ExtensionSpec::make(HD2, {K::twisted_i(1), K::twisted_i(2), K::twisted_ii(1)})}) {
    CAPTURE(spec.to_string());
    const PolyQ p0 = extended_eigen_polynomial(spec, 0);
    const PolyQ shifted = xi_polynomial(ExtensionSpec{spec.params.shifted(1), spec.seeds});
    CHECK(poly_proportional(p0, shifted).has_value());
    CHECK(p0.degree() == extension_degree(spec));
  }
}

TEST_CASE("half-integer Krein-Adler duality") {
  const auto rm = ExtensionSpec::make(Params::rosen_morse(R(7, 2), R(1), true), {os(8)});
  const KreinAdlerDual d = krein_adler_dual(rm);
  CHECK(d.N == 7);
  CHECK(d.bar_degrees == std::vector<long>{0, 1, 2, 3, 4, 5, 6});
  CHECK(d.bar_params.h == R(23, 2));
  CHECK(d.bar_params.mu == R(1));
  const auto rm2 = ExtensionSpec::make(Params::rosen_morse(R(5, 2), R(1), true), {os(6), os(7)});
  CHECK(krein_adler_dual(rm2).reduced == std::vector<long>{0, 1});
  const std::vector<ExtensionSpec> cases{
      rm, rm2, ExtensionSpec::make(Params::rosen_morse(R(3), R(2), true), {os(7), os(9)}),
      ExtensionSpec::make(Params::rosen_morse(R(5, 2), R(3), true), {os(8)}),
      ExtensionSpec::make(Params::soliton(R(5, 2), true), {os(6)}),
      ExtensionSpec::make(Params::soliton(R(3, 2), true), {os(5), os(7)})};
  for (const auto& spec : cases) {
    CAPTURE(spec.to_string());
    for (const std::optional<long> n : {std::optional<long>{}, std::optional<long>{12}}) {
      const KreinAdlerDual dual = krein_adler_dual(spec, n);
      const PolyQ bar = eigen_wronskian_form(dual.bar_params, dual.bar_degrees).poly;
      const PolyQ lhs = krein_adler_reduced_xi(spec);
      CHECK(poly_proportional(lhs, bar).has_value());
      long sum = 0;
      for (long r : dual.reduced) sum += r;
      const long m = static_cast<long>(dual.reduced.size());
      CHECK(bar.degree() == sum - m * (m - 1) / 2);
    }
  }
  CHECK_THROWS_AS(krein_adler_dual(ExtensionSpec::make(Params::hst(R(5, 2), R(1), true), {os(6)})),
                  EquivalenceUnavailableError);
  CHECK_THROWS_AS(krein_adler_dual(ExtensionSpec::make(Params::soliton(R(3), true), {os(7)})),
                  EquivalenceUnavailableError);
}

TEST_CASE("extended potentials") {
  const PotentialEvaluator u0 = extended_potential(ExtensionSpec::make(KH, {}));
  for (const auto& t : oracle::sample_ts(FamilyTag::KH, 4)) CHECK(u0.exact(t) == potential_value(KH, t));
  for (const auto& spec : fixtures()) {
    CAPTURE(spec.to_string());
    const PotentialEvaluator u = extended_potential(spec);
    for (const auto& t : oracle::sample_ts(spec.params.family, 4)) {
      const double ex = u.exact(t).to_double();
      const double fl = u(std::log(t.to_double()));
      CHECK(std::abs(fl - ex) <= 1e-12 * std::max(1.0, std::abs(ex)));
    }
  }
  // U(0) - 2 (log W)'' with a sixth-order central difference of log|W|
  const auto m7 = ExtensionSpec::make(M, {os(7)});
  const WronskianForm w = denominator_form(m7);
  const ScaledPoly sp(w.poly);
  const auto logw = [&](double x) { return w.prefactor.log_abs(x) + sp.log_abs(eta_at(FamilyTag::M, x)); };
  const double h = 1e-2;
  const double d2 = (2 * logw(-3 * h) - 27 * logw(-2 * h) + 270 * logw(-h) - 490 * logw(0) + 270 * logw(h) -
                     27 * logw(2 * h) + 2 * logw(3 * h)) /
                    (180 * h * h);
  const double expect = potential_value(M, 0.0) - 2 * d2;
  CHECK(extended_potential(m7).exact(R(1)).to_double() == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("extended eigenfunctions solve the extended equation exactly") {
  for (const auto& spec : fixtures()) {
    CAPTURE(spec.to_string());
    const PotentialEvaluator u = extended_potential(spec);
    for (long n = 0; n <= std::min(nmax(spec.params), 2L); ++n) {
      CAPTURE(n);
      const RatioFunction f = extended_eigenfunction(spec, n);
      const Rational e = eigen_energy(spec.params, Rational(n));
      for (const auto& t : oracle::sample_ts(spec.params.family, 2)) {
        const Rational l = f.logderiv(t);
        CHECK((u.exact(t) - e - f.logderiv_dx(t) - l * l).is_zero());
      }
    }
  }
}

TEST_CASE("pseudo-virtual seeds add one level") {
  long found = -1;
  for (long v = 5; v <= 9; ++v) {
    const auto spec = ExtensionSpec::make(S, {os(v)});
    if (check_nodeless(spec).nodeless) {
      found = v;
      break;
    }
    CHECK_THROWS_AS(added_bound_state(spec), SingularExtensionError);
  }
  MESSAGE("first nodeless soliton overshoot seed: " << found);
  if (found >= 0) {
    const auto spec = ExtensionSpec::make(S, {os(found)});
    const AddedState st = added_bound_state(spec);
    CHECK(st.energy == eigen_energy(S, Rational(found)));
    if (found == 5) CHECK(st.energy == R(-5, 3));
    const PotentialEvaluator u = extended_potential(spec);
    for (const auto& t : oracle::sample_ts(FamilyTag::S, 4)) {
      const Rational l = st.wavefunction.logderiv(t);
      CHECK((u.exact(t) - st.energy - st.wavefunction.logderiv_dx(t) - l * l).is_zero());
    }
    const ExtendedSystem sys = extend(spec);
    CHECK(sys.spectrum.front().added);
    CHECK(sys.spectrum.size() == static_cast<std::size_t>(nmax(S) + 2));
    // U^[1] -> h^2 at both ends
    for (double x : {-20.0, 20.0}) CHECK(u(x) == doctest::Approx((S.h * S.h).to_double()).epsilon(1e-10));
  }
  CHECK_THROWS_AS(added_bound_state(ExtensionSpec::make(M, {os(7)})), InvalidSpecError);
}
