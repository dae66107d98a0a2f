#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "ratext/seeds.hpp"

using namespace ratext;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

const Params M = Params::morse(R(10, 3), R(1));
const Params S = Params::soliton(R(7, 3));
const Params RM = Params::rosen_morse(R(10, 3), R(4));
const Params HST = Params::hst(R(7, 3), R(1));
const Params KH = Params::kh(R(5, 3), R(9));
const Params HD = Params::hdpt(R(5, 3), R(10));

}  // namespace

TEST_CASE("seed energies") {
  CHECK(seed_energy(M, SeedKind::overshoot(7)) == R(-7, 3));
  CHECK(seed_energy(S, SeedKind::overshoot(5)) == R(-5, 3));
  CHECK(seed_energy(HD, SeedKind::overshoot(9)) == R(-24));
  CHECK(seed_energy(RM, SeedKind::overshoot(3)) == R(-3289, 25));
  CHECK(seed_energy(HD, SeedKind::twisted_i(0)) == R(-91));
  CHECK(seed_energy(KH, SeedKind::twisted_iii(1)) == R(-52288, 75));
  for (long v = 0; v < 12; ++v) {
    const Rational vv(v);
    if (v <= 1 || v >= 7) CHECK(seed_energy(KH, SeedKind::twisted_iii(v)) == eigen_energy(KH, -vv - R(1)));
    // closed forms of the hDPT twists
    CHECK(seed_energy(HD, SeedKind::twisted_i(v)) ==
          -(R(2) * vv + R(1) + R(2) * HD.g) * (R(2) * vv + R(1) + R(2) * HD.h));
    CHECK(seed_energy(HD, SeedKind::twisted_iii(v)) == eigen_energy(HD, -vv - R(1)));
  }
  for (long v = 0; v < 2; ++v) {
    const Rational vv(v);
    CHECK(seed_energy(HD, SeedKind::twisted_ii(v)) ==
          -(R(2) * vv + R(1) - R(2) * HD.g) * (R(2) * vv + R(1) - R(2) * HD.h));
  }
}

TEST_CASE("range errors") {
  CHECK_THROWS_AS(make_seed(M, SeedKind::overshoot(5)), InvalidSeedError);
  CHECK_THROWS_WITH_AS(make_seed(M, SeedKind::overshoot(5)), doctest::Contains("invalid seed range"),
                       InvalidSeedError);
  CHECK_THROWS_AS(make_seed(Params::morse(R(7, 2), R(1)), SeedKind::overshoot(7)), NonGenericError);
  CHECK_THROWS_AS(make_seed(Params::soliton(R(5, 2), true), SeedKind::overshoot(5)), NonGenericError);
  CHECK_THROWS_AS(make_seed(M, SeedKind::twisted_i(3)), InvalidSeedError);
  CHECK_THROWS_AS(make_seed(HD, SeedKind::twisted_ii(2)), InvalidSeedError);
  CHECK_THROWS_AS(make_seed(KH, SeedKind::twisted_iii(3)), InvalidSeedError);
  CHECK_THROWS_AS(make_seed(M, SeedKind::eigen(4)), InvalidSeedError);
  CHECK_NOTHROW(make_seed(M, SeedKind::eigen(3)));
}

TEST_CASE("classification reproduces the table") {
  CHECK(make_seed(M, SeedKind::overshoot(7)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(M, SeedKind::overshoot(11)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(S, SeedKind::overshoot(5)).boundary_type == BoundaryType::TypeIII);
  CHECK(make_seed(HST, SeedKind::overshoot(6)).boundary_type == BoundaryType::TypeIII);
  CHECK(make_seed(RM, SeedKind::overshoot(3)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(RM, SeedKind::overshoot(4)).boundary_type == BoundaryType::TypeI);
  CHECK(make_seed(RM, SeedKind::overshoot(7)).boundary_type == BoundaryType::TypeIII);
  CHECK(make_seed(KH, SeedKind::twisted_iii(1)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(KH, SeedKind::twisted_ii(1)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(KH, SeedKind::twisted_iii(0)).boundary_type == BoundaryType::TypeIII);
  CHECK(make_seed(KH, SeedKind::twisted_iii(7)).boundary_type == BoundaryType::TypeIII);
  CHECK(make_seed(KH, SeedKind::overshoot(4)).boundary_type == BoundaryType::TypeI);
  CHECK(make_seed(HD, SeedKind::overshoot(9)).boundary_type == BoundaryType::TypeI);
  CHECK(make_seed(HD, SeedKind::twisted_i(0)).boundary_type == BoundaryType::TypeI);
  CHECK(make_seed(HD, SeedKind::twisted_i(3)).boundary_type == BoundaryType::TypeI);
  CHECK(make_seed(HD, SeedKind::twisted_ii(0)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(HD, SeedKind::twisted_ii(1)).boundary_type == BoundaryType::TypeII);
  CHECK(make_seed(HD, SeedKind::twisted_iii(2)).boundary_type == BoundaryType::TypeIII);

  // RM: regions (b1) type II, (b2) type I, (b3) type III with a wider coupling
  const Params rm2 = Params::rosen_morse(R(31, 3), R(50));
  for (long v = 0; v < 30; ++v) {
    const Rational vv(v), h = rm2.h, q = rm2.mu / rm2.h;
    BoundaryType expect;
    if (h - q < vv && vv < h) {
      expect = BoundaryType::TypeII;
    } else if (h < vv && vv < h + q) {
      expect = BoundaryType::TypeI;
    } else if (vv > R(2) * h) {
      expect = BoundaryType::TypeIII;
    } else {
      CHECK_THROWS_AS(make_seed(rm2, SeedKind::overshoot(v)), InvalidSeedError);
      continue;
    }
    CHECK(make_seed(rm2, SeedKind::overshoot(v)).boundary_type == expect);
  }
}

TEST_CASE("boundary exponents") {
  const auto m7 = boundary_exponents(make_seed(M, SeedKind::overshoot(7)));
  CHECK(m7.left == EndBehavior{EndBehavior::Kind::ExpRate, R(-11, 3)});
  CHECK(m7.right.kind == EndBehavior::Kind::DoubleExpDecay);
  CHECK(m7.left_reciprocal().value == R(11, 3));
  const auto e0 = boundary_exponents(make_seed(HD, SeedKind::eigen(0)));
  CHECK(e0.left == EndBehavior{EndBehavior::Kind::Power, HD.g});
  // Kh twisted: (sinh x)^{1-g+v} times P_v(coth x) ~ x^{-v}
  const auto kt = boundary_exponents(make_seed(KH, SeedKind::twisted_iii(1)));
  CHECK(kt.left == EndBehavior{EndBehavior::Kind::Power, R(1) - KH.g});
  CHECK(make_seed(KH, SeedKind::twisted_iii(1)).prefactor.sinh_pow == -KH.g + R(2));
}

TEST_CASE("eigen seeds are square integrable at both ends") {
  for (const auto& p : {M, S, RM, HST, KH, HD}) {
    for (long n = 0; n <= nmax(p); ++n) {
      const Seed s = make_seed(p, SeedKind::eigen(n));
      CHECK(s.boundary_type == BoundaryType::Eigen);
      const auto b = boundary_exponents(s);
      CHECK(b.left.square_integrable(true));
      CHECK(b.right.square_integrable(false));
    }
  }
}

TEST_CASE("seed functions solve the Schroedinger equation at their energies") {
  const std::vector<std::pair<Params, SeedKind>> cases{
      {M, SeedKind::overshoot(7)},   {S, SeedKind::overshoot(5)},    {RM, SeedKind::overshoot(4)},
      {HST, SeedKind::overshoot(5)}, {KH, SeedKind::twisted_iii(0)}, {KH, SeedKind::twisted_iii(1)},
      {KH, SeedKind::overshoot(5)},  {HD, SeedKind::twisted_i(2)},   {HD, SeedKind::twisted_ii(1)},
      {HD, SeedKind::twisted_iii(3)}, {HD, SeedKind::overshoot(10)}};
  for (const auto& [p, k] : cases) {
    CAPTURE(k.to_string());
    const Seed s = make_seed(p, k);
    for (const auto& t : oracle::sample_ts(p.family, 4)) {
      CHECK(oracle::schrodinger_residual(p, s.prefactor, s.poly, s.energy, t).is_zero());
    }
  }
}

TEST_CASE("overshoot energies are negative on random valid samples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(7, 60);
  std::uniform_int_distribution<long> extra(1, 12);
  long checked = 0;
  while (checked < 100) {
    const Rational h(num(rng), 7);
    if (h.is_half_integer_multiple()) continue;
    const Rational mu = h * h * Rational(1, 2);
    std::vector<Params> ps{Params::morse(h, R(1)), Params::soliton(h), Params::hst(h, R(2)),
                           Params::rosen_morse(h, mu)};
    for (const auto& p : ps) {
      const long v = (Rational(2) * h).floor().get_si() + extra(rng);
      if (Rational(v) <= Rational(2) * h) continue;
      CHECK(seed_energy(p, SeedKind::overshoot(v)).sign() < 0);
      ++checked;
    }
  }
}
