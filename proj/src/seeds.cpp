#include "ratext/seeds.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace ratext {

std::string seed_kind_name(SeedKindTag t) {
  switch (t) {
    case SeedKindTag::Eigen: return "eigen";
    case SeedKindTag::Overshoot: return "overshoot";
    case SeedKindTag::TwistedI: return "twistedI";
    case SeedKindTag::TwistedII: return "twistedII";
    case SeedKindTag::TwistedIII: return "twistedIII";
  }
  return "?";
}

SeedKindTag parse_seed_kind(std::string_view s) {
  std::string low;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (low == "eigen") return SeedKindTag::Eigen;
  if (low == "overshoot") return SeedKindTag::Overshoot;
  if (low == "twistedi" || low == "twisted1") return SeedKindTag::TwistedI;
  if (low == "twistedii" || low == "twisted2") return SeedKindTag::TwistedII;
  if (low == "twistediii" || low == "twisted3") return SeedKindTag::TwistedIII;
  throw DomainError("unknown seed kind '" + std::string(s) + "'");
}

std::string SeedKind::to_string() const { return seed_kind_name(tag) + "(" + std::to_string(v) + ")"; }

std::string boundary_type_name(BoundaryType t) {
  switch (t) {
    case BoundaryType::Eigen: return "eigen";
    case BoundaryType::TypeI: return "I";
    case BoundaryType::TypeII: return "II";
    case BoundaryType::TypeIII: return "III";
  }
  return "?";
}

EndBehavior EndBehavior::reciprocal() const {
  switch (kind) {
    case Kind::ExpRate: return {Kind::ExpRate, -value};
    case Kind::Power: return {Kind::Power, -value};
    case Kind::DoubleExpDecay: return {Kind::DoubleExpGrowth, value};
    case Kind::DoubleExpGrowth: return {Kind::DoubleExpDecay, value};
  }
  return *this;
}

bool EndBehavior::square_integrable(bool left_end) const {
  switch (kind) {
    case Kind::ExpRate: return left_end ? value.sign() > 0 : value.sign() < 0;
    case Kind::Power: return value > Rational(-1, 2);
    case Kind::DoubleExpDecay: return true;
    case Kind::DoubleExpGrowth: return false;
  }
  return false;
}

std::string EndBehavior::to_string() const {
  switch (kind) {
    case Kind::ExpRate: return "exp_rate(" + value.to_string() + ")";
    case Kind::Power: return "power(" + value.to_string() + ")";
    case Kind::DoubleExpDecay: return "double_exp_decay";
    case Kind::DoubleExpGrowth: return "double_exp_growth";
  }
  return "?";
}

namespace {

struct Range {
  std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>> open;  // (lo, hi)
  std::vector<Rational> boundaries;
};

Range admissible_range(const Params& p, SeedKindTag tag) {
  Range r;
  const auto add = [&](std::optional<Rational> lo, std::optional<Rational> hi) {
    if (lo) r.boundaries.push_back(*lo);
    if (hi) r.boundaries.push_back(*hi);
    r.open.emplace_back(std::move(lo), std::move(hi));
  };
  const Rational minus_one(-1);  // stands for "v >= 0"
  switch (p.family) {
    case FamilyTag::M:
    case FamilyTag::S:
    case FamilyTag::HST:
      if (tag == SeedKindTag::Overshoot) add(Rational(2) * p.h, std::nullopt);
      break;
    case FamilyTag::RM:
      if (tag == SeedKindTag::Overshoot) {
        const Rational q = p.mu / p.h;
        add(p.h - q, p.h);
        add(p.h, p.h + q);
        add(Rational(2) * p.h, std::nullopt);
      }
      break;
    case FamilyTag::KH:
      if (tag == SeedKindTag::Overshoot) {
        add(p.mu / p.g - p.g, std::nullopt);
      } else if (tag == SeedKindTag::TwistedII || tag == SeedKindTag::TwistedIII) {
        r.open.emplace_back(minus_one, p.g - Rational(1));
        r.boundaries.push_back(p.g - Rational(1));
        add(p.g - Rational(1), Rational(2) * p.g - Rational(1));
        add(p.mu / p.g + p.g - Rational(1), std::nullopt);
      }
      break;
    case FamilyTag::HDPT:
      if (tag == SeedKindTag::Overshoot) {
        add(p.h - p.g, std::nullopt);
      } else if (tag == SeedKindTag::TwistedI || tag == SeedKindTag::TwistedIII) {
        r.open.emplace_back(minus_one, std::nullopt);
      } else if (tag == SeedKindTag::TwistedII) {
        r.open.emplace_back(minus_one, p.g - Rational(1, 2));
        r.boundaries.push_back(p.g - Rational(1, 2));
      }
      break;
  }
  return r;
}

void check_range(const Params& p, const SeedKind& k) {
  if (k.v < 0) throw InvalidSeedError("invalid seed range: negative degree in " + k.to_string());
  if (k.tag == SeedKindTag::Eigen) {
    if (k.v > nmax(p)) {
      throw InvalidSeedError("invalid seed range: eigen(" + std::to_string(k.v) + ") exceeds nmax " +
                             std::to_string(nmax(p)) + " of " + p.to_string());
    }
    return;
  }
  const Range r = admissible_range(p, k.tag);
  if (r.open.empty()) {
    throw InvalidSeedError("invalid seed range: kind " + seed_kind_name(k.tag) + " not available for " +
                           family_name(p.family));
  }
  const Rational v(k.v);
  for (const auto& b : r.boundaries) {
    if (b == v) {
      throw NonGenericError("seed " + k.to_string() + " sits on the range boundary " + b.to_string() + " of " +
                            p.to_string());
    }
  }
  for (const auto& [lo, hi] : r.open) {
    if ((!lo || *lo < v) && (!hi || v < *hi)) return;
  }
  throw InvalidSeedError("invalid seed range: " + k.to_string() + " for " + p.to_string());
}

Rational twist_energy_shift(const Params& p, SeedKindTag tag) {
  const Rational one(1), two(2);
  if (p.family == FamilyTag::HDPT) {
    switch (tag) {
      case SeedKindTag::TwistedI: return -(one + two * p.g) * (one + two * p.h);
      case SeedKindTag::TwistedII: return -(one - two * p.g) * (one - two * p.h);
      default: return eigen_energy(p, Rational(-1));
    }
  }
  return eigen_energy(p, Rational(-1));
}

}  // namespace

Params twisted_params(const Params& p, SeedKindTag tag) {
  if (p.family == FamilyTag::KH && (tag == SeedKindTag::TwistedII || tag == SeedKindTag::TwistedIII)) {
    return Params::formal(FamilyTag::KH, p.h, p.mu, Rational(1) - p.g);
  }
  if (p.family == FamilyTag::HDPT) {
    switch (tag) {
      case SeedKindTag::TwistedI: return Params::formal(FamilyTag::HDPT, Rational(-1) - p.h, p.mu, p.g);
      case SeedKindTag::TwistedII: return Params::formal(FamilyTag::HDPT, p.h, p.mu, Rational(1) - p.g);
      case SeedKindTag::TwistedIII:
        return Params::formal(FamilyTag::HDPT, Rational(-1) - p.h, p.mu, Rational(1) - p.g);
      default: break;
    }
  }
  throw InvalidSeedError("invalid seed range: no " + seed_kind_name(tag) + " twist for " + family_name(p.family));
}

Rational seed_energy(const Params& p, const SeedKind& k) {
  check_range(p, k);
  if (k.tag == SeedKindTag::Eigen || k.tag == SeedKindTag::Overshoot) return eigen_energy(p, Rational(k.v));
  return eigen_energy(twisted_params(p, k.tag), Rational(k.v)) + twist_energy_shift(p, k.tag);
}

Seed make_seed(const Params& p, const SeedKind& k) {
  Seed s;
  s.kind = k;
  s.params = p;
  s.energy = seed_energy(p, k);
  const bool twisted = k.tag != SeedKindTag::Eigen && k.tag != SeedKindTag::Overshoot;
  s.formal = twisted ? twisted_params(p, k.tag) : p;
  s.prefactor = eigen_prefactor(s.formal, k.v);
  s.poly = eigen_polynomial(s.formal, k.v);
  if (k.is_virtual()) {
    if (s.energy.sign() >= 0) {
      throw InvalidSeedError("invalid seed range: " + k.to_string() + " has non-negative energy " +
                             s.energy.to_string());
    }
    s.boundary_type = classify_seed(s);
  }
  return s;
}

namespace {

using K = EndBehavior::Kind;

// Value of P at a finite eta endpoint; a zero makes the asymptotics non-generic.
void require_nonzero_at(const Seed& s, long eta_end) {
  if (s.poly.eval_real(Rational(eta_end)).is_zero()) {
    throw NonGenericError("degenerate classification: polynomial of " + s.kind.to_string() + " vanishes at eta = " +
                          std::to_string(eta_end));
  }
}

}  // namespace

BoundaryBehavior boundary_exponents(const Seed& s) {
  const PrefactorExponents& F = s.prefactor;
  const Rational deg(s.poly.degree());
  if (s.poly.is_zero()) throw NonGenericError("degenerate classification: zero polynomial");
  BoundaryBehavior b;
  switch (s.params.family) {
    case FamilyTag::M: {
      // eta = e^{-x}: P ~ e^{-deg x} at -inf; e^{exp_coef e^x} dominates at +inf
      b.left = {K::ExpRate, F.rate - deg};
      b.right = {F.exp_coef.sign() < 0 ? K::DoubleExpDecay : K::DoubleExpGrowth, F.exp_coef};
      if (F.exp_coef.is_zero()) b.right = {K::ExpRate, F.rate - Rational(s.poly.low_degree())};
      break;
    }
    case FamilyTag::S:
    case FamilyTag::HST:
      b.left = {K::ExpRate, -(F.cosh_pow + deg) + F.rate};
      b.right = {K::ExpRate, F.cosh_pow + deg + F.rate};
      break;
    case FamilyTag::RM:
      require_nonzero_at(s, -1);
      require_nonzero_at(s, 1);
      b.left = {K::ExpRate, F.rate - F.cosh_pow};
      b.right = {K::ExpRate, F.rate + F.cosh_pow};
      break;
    case FamilyTag::KH:
      // eta = coth x ~ 1/x near 0 and -> 1 at infinity
      require_nonzero_at(s, 1);
      b.left = {K::Power, F.sinh_pow - deg};
      b.right = {K::ExpRate, F.rate + F.sinh_pow};
      break;
    case FamilyTag::HDPT:
      require_nonzero_at(s, 1);
      b.left = {K::Power, F.sinh_pow};
      b.right = {K::ExpRate, F.sinh_pow + F.cosh_pow + Rational(2) * deg};
      break;
  }
  return b;
}

BoundaryType classify_seed(const Seed& s) {
  const BoundaryBehavior b = boundary_exponents(s);
  const bool l = b.left.square_integrable(true);
  const bool r = b.right.square_integrable(false);
  const bool lr = b.left_reciprocal().square_integrable(true);
  const bool rr = b.right_reciprocal().square_integrable(false);
  if (!s.kind.is_virtual()) {
    if (l && r) return BoundaryType::Eigen;
    throw ConsistencyError("eigen seed " + s.kind.to_string() + " is not square integrable");
  }
  if (l && !r && !lr && rr) return BoundaryType::TypeI;
  if (!l && r && lr && !rr) return BoundaryType::TypeII;
  if ((!l || !r) && lr && rr) return BoundaryType::TypeIII;
  throw InvalidSeedError("invalid seed range: " + s.kind.to_string() + " for " + s.params.to_string() +
                         " satisfies no boundary type (left " + b.left.to_string() + ", right " +
                         b.right.to_string() + ")");
}

}  // namespace ratext
