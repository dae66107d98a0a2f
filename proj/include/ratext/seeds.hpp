#pragma once

// Seed functions for Darboux-Crum transformations: eigenstates, overshoot
// eigenfunctions and discrete-symmetry twisted states, with their energies and
// boundary classification.

#include <optional>
#include <string>
#include <string_view>

#include "ratext/families.hpp"

namespace ratext {

enum class SeedKindTag { Eigen, Overshoot, TwistedI, TwistedII, TwistedIII };

struct SeedKind {
  SeedKindTag tag = SeedKindTag::Eigen;
  long v = 0;

  static SeedKind eigen(long n) { return {SeedKindTag::Eigen, n}; }
  static SeedKind overshoot(long v) { return {SeedKindTag::Overshoot, v}; }
  static SeedKind twisted_i(long v) { return {SeedKindTag::TwistedI, v}; }
  static SeedKind twisted_ii(long v) { return {SeedKindTag::TwistedII, v}; }
  static SeedKind twisted_iii(long v) { return {SeedKindTag::TwistedIII, v}; }

  bool is_virtual() const { return tag != SeedKindTag::Eigen; }
  std::string to_string() const;
  friend bool operator==(const SeedKind&, const SeedKind&) = default;
};

/// "eigen", "overshoot", "twisted1"/"twistedI", ...
SeedKindTag parse_seed_kind(std::string_view s);
std::string seed_kind_name(SeedKindTag t);

enum class BoundaryType { Eigen, TypeI, TypeII, TypeIII };
std::string boundary_type_name(BoundaryType t);

/// Asymptotic form of a function at one end of the domain.
struct EndBehavior {
  enum class Kind { ExpRate, Power, DoubleExpDecay, DoubleExpGrowth };
  Kind kind = Kind::ExpRate;
  Rational value;  // alpha in e^{alpha x}, or beta in x^beta

  EndBehavior reciprocal() const;
  /// Square integrability near a left (x -> -inf or x -> 0) or right (x -> +inf) end.
  bool square_integrable(bool left_end) const;
  std::string to_string() const;
  friend bool operator==(const EndBehavior&, const EndBehavior&) = default;
};

struct BoundaryBehavior {
  EndBehavior left;   // x -> x1
  EndBehavior right;  // x -> x2
  EndBehavior left_reciprocal() const { return left.reciprocal(); }
  EndBehavior right_reciprocal() const { return right.reciprocal(); }
};

struct Seed {
  SeedKind kind;
  Params params;  // the system
  Params formal;  // parameters at which phi_v is evaluated (twisted for twisted kinds)
  Rational energy;
  PrefactorExponents prefactor;
  PolyQ poly;
  BoundaryType boundary_type = BoundaryType::Eigen;

  long degree() const { return kind.v; }
};

/// Parameters of the discrete-symmetry twist for a twisted kind.
Params twisted_params(const Params& p, SeedKindTag tag);

Rational seed_energy(const Params& p, const SeedKind& k);
Seed make_seed(const Params& p, const SeedKind& k);
BoundaryBehavior boundary_exponents(const Seed& s);
BoundaryType classify_seed(const Seed& s);

}  // namespace ratext
