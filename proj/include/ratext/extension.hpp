#pragma once

// Multi-seed Darboux-Crum extensions: Wronskian factorisations W = scale A(x) Xi(eta(x)),
// degree laws, nodeless checks, extended potentials, eigenfunctions and norms,
// shifted index sets and the half-integer Krein-Adler duality.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratext/seeds.hpp"

namespace ratext {

/// One function F(x) P(eta(x)) entering a Wronskian.
struct SeedFunction {
  PrefactorExponents prefactor;
  PolyQ poly;
};

/// W(x) = scale * F(x) * poly(eta(x)), F given by its exponent record.
struct WronskianForm {
  Rational scale{1};
  PrefactorExponents prefactor;
  PolyQ poly;
};

/// Wronskian of arbitrary seed functions by repeated differentiation in eta:
/// (F P)^{(k)} = F r^k Q_k(eta) with a family-specific r(x).
WronskianForm wronskian_direct(FamilyTag family, std::span<const SeedFunction> fs);

/// Re-expresses a form against another prefactor and scale. The exponent
/// difference must reduce to a polynomial (or exact inverse polynomial) in eta.
PolyQ normalize_to(FamilyTag family, const WronskianForm& form, const PrefactorExponents& target,
                   const Rational& target_scale);

/// Group A: A = phi0^M (eta'/c_F)^{M(M-1)/2}, Xi = c_F^{M(M-1)/2} W_eta[P_d].
WronskianForm group_a_form(const Params& formal, std::span<const long> degrees);
/// Group B: A = prod phi0(lambda + d_k delta), Xi = det(Xbar_{j,k}).
WronskianForm group_b_form(const Params& formal, std::span<const long> degrees);
/// Wronskian of phi_d(x; formal) for d in degrees, by the family's group.
WronskianForm eigen_wronskian_form(const Params& formal, std::span<const long> degrees);

/// Generic degree sum d - M(M-1)/2.
long ell_generic(std::span<const long> degrees);

struct ExtensionSpec {
  Params params;
  std::vector<SeedKind> seeds;

  /// Checked construction; throws InvalidSpecError or the seed errors.
  static ExtensionSpec make(Params params, std::vector<SeedKind> seeds);
  void validate() const;
  std::vector<Seed> make_seeds() const;
  std::vector<long> degrees() const;
  std::string to_string() const;
};

/// Xi_D; constant 1 for the empty set.
PolyQ xi_polynomial(const ExtensionSpec& spec);
/// W[seeds] = scale A_D Xi_D.
WronskianForm denominator_form(const ExtensionSpec& spec);
/// W[seeds, phi_n] = scale A_{D,n} Pbar_{D,n}.
WronskianForm numerator_form(const ExtensionSpec& spec, long n);
PolyQ extended_eigen_polynomial(const ExtensionSpec& spec, long n);
/// l_D, l'_D for hDPT mixed twists, reduced degrees in half-integer RM mode.
long extension_degree(const ExtensionSpec& spec);

struct NodelessReport {
  bool nodeless = false;
  long root_count = 0;
  bool degenerate = false;  // root at a finite end of the eta interval
  /// Endpoint sign comparison of the nested Wronskians (hDPT mixed twists only).
  std::optional<bool> endpoint_signs_agree;
};
NodelessReport check_nodeless(const ExtensionSpec& spec);

/// x-dependence of a ratio scale * e^{prefactor} num(eta) / den(eta).
struct RatioFunction {
  FamilyTag family = FamilyTag::M;
  Rational scale{1};
  PrefactorExponents prefactor;
  PolyQ num{GaussianRational(1)};
  PolyQ den{GaussianRational(1)};

  double operator()(double x) const;
  double log_abs(double x) const;
  int sign(double x) const;
  /// d/dx log|f| and d^2/dx^2 log|f| at t = e^x, exact.
  Rational logderiv(const Rational& t) const;
  Rational logderiv_dx(const Rational& t) const;
};

/// U - 2 d^2/dx^2 log|A Xi(eta)| in closed form.
class PotentialEvaluator {
 public:
  PotentialEvaluator() = default;
  PotentialEvaluator(Params params, PrefactorExponents prefactor, PolyQ xi, bool singular);

  Rational exact(const Rational& t) const;
  double operator()(double x) const;
  bool singular() const { return singular_; }
  const Params& params() const { return params_; }

 private:
  Params params_;
  PrefactorExponents prefactor_;
  PolyQ xi_;
  PolyQ xi1_, xi2_;
  ScaledPoly scaled_;
  bool singular_ = false;
};

PotentialEvaluator extended_potential(const ExtensionSpec& spec);

/// prod_j (E_n - E~_{d_j}) h_n.
double extended_norm(const ExtensionSpec& spec, long n);
/// W[D, phi_n] / W[D], the n-th eigenfunction of the extended system.
RatioFunction extended_eigenfunction(const ExtensionSpec& spec, long n);

/// D -> D-1 (direction -1) or D+1 (direction +1, Kh twists) with lambda + delta;
/// hDPT twists keep D. Throws InvalidSpecError when a direction does not apply.
ExtensionSpec shifted_set(const ExtensionSpec& spec, int direction);

struct KreinAdlerDual {
  std::vector<long> reduced;  // d'_j = d_j - 2h - 1
  long N = 0;
  std::vector<long> bar_degrees;
  Params bar_params;
};
/// Dual eigenstate-deletion data; N defaults to max(D) - 1.
KreinAdlerDual krein_adler_dual(const ExtensionSpec& spec, std::optional<long> N = std::nullopt);
/// Xi_D with the (1+eta^2)^{(h+1/2)M} factor removed for the soliton.
PolyQ krein_adler_reduced_xi(const ExtensionSpec& spec);

struct AddedState {
  Rational energy;
  RatioFunction wavefunction;  // 1 / seed, up to normalisation
};
AddedState added_bound_state(const ExtensionSpec& spec);

struct SpectrumLevel {
  long n = 0;  // eigen index, or seed degree for added levels
  Rational energy;
  bool added = false;
};

struct ExtendedSystem {
  ExtensionSpec spec;
  std::vector<Seed> seeds;
  WronskianForm denominator;
  PolyQ xi;
  long ell = 0;
  bool degenerate = false;  // deg xi differs from ell
  NodelessReport nodes;
  std::vector<SpectrumLevel> spectrum;  // ascending energies
};

ExtendedSystem extend(const ExtensionSpec& spec);

}  // namespace ratext
