#pragma once

// The six shape-invariant potentials with finitely many discrete eigenstates:
// Morse (M), soliton (S), Rosen-Morse II (RM), hyperbolic symmetric top II
// (HST), Kepler problem in hyperbolic space / Eckart (KH) and hyperbolic
// Darboux-Poeschl-Teller (HDPT).
//
// Every hyperbolic or exponential building block is a rational function of
// t = e^x, so potentials, log-derivatives and polynomial parts can all be
// evaluated exactly at rational t.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratext/poly.hpp"
#include "ratext/rational.hpp"

namespace ratext {

enum class FamilyTag { M, S, RM, HST, KH, HDPT };
enum class Group { A, B };

struct Family {
  FamilyTag tag;
  Group group;
  Rational c_F;  // Group A only; zero for Group B
};

Family family_info(FamilyTag tag);
/// Accepts "M", "s", "RM", "hst", "Kh", "hDPT" (case-insensitive).
FamilyTag parse_family_tag(std::string_view s);
std::string family_name(FamilyTag tag);
std::vector<FamilyTag> all_families();

/// Coupling constants of one family. Unused entries are zero:
/// (h, mu) for M/RM/HST, h for S, (g, mu) for KH, (g, h) for HDPT.
struct Params {
  FamilyTag family = FamilyTag::M;
  Rational h;
  Rational mu;
  Rational g;
  bool half_integer_mode = false;

  /// Validated construction; throws DomainError / NonGenericError.
  static Params make(FamilyTag family, Rational h, Rational mu, Rational g,
                     bool half_integer_mode = false);
  static Params morse(Rational h, Rational mu) { return make(FamilyTag::M, h, mu, 0); }
  static Params soliton(Rational h, bool half = false) { return make(FamilyTag::S, h, 0, 0, half); }
  static Params rosen_morse(Rational h, Rational mu, bool half = false) {
    return make(FamilyTag::RM, h, mu, 0, half);
  }
  static Params hst(Rational h, Rational mu, bool half = false) { return make(FamilyTag::HST, h, mu, 0, half); }
  static Params kh(Rational g, Rational mu) { return make(FamilyTag::KH, 0, mu, g); }
  static Params hdpt(Rational g, Rational h) { return make(FamilyTag::HDPT, h, 0, g); }

  /// Formal parameters (twisted or shifted); no validation.
  static Params formal(FamilyTag family, Rational h, Rational mu, Rational g);

  /// lambda + k delta, unvalidated.
  Params shifted(long k) const;
  /// lambda + k delta, validated (keeps the half-integer flag).
  Params shifted_valid(long k) const;
  void validate() const;

  friend bool operator==(const Params& a, const Params& b) {
    return a.family == b.family && a.h == b.h && a.mu == b.mu && a.g == b.g;
  }
  std::string to_string() const;
};

/// Exponent record of a closed-form prefactor
///   e^{rate x} e^{exp_coef e^x} (sinh x)^{sinh_pow} (cosh x)^{cosh_pow}
///   e^{atan_coef tan^{-1} sinh x}.
/// Its x-log-derivative is a rational function of t = e^x.
struct PrefactorExponents {
  Rational rate;
  Rational exp_coef;
  Rational sinh_pow;
  Rational cosh_pow;
  Rational atan_coef;

  /// d/dx log F at t = e^x.
  Rational logderiv(const Rational& t) const;
  /// d^2/dx^2 log F at t = e^x.
  Rational logderiv_dx(const Rational& t) const;
  double logderiv(double x) const;
  double logderiv_dx(double x) const;
  long double logderiv_dx(long double x) const;
  /// log|F(x)|.
  double log_abs(double x) const;
  bool is_trivial() const;

  PrefactorExponents& operator+=(const PrefactorExponents& o);
  PrefactorExponents& operator-=(const PrefactorExponents& o);
  friend PrefactorExponents operator+(PrefactorExponents a, const PrefactorExponents& b) { return a += b; }
  friend PrefactorExponents operator-(PrefactorExponents a, const PrefactorExponents& b) { return a -= b; }
  friend PrefactorExponents operator*(const Rational& k, PrefactorExponents a);
  friend bool operator==(const PrefactorExponents&, const PrefactorExponents&) = default;
};

/// Hyperbolic functions of x at t = e^x, exact.
struct HyperbolicAt {
  Rational t, sinh, cosh, tanh, sech;
  std::optional<Rational> coth, csch;  // undefined at t = 1
  explicit HyperbolicAt(const Rational& t);
};

enum class XDomain { FullLine, HalfLine };
XDomain x_domain(FamilyTag tag);
/// Image of the x-domain under eta: M (0,inf); S/HST (-inf,inf); RM (-1,1); KH/HDPT (1,inf).
OpenInterval eta_interval(FamilyTag tag);
/// Whether t = e^x lies in the family's x-domain.
bool t_in_domain(FamilyTag tag, const Rational& t);

Rational eta_at(FamilyTag tag, const Rational& t);
Rational deta_dx_at(FamilyTag tag, const Rational& t);
Rational d2eta_dx2_at(FamilyTag tag, const Rational& t);
double eta_at(FamilyTag tag, double x);
double deta_dx_at(FamilyTag tag, double x);
double d2eta_dx2_at(FamilyTag tag, double x);
long double eta_at(FamilyTag tag, long double x);
long double deta_dx_at(FamilyTag tag, long double x);
long double d2eta_dx2_at(FamilyTag tag, long double x);

/// Greatest n with a normalisable eigenstate.
long nmax(const Params& p);
/// Closed-form energy E_n, continued to rational n.
Rational eigen_energy(const Params& p, const Rational& n);
/// Forward/backward shift coefficients f_n and b_{n-1}.
Rational forward_shift_coefficient(const Params& p, long n);
Rational backward_shift_coefficient(const Params& p, long n);
/// Polynomial part P_n(eta; lambda) of phi_n; real after i^n folding.
PolyQ eigen_polynomial(const Params& p, long n);
/// Prefactor of phi_n(x; lambda): phi_0 for Group A, phi_0(lambda + n delta) for Group B.
PrefactorExponents eigen_prefactor(const Params& p, long n);
/// Prefactor of phi_0(x; lambda + k delta).
PrefactorExponents phi0_prefactor(const Params& p, long shift = 0);
Rational phi0_logderiv(const Params& p, long shift, const Rational& t);

Rational potential_value(const Params& p, const Rational& t);
double potential_value(const Params& p, double x);
long double potential_value(const Params& p, long double x);
/// Limits of U at the infinite ends; the smaller one is the continuum edge.
struct ContinuumLimits {
  std::optional<Rational> left;   // x -> -inf (full-line families)
  std::optional<Rational> right;  // x -> +inf
  Rational threshold() const;
};
ContinuumLimits continuum_limits(const Params& p);

/// Normalisation constant h_n by log-gamma; requires 0 <= n <= nmax.
double norm_constant(const Params& p, long n);

/// Jacobi polynomial P_n^{(alpha,beta)}(z) with Gaussian parameters.
PolyQ jacobi_polynomial(long n, const GaussianRational& alpha, const GaussianRational& beta);

/// Region of the continued energy curve E_n on the n axis.
struct CurveRegion {
  std::string label;           // a, b, b1, b2, b3, c, c1, c2, c3
  std::optional<Rational> lo;  // nullopt = -inf
  std::optional<Rational> hi;  // nullopt = +inf
  bool closed = false;         // region (a) is the closed range [0, nmax]
  bool contains(const Rational& n) const;
};

struct CurveSample {
  Rational n;
  Rational energy;
  std::string region;  // "-" outside every region
  bool discrete = false;
};

struct EnergyCurve {
  std::vector<CurveSample> samples;
  std::vector<CurveRegion> regions;
  std::vector<Rational> skipped_poles;
  /// Open n-intervals on which E_n < 0 (n > 0 side).
  std::vector<CurveRegion> negative_energy_regions;
};

std::vector<CurveRegion> curve_regions(const Params& p);
EnergyCurve energy_curve(const Params& p, const Rational& n_lo, const Rational& n_hi,
                         const Rational& step);

/// Complex log-gamma, real part of log|Gamma(x + i y)|.
double log_abs_gamma(double x, double y);

}  // namespace ratext
