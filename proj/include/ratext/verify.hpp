#pragma once

// Verification engines: exact identity checks by rational sampling in t = e^x,
// tanh-sinh quadrature for inner products, and a finite-difference eigensolver
// for the spectra of extended potentials.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ratext/extension.hpp"

namespace ratext {

struct IdentityReport {
  std::string id;
  long sample_count = 0;
  long skipped_poles = 0;
  Rational max_residual;  // max |lhs - rhs| over the samples
  bool pass = false;
};

enum class ShapeVariant { Minus, Plus, Fixed };
std::string shape_variant_name(ShapeVariant v);
ShapeVariant parse_shape_variant(std::string_view s);
/// minus for overshoot sets, plus for Kh twists, fixed for hDPT twists.
ShapeVariant default_shape_variant(const ExtensionSpec& spec);

/// Adds delta to one coefficient of Xi_D on the left-hand side.
struct XiMutation {
  std::size_t index = 0;
  Rational delta{1, 1000};
};

/// (w_D')^2 - w_D'' = (w')^2 + w'' of the shifted set at lambda + delta, plus E_1.
IdentityReport verify_shape_invariance(const ExtensionSpec& spec, ShapeVariant variant,
                                       std::optional<XiMutation> mutation = std::nullopt);

/// d/dx (W_{s+1} / W_{s-1}) = (E~_{d_s} - E~_{d_{s+1}}) (W_s / W_{s-1}) (W'_s / W_{s-1}),
/// W'_s built from d_1..d_{s-1}, d_{s+1}. Uses the first s+1 seeds of spec.
IdentityReport verify_ddx_wronskian(const ExtensionSpec& spec, long s, const Rational& energy_offset = Rational(0));

/// Distinct rational points 3/2, 5/3, 7/4, ... (alternately inverted on full-line
/// families) inside the x-domain.
std::vector<Rational> sample_points(FamilyTag family, long count, long start = 0);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
  std::optional<std::string> warning;
};

/// Double-exponential quadrature over the family x-domain: x = sinh(pi/2 sinh u)
/// on the line, x = exp(pi/2 sinh u) on the half-line.
QuadratureResult integrate(const std::function<double(double)>& f, XDomain domain, double rel_tol = 1e-10);

/// (f, g) with the product formed in log space.
QuadratureResult quadrature_inner_product(const RatioFunction& f, const RatioFunction& g, double rel_tol = 1e-10);

/// phi_n(x; lambda) as a ratio function.
RatioFunction eigenfunction(const Params& p, long n);

// ---------------------------------------------------------------------------
// Finite-difference spectra

/// Uniform in x, or uniform in s = log x (half-line, Liouville-transformed).
enum class GridKind { Uniform, Logarithmic };
std::string grid_kind_name(GridKind k);
/// Default wall position on the log grid.
inline constexpr double kLogGridWall = 1e-24;

struct SpectrumOptions {
  double grid = 1.0 / 200;        // coarse spacing (in x, or in log x); the fine grid is half of it
  double truncate = 20.0;         // |x| <= truncate, or x <= 1.25 truncate on the half-line
  std::optional<GridKind> grid_kind;  // log on the half-line unless set
  std::optional<double> x_lo, x_hi;
  double margin = 1e-3;           // levels above threshold - margin are dropped
  bool enlargement_check = true;
  bool order_study = false;       // adds a grid/4 solve for the observed order
  double enlargement_tol = 1e-6;
};

struct NumericLevel {
  long index = 0;
  std::vector<double> values;  // one per grid, coarse first
  double extrapolated = 0.0;
  std::vector<double> error_estimates;  // |value - extrapolated| per grid
  std::optional<double> observed_order;
};

struct SpectrumReport {
  GridKind grid_kind = GridKind::Uniform;
  std::vector<double> grids;
  double x_lo = 0.0, x_hi = 0.0;
  double threshold = 0.0;
  std::optional<double> left_limit, right_limit;
  std::vector<NumericLevel> levels;
  std::vector<std::string> warnings;
};

/// Eigenvalues of -d^2/dx^2 + U with Dirichlet ends below `below`, three-point
/// stencil with n interior nodes, by bisection on the tridiagonal Sturm count.
std::vector<double> fd_eigenvalues(const std::function<double(double)>& U, double x_lo, double x_hi, long n,
                                   double below, GridKind kind = GridKind::Uniform);

SpectrumReport schrodinger_spectrum(const std::function<double(double)>& U, double threshold, double x_lo,
                                    double x_hi, const SpectrumOptions& opts = {});
/// Threshold and default truncation from the family; throws SingularExtensionError
/// for singular potentials.
SpectrumReport schrodinger_spectrum(const PotentialEvaluator& pot, const SpectrumOptions& opts = {});

struct LevelComparison {
  long n = 0;
  Rational exact;
  double numeric = 0.0;
  double abs_err = 0.0;
  bool added = false;
};

struct IsospectralReport {
  SpectrumReport numeric;
  std::vector<LevelComparison> levels;
  double tolerance = 1e-3;
  bool pass = false;
  std::string detail;
};

/// Compares the FD spectrum of U^[M] with the exact levels of the extension
/// (original levels plus added type III levels).
IsospectralReport verify_isospectral(const ExtensionSpec& spec, const SpectrumOptions& opts = {},
                                     double rel_tol = 1e-3);

struct EquivalenceReport {
  bool available = false;
  std::string reason;
  std::vector<long> reduced;
  long N = 0;
  std::vector<long> bar_degrees;
  std::optional<Params> bar_params;
  bool proportional = false;
  std::optional<Rational> ratio;
  long ell_bar = 0;     // sum d'_j - M(M-1)/2
  long bar_degree = -1; // deg Xi_barD
  bool degree_ok = false;
  bool pass = false;
};

/// Xi_D (reduced for the soliton) against the eigenstate-deletion Wronskian Xi_barD.
/// Unavailable families still run the comparison and report the failure.
EquivalenceReport verify_halfint_equivalence(const ExtensionSpec& spec, std::optional<long> N = std::nullopt);

/// n,E_exact,E_numeric,abs_err rows with 17 significant digits.
std::string spectrum_csv(const IsospectralReport& r);

}  // namespace ratext
