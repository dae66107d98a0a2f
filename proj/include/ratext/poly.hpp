#pragma once

// Univariate polynomials over Q(i), Wronskians, Sturm root counting.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratext/rational.hpp"

namespace ratext {

/// Polynomial in one variable (conventionally eta) with Gaussian-rational
/// coefficients, stored by increasing power and kept trimmed: the leading
/// coefficient is nonzero unless the polynomial is zero.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(GaussianRational c);  // NOLINT(google-explicit-constructor)
  explicit PolyQ(std::vector<GaussianRational> coeffs);
  static PolyQ from_real(std::vector<Rational> coeffs);
  static PolyQ monomial(GaussianRational c, std::size_t power);
  /// The polynomial x.
  static PolyQ x();

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; -1 for zero.
  long low_degree() const;
  bool is_real() const;

  const std::vector<GaussianRational>& coeffs() const { return c_; }
  GaussianRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussianRational(); }
  GaussianRational leading() const { return c_.empty() ? GaussianRational() : c_.back(); }
  /// Real parts; throws ConsistencyError unless is_real().
  std::vector<Rational> real_coeffs() const;

  GaussianRational eval(const GaussianRational& x) const;
  /// Evaluates a real polynomial at a rational point.
  Rational eval_real(const Rational& x) const;
  /// Double-precision evaluation of the real parts.
  double eval_double(double x) const;

  PolyQ derivative() const;
  /// p(c x)
  PolyQ scale_argument(const GaussianRational& c) const;
  PolyQ pow(unsigned e) const;
  PolyQ with_coeff(std::size_t k, const GaussianRational& c) const;

  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  PolyQ& operator*=(const PolyQ& o);
  PolyQ& operator*=(const GaussianRational& s);

  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(PolyQ a, const GaussianRational& s) { return a *= s; }
  friend PolyQ operator*(const GaussianRational& s, PolyQ a) { return a *= s; }
  friend PolyQ operator-(const PolyQ& a);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "eta") const;

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

struct DivMod {
  PolyQ quotient;
  PolyQ remainder;
};

DivMod divmod(const PolyQ& a, const PolyQ& b);
/// a / b, throws DomainError when the division leaves a remainder.
PolyQ exact_div(const PolyQ& a, const PolyQ& b);
/// Monic greatest common divisor; gcd(0, 0) = 0.
PolyQ gcd(const PolyQ& a, const PolyQ& b);

/// Determinant by Laplace expansion over column subsets (memoised), usable for
/// any commutative ring element type. Rows are expanded in order, so the cost
/// is O(n 2^n) ring multiplications.
template <class T>
T determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  std::vector<T> dp(std::size_t{1} << n, zero);
  std::vector<bool> have(dp.size(), false);
  dp[0] = one;
  have[0] = true;
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const int cnt = __builtin_popcountll(mask);
    const std::size_t row = static_cast<std::size_t>(cnt - 1);
    T acc = zero;
    int above = 0;  // columns in mask greater than j
    for (std::size_t jj = n; jj-- > 0;) {
      if (!(mask & (std::size_t{1} << jj))) continue;
      const std::size_t sub = mask & ~(std::size_t{1} << jj);
      T term = m[row][jj] * dp[sub];
      if (above % 2 == 0) {
        acc = acc + term;
      } else {
        acc = acc - term;
      }
      ++above;
    }
    dp[mask] = acc;
    have[mask] = true;
  }
  return dp.back();
}

/// Wronskian determinant det(f_j^{(k)}) of polynomials in their own variable.
PolyQ poly_wronskian(std::span<const PolyQ> fs);

/// Open interval (lo, hi) with optional infinite ends.
struct OpenInterval {
  std::optional<Rational> lo;  // nullopt = -infinity
  std::optional<Rational> hi;  // nullopt = +infinity

  static OpenInterval whole_line() { return {}; }
  static OpenInterval between(Rational a, Rational b);
  static OpenInterval above(Rational a) { return {std::move(a), std::nullopt}; }
  bool contains(const Rational& x) const;
  std::string to_string() const;
};

struct RootCount {
  long count = 0;             // distinct roots strictly inside the interval
  bool root_at_lo = false;    // exact root at a finite endpoint
  bool root_at_hi = false;
};

/// Number of distinct real roots of a real polynomial in an open interval.
long sturm_count_roots(const PolyQ& p, const OpenInterval& iv);
/// Same count plus endpoint diagnostics.
RootCount sturm_root_report(const PolyQ& p, const OpenInterval& iv);

/// Returns c with p = c q when it exists.
std::optional<GaussianRational> poly_proportional(const PolyQ& p, const PolyQ& q);

/// Sign of a real polynomial as x -> +inf (toward_plus) or at a finite point
/// approached from the right/left, using the first nonvanishing derivative.
int sign_near(const PolyQ& p, const Rational& x, bool from_right);
int sign_at_infinity(const PolyQ& p, bool plus);

/// log|r| for a nonzero rational, safe for huge numerators/denominators.
double log_abs_rational(const Rational& r);

/// Double-precision view of a real polynomial, with coefficients divided by
/// their largest magnitude so that evaluation neither overflows nor loses the
/// scale. For |x| > 1 evaluation runs on the reversed polynomial in 1/x.
class ScaledPoly {
 public:
  ScaledPoly() = default;
  explicit ScaledPoly(const PolyQ& p);

  /// log|p(x)|; -inf at a root.
  double log_abs(double x) const;
  int sign(double x) const;
  /// p'(x)/p(x) and p''(x)/p(x).
  std::pair<long double, long double> log_derivs(long double x) const;

 private:
  // Returns (sum c_k x^k k^(j)) / x^{deg} style partial sums for j = 0, 1, 2.
  void sums(long double x, long double& s0, long double& s1, long double& s2) const;
  std::vector<long double> c_;
  double log_scale_ = 0.0;
};

}  // namespace ratext
