#pragma once

// Truncated Taylor expansions about a rational point t0 (in s = t - t0) with
// exact coefficients. Used to evaluate x-derivatives of functions that are
// rational in t = e^x exactly at a sample point.

#include <cstddef>
#include <vector>

#include "ratext/poly.hpp"
#include "ratext/rational.hpp"

namespace ratext {

class Jet {
 public:
  Jet() = default;
  Jet(Rational t0, std::vector<Rational> coeffs) : t0_(std::move(t0)), c_(std::move(coeffs)) {}

  static Jet constant(const Rational& t0, const Rational& v, std::size_t order);
  /// The identity function t expanded about t0.
  static Jet variable(const Rational& t0, std::size_t order);

  const Rational& t0() const { return t0_; }
  std::size_t order() const { return c_.size(); }
  const Rational& value() const { return c_.at(0); }
  const Rational& coeff(std::size_t k) const { return c_.at(k); }

  /// d/dt; the result has one fewer known coefficient.
  Jet d_dt() const;
  /// d/dx = t d/dt for t = e^x.
  Jet d_dx() const;
  Jet inverse() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Rational& s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
  friend Jet operator*(const Rational& s, Jet a) { return a *= s; }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
  friend Jet operator-(const Jet& a) { return a * Rational(-1); }

 private:
  Rational t0_;
  std::vector<Rational> c_;
};

/// p(u) for a real polynomial p and a jet u.
Jet compose(const PolyQ& p, const Jet& u);

}  // namespace ratext
