#include "ratext/jet.hpp"

#include <algorithm>

namespace ratext {

Jet Jet::constant(const Rational& t0, const Rational& v, std::size_t order) {
  std::vector<Rational> c(order);
  if (order > 0) c[0] = v;
  return {t0, std::move(c)};
}

Jet Jet::variable(const Rational& t0, std::size_t order) {
  std::vector<Rational> c(order);
  if (order > 0) c[0] = t0;
  if (order > 1) c[1] = Rational(1);
  return {t0, std::move(c)};
}

Jet Jet::d_dt() const {
  if (c_.empty()) return {t0_, {}};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return {t0_, std::move(d)};
}

Jet Jet::d_dx() const {
  const Jet d = d_dt();
  return Jet::variable(t0_, d.order()) * d;
}

Jet Jet::inverse() const {
  if (c_.empty()) return *this;
  if (c_[0].is_zero()) throw DomainError("jet inverse with zero constant term");
  std::vector<Rational> r(c_.size());
  r[0] = c_[0].inverse();
  for (std::size_t k = 1; k < c_.size(); ++k) {
    Rational acc;
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return {t0_, std::move(r)};
}

Jet& Jet::operator+=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.c_.size(), b.c_.size());
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return {a.t0_, std::move(r)};
}

Jet compose(const PolyQ& p, const Jet& u) {
  const auto c = p.real_coeffs();
  Jet acc = Jet::constant(u.t0(), Rational(0), u.order());
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * u + Jet::constant(u.t0(), c[k], u.order());
  }
  return acc;
}

}  // namespace ratext
