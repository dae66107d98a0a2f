#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ratext/families.hpp"
#include "ratext/jet.hpp"
#include "ratext/poly.hpp"
#include "ratext/rational.hpp"

namespace oracle {

using ratext::Rational;

/// P_n^{(a,b)}(z) = sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^{n-s}.
inline Rational jacobi_at(long n, const Rational& a, const Rational& b, const Rational& z) {
  Rational acc;
  const Rational zm = (z - Rational(1)) / Rational(2);
  const Rational zp = (z + Rational(1)) / Rational(2);
  for (long s = 0; s <= n; ++s) {
    acc += ratext::binomial(Rational(n) + a, n - s) * ratext::binomial(Rational(n) + b, s) * zm.pow(s) *
           zp.pow(n - s);
  }
  return acc;
}

/// -phi'' + U phi - E phi divided by the prefactor, for phi = F P(eta(x)),
/// evaluated exactly at t = e^x. Vanishes iff phi solves the equation there.
inline Rational schrodinger_residual(const ratext::Params& potential, const ratext::PrefactorExponents& F,
                                     const ratext::PolyQ& P, const Rational& energy, const Rational& t) {
  using namespace ratext;
  const FamilyTag tag = potential.family;
  const Rational eta = eta_at(tag, t);
  const Rational e1 = deta_dx_at(tag, t);
  const Rational e2 = d2eta_dx2_at(tag, t);
  const PolyQ dP = P.derivative();
  const Rational p0 = P.eval_real(eta);
  const Rational p1 = dP.eval_real(eta);
  const Rational p2 = dP.derivative().eval_real(eta);
  const Rational l = F.logderiv(t);
  const Rational ldx = F.logderiv_dx(t);
  const Rational second = (ldx + l * l) * p0 + Rational(2) * l * p1 * e1 + p2 * e1 * e1 + p1 * e2;
  return -second + (potential_value(potential, t) - energy) * p0;
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Sample points t = e^x with x inside the family's domain.
inline std::vector<Rational> sample_ts(ratext::FamilyTag tag, int count) {
  std::vector<Rational> ts;
  for (int k = 0; k < count; ++k) {
    Rational t(2 * k + 3, k + 2);
    if (tag != ratext::FamilyTag::KH && tag != ratext::FamilyTag::HDPT && k % 2 == 1) t = t.inverse();
    ts.push_back(t);
  }
  return ts;
}

/// eta(t) as a jet about t0.
inline ratext::Jet eta_jet(ratext::FamilyTag tag, const Rational& t0, std::size_t order) {
  using ratext::Jet;
  const Jet t = Jet::variable(t0, order);
  const Jet one = Jet::constant(t0, Rational(1), order);
  const Jet t2 = t * t;
  switch (tag) {
    case ratext::FamilyTag::M: return t.inverse();
    case ratext::FamilyTag::S:
    case ratext::FamilyTag::HST: return (t - t.inverse()) * Rational(1, 2);
    case ratext::FamilyTag::RM: return (t2 - one) / (t2 + one);
    case ratext::FamilyTag::KH: return (t2 + one) / (t2 - one);
    case ratext::FamilyTag::HDPT: return (t2 * t2 + one) / (t2 * Rational(2));
  }
  return t;
}

/// d/dx log F as a jet: rate + exp_coef t + sinh_pow coth + cosh_pow tanh + atan_coef sech.
inline ratext::Jet logderiv_jet(const ratext::PrefactorExponents& F, const Rational& t0, std::size_t order) {
  using ratext::Jet;
  const Jet t = Jet::variable(t0, order);
  const Jet one = Jet::constant(t0, Rational(1), order);
  const Jet t2 = t * t;
  Jet acc = Jet::constant(t0, F.rate, order) + t * F.exp_coef;
  if (!F.sinh_pow.is_zero()) acc += (t2 + one) / (t2 - one) * F.sinh_pow;
  if (!F.cosh_pow.is_zero()) acc += (t2 - one) / (t2 + one) * F.cosh_pow;
  if (!F.atan_coef.is_zero()) acc += t / (t2 + one) * (Rational(2) * F.atan_coef);
  return acc;
}

/// W[F_j P_j(eta)] / prod F_j at t0 from x-derivatives of t-jets.
inline Rational wronskian_over_prefactors(ratext::FamilyTag tag,
                                          const std::vector<std::pair<ratext::PrefactorExponents, ratext::PolyQ>>& fs,
                                          const Rational& t0) {
  using ratext::Jet;
  const std::size_t m = fs.size();
  const std::size_t order = m + 2;
  const Jet eta = eta_jet(tag, t0, order);
  std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const Jet l = logderiv_jet(fs[j].first, t0, order);
    Jet q = ratext::compose(fs[j].second, eta);
    for (std::size_t k = 0; k < m; ++k) {
      mat[k][j] = q.value();
      q = l * q + q.d_dx();
    }
  }
  return ratext::determinant<Rational>(mat, Rational(0), Rational(1));
}

/// F(x) at t = e^x for a prefactor with integer exponents only.
inline Rational integer_prefactor_value(const ratext::PrefactorExponents& F, const Rational& t) {
  if (!F.exp_coef.is_zero() || !F.atan_coef.is_zero() || !F.rate.is_integer() || !F.sinh_pow.is_integer() ||
      !F.cosh_pow.is_integer()) {
    throw std::logic_error("prefactor is not rational in t");
  }
  const ratext::HyperbolicAt hy(t);
  return t.pow(F.rate.to_long()) * hy.sinh.pow(F.sinh_pow.to_long()) * hy.cosh.pow(F.cosh_pow.to_long());
}

}  // namespace oracle
