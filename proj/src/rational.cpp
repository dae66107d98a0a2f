#include "ratext/rational.hpp"

#include <cctype>

namespace ratext {

long double Rational::to_long_double() const {
  const double hi = q_.get_d();
  const mpq_class rest = q_ - mpq_class(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(text)) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text));
  }
  const auto n = text.substr(0, slash);
  const auto d = text.substr(slash + 1);
  if (!is_integer_token(n) || !is_integer_token(d) || d.front() == '-' || d.front() == '+') {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  const mpz_class den = parse_integer(d);
  if (den == 0) throw DomainError("rational with zero denominator '" + std::string(text) + "'");
  return Rational(parse_integer(n), den);
}

bool Rational::is_half_integer_multiple() const {
  return mpq_class(q_ * 2).get_den() == 1;
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

long Rational::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p()) {
    throw DomainError("rational " + to_string() + " is not a machine integer");
  }
  return q_.get_num().get_si();
}

std::string Rational::to_string() const { return q_.get_str(); }

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return GaussianRational(1) / pow(-e);
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string GaussianRational::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string s = re.to_string();
  s += im.sign() < 0 ? "-" : "+";
  s += im.abs().to_string();
  s += "i";
  return s;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  if (!o.im.is_zero()) im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  if (!o.im.is_zero()) im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (o.im.is_zero()) {
    re /= o.re;
    if (!im.is_zero()) im /= o.re;
    return *this;
  }
  const Rational n = o.norm2();
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

GaussianRational pochhammer(const GaussianRational& x, long n) {
  GaussianRational r(1);
  for (long k = 0; k < n; ++k) r *= x + GaussianRational(Rational(k));
  return r;
}

Rational pochhammer(const Rational& x, long n) {
  Rational r(1);
  for (long k = 0; k < n; ++k) r *= x + Rational(k);
  return r;
}

Rational binomial(const Rational& r, long k) {
  if (k < 0) return Rational(0);
  Rational num(1);
  for (long j = 0; j < k; ++j) num *= r - Rational(j);
  return num / factorial(k);
}

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace ratext
