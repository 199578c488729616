#include "topweight/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace topweight {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::from_strings(const std::string& num, const std::string& den) {
  Integer n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + num + "/" + den);
  }
  if (d <= 0) throw std::invalid_argument("denominator must be positive");
  Rational out(n, d);
  // Reject non-reduced input so serialization stays bit-exact.
  if (out.numerator() != n || out.denominator() != d) {
    throw std::invalid_argument("rational not in lowest terms: " + num + "/" + den);
  }
  return out;
}

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) throw std::invalid_argument("negative precision");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer num = abs(q_.get_num()) * scale;
  const Integer& den = q_.get_den();
  // Round half away from zero.
  Integer scaled = (2 * num + den) / (2 * den);
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (sign() < 0 && scaled != 0 ? "-" : "") + body;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rational(mpq_class(1) / q_);
}

Rational Rational::pow(int e) const {
  if (e < 0) return reciprocal().pow(-e);
  mpq_class out(1);
  for (int i = 0; i < e; ++i) out *= q_;
  return Rational(out);
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace topweight
