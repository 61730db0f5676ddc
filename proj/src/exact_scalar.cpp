#include "distint/exact_scalar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace distint {

ExactScalar::ExactScalar(Rational q, int half_power) : q_(std::move(q)), h_(half_power) {
  q_.canonicalize();
  canonicalize();
}

void ExactScalar::canonicalize() {
  if (sgn(q_) == 0) h_ = 0;
}

double ExactScalar::to_double() const {
  if (is_zero()) return 0.0;
  // Integer powers of pi keep the error at a couple of ulps.
  long double v = q_.get_d();
  const long double pi = std::numbers::pi_v<long double>;
  int whole = h_ / 2;
  for (int i = 0; i < std::abs(whole); ++i) v = whole > 0 ? v * pi : v / pi;
  if (h_ % 2 != 0) {
    const long double root = std::sqrt(pi);
    v = h_ > 0 ? v * root : v / root;
  }
  return static_cast<double>(v);
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (h_ != o.h_) throw std::domain_error("adding ExactScalars with different powers of pi");
  q_ += o.q_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  q_ *= o.q_;
  h_ += o.h_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero ExactScalar");
  q_ /= o.q_;
  h_ -= o.h_;
  canonicalize();
  return *this;
}

ExactScalar gamma_half(int n2) {
  if (n2 <= 0) throw std::domain_error("gamma_half needs a positive argument");
  if (n2 % 2 == 0) return {factorial(static_cast<unsigned>(n2 / 2 - 1)), 0};
  // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
  const unsigned n = static_cast<unsigned>((n2 - 1) / 2);
  Rational q = factorial(2 * n) / (pow(Rational(4), n) * factorial(n));
  return {q, 1};
}

ExactScalar sphere_area(int j) {
  if (j < 1) throw std::domain_error("sphere_area needs j >= 1");
  return ExactScalar(Rational(2), j) / gamma_half(j);
}

std::string to_string(const ExactScalar& x) {
  std::string q = x.rational().get_str();
  const int h = x.half_power();
  if (x.is_zero() || h == 0) return q;
  std::string power;
  if (h == 2) {
    power = "pi";
  } else if (h % 2 == 0) {
    power = "pi^" + std::to_string(h / 2);
  } else {
    power = "pi^(" + std::to_string(h) + "/2)";
  }
  return q + " * " + power;
}

}  // namespace distint
