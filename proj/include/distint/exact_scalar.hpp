// Exact numbers of the form q * pi^(h/2) with q rational.
#pragma once

#include <string>

#include "distint/rational.hpp"

namespace distint {

/// q * pi^(h/2). Zero is canonicalised to h = 0, so equality is structural.
///
/// Products and quotients are always representable; sums require matching
/// half-powers (or a zero operand) and throw std::domain_error otherwise.
/// Pizzetti coefficients never leave this set because Gamma at positive
/// integers and half-integers is rational * pi^(0 or 1/2).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational q, int half_power = 0);  // NOLINT(google-explicit-constructor)

  static ExactScalar pi_power(int half_power) { return {Rational(1), half_power}; }

  const Rational& rational() const { return q_; }
  int half_power() const { return h_; }
  bool is_zero() const { return sgn(q_) == 0; }

  double to_double() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  ExactScalar operator-() const { return {Rational(-q_), h_}; }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  bool operator==(const ExactScalar& o) const { return h_ == o.h_ && q_ == o.q_; }

 private:
  void canonicalize();

  Rational q_{0};
  int h_ = 0;
};

/// Gamma(n2 / 2) for a positive integer n2, exactly.
ExactScalar gamma_half(int n2);

/// Surface area of the unit sphere S^{j-1} in R^j: 2 pi^{j/2} / Gamma(j/2).
ExactScalar sphere_area(int j);

/// Renders "q * pi^(h/2)" with the exponent reduced: "3/4", "4 * pi",
/// "8 * pi^2", "2 * pi^(3/2)", "0".
std::string to_string(const ExactScalar& x);

}  // namespace distint
