// Independent reference values used to validate the library.
//
// Nothing here calls the Pizzetti series or ExactScalar's Gamma helpers; the
// Gamma values are rebuilt from Gamma(1) = 1, Gamma(1/2) = sqrt(pi) and the
// recurrence Gamma(x + 1) = x Gamma(x).
#pragma once

#include <gmpxx.h>

#include <numeric>
#include <vector>

namespace oracle {

// q * sqrt(pi)^s.
struct PiValue {
  mpq_class q;
  int sqrt_pi_power = 0;
};

// Gamma(n / 2) for n >= 1.
inline PiValue gamma_half(int n) {
  PiValue v{mpq_class(1), n % 2 == 1 ? 1 : 0};
  for (int t = (n % 2 == 1 ? 1 : 2); t < n; t += 2) v.q *= mpq_class(t, 2);
  v.q.canonicalize();
  return v;
}

// int_{S^{m-1}} x^alpha dS = 2 prod Gamma((a_i + 1)/2) / Gamma(sum (a_i + 1)/2), 0 if any a_i is odd.
inline PiValue sphere_monomial(const std::vector<int>& alpha) {
  for (int a : alpha)
    if (a % 2 != 0) return {mpq_class(0), 0};
  PiValue num{mpq_class(2), 0};
  int total = 0;
  for (int a : alpha) {
    PiValue g = gamma_half(a + 1);
    num.q *= g.q;
    num.sqrt_pi_power += g.sqrt_pi_power;
    total += a + 1;
  }
  PiValue den = gamma_half(total);
  num.q /= den.q;
  num.q.canonicalize();
  num.sqrt_pi_power -= den.sqrt_pi_power;
  return num;
}

// |S^{j-1}| = 2 pi^{j/2} / Gamma(j/2).
inline PiValue sphere_area(int j) {
  PiValue g = gamma_half(j);
  PiValue r{mpq_class(2) / g.q, j - g.sqrt_pi_power};
  r.q.canonicalize();
  return r;
}

inline PiValue times(const PiValue& a, const PiValue& b) {
  PiValue r{a.q * b.q, a.sqrt_pi_power + b.sqrt_pi_power};
  r.q.canonicalize();
  return r;
}

}  // namespace oracle
