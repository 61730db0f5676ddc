// Exact Pizzetti formulas: integrals of polynomials over spheres and real
// Stiefel manifolds St(m, k) as finite series of invariant differential
// operators evaluated at the origin.
#pragma once

#include "distint/exact_scalar.hpp"
#include "distint/polyalg.hpp"

namespace distint {

struct PizzettiResult {
  ExactScalar value;
  int terms_used = 0;         // series terms summed in the last factor
  int truncation_degree = 0;  // polynomial degree that fixed the truncation
};

/// Coefficient c_{k,m} = 2 pi^{m/2} / (4^k k! Gamma(k + m/2)) of Phi_m.
ExactScalar phi_coefficient(int k, int m);

/// int_{S^{m-1}} P dS for P in one vector variable of dimension m >= 2.
/// `extra_terms` sums that many series terms beyond the exact truncation.
PizzettiResult sphere_pizzetti_series(const VectorPoly& p, int m, int extra_terms = 0);
inline ExactScalar sphere_pizzetti(const VectorPoly& p, int m) { return sphere_pizzetti_series(p, m).value; }

/// int_{St(m,k)} P dS by composing k spherical Pizzetti formulas in
/// dimensions m, m-1, ..., m-k+1; the factor for x_k is applied first.
/// Requires 1 <= k <= m-1 and P in k vector variables.
PizzettiResult stiefel_pizzetti_series(const VectorPoly& p, int m, int k, int extra_terms = 0);
inline ExactScalar stiefel_pizzetti_composed(const VectorPoly& p, int m, int k) {
  return stiefel_pizzetti_series(p, m, k).value;
}

/// Closed St(m,2) formula with constant-coefficient operators
/// A = Lap_x + Lap_y and B = Lap_x Lap_y - <d_x, d_y>^2. Requires m >= 3.
PizzettiResult stiefel2_explicit_series(const VectorPoly& p, int m, int extra_terms = 0);
inline ExactScalar stiefel2_explicit(const VectorPoly& p, int m) { return stiefel2_explicit_series(p, m).value; }

/// Volume of St(m, k): prod_{j=1}^k A_{m-j+1}.
ExactScalar stiefel_volume(int m, int k);

/// Closed form of <d_x, y>^{2j} [ ||x||^{2k+2j} ] in terms of ||y||^2, B, ||x||^2
/// (x is vector variable 0 and y is variable 1 of the result).
VectorPoly delm_apply(int j, int k, int m);

/// Both sides of the terminating Gauss-sum identity used for St(m,2).
ExactScalar gauss_sum_lhs(int r, int l, int k, int m);
ExactScalar gauss_sum_rhs(int r, int l, int k, int m);
bool gauss_sum_check(int r, int l, int k, int m);

}  // namespace distint
