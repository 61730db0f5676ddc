// Differential forms on R^m with Clifford-valued polynomial coefficients.
//
// A form is a sparse map dx_B -> MvPoly. The e_A and dx_B gradings are kept
// apart: e's multiply as Clifford generators, dx's anticommute among
// themselves, and e's commute with dx's.
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "distint/clifford.hpp"
#include "distint/polyalg.hpp"

namespace distint {

class CliffordForm {
 public:
  using Terms = std::map<Blade, MvPoly>;

  CliffordForm() = default;
  explicit CliffordForm(int m);

  /// 0-form with the given Clifford-valued coefficient.
  static CliffordForm function(const MvPoly& coefficient);
  /// dx_j for 1-based j.
  static CliffordForm dx(int m, int j);
  /// dV = dx_1 ... dx_m.
  static CliffordForm volume(int m);
  /// Vector differential dx = sum_j e_j dx_j.
  static CliffordForm vector_differential(int m);
  /// d(phi) = sum_j d_j phi dx_j, scalar coefficients.
  static CliffordForm differential(const VectorPoly& phi);

  int dimension() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common degree |B| of all terms; -1 for zero or mixed degree.
  int degree() const;

  void add_term(Blade dx, MvPoly coefficient);

  CliffordForm& operator+=(const CliffordForm& o);
  CliffordForm& operator-=(const CliffordForm& o);
  CliffordForm operator-() const;
  bool operator==(const CliffordForm& o) const { return m_ == o.m_ && terms_ == o.terms_; }

  void check_same(const CliffordForm& o) const;

 private:
  int m_ = 0;
  Terms terms_;
};

CliffordForm operator+(CliffordForm a, const CliffordForm& b);
CliffordForm operator-(CliffordForm a, const CliffordForm& b);

/// Exterior product; coefficients multiply as Clifford products (left then right).
CliffordForm form_mul(const CliffordForm& a, const CliffordForm& b);
inline CliffordForm operator*(const CliffordForm& a, const CliffordForm& b) { return form_mul(a, b); }

/// alpha^n / n!.
CliffordForm divided_power(const CliffordForm& alpha, unsigned n);

/// Coefficientwise a * c_B and c_B * a.
CliffordForm left_multiply(const MvPoly& a, const CliffordForm& f);
CliffordForm right_multiply(const CliffordForm& f, const MvPoly& a);
/// Coefficientwise v . c_B and v ^ c_B.
CliffordForm coefficient_dot(const MvPoly& v, const CliffordForm& f);
CliffordForm coefficient_wedge(const MvPoly& v, const CliffordForm& f);
CliffordForm scale(const CliffordForm& f, const Rational& c);

/// d = sum_j dx_j d/dx_j (dx_j placed on the left).
CliffordForm exterior_derivative(const CliffordForm& alpha);

/// l(A) = sum_i (j_i - i) for A = {j_1 < ... < j_k}; A given as a blade.
int ell_sign(Blade a, int m);
int ell_sign(std::span<const int> indices, int m);

/// Oriented (m-k)-surface element: sum_{|A|=k} (-1)^{l(A)} e_A dx_{M\A}.
CliffordForm psi(int m, int k, int num_vars = 1);

/// Result of an exact identity check; carries the first differing dx term.
struct IdentityCheck {
  bool holds = true;
  std::string first_difference;
  explicit operator bool() const { return holds; }
};

IdentityCheck compare_forms(const CliffordForm& lhs, const CliffordForm& rhs);

/// d phi_1 ... d phi_k Psi_{m-k} == (d[phi_1] ^ ... ^ d[phi_k]) dV.
IdentityCheck check_oriented_surface_element(std::span<const VectorPoly> phases, int m);
/// (dx)^{m-k}/(m-k)! == (-1)^{k(k+1)/2} Psi_{m-k} e_M.
IdentityCheck check_vector_differential_power(int m, int k);
/// d[phi] . (dx)^k/k! == -d phi (dx)^{k-1}/(k-1)!, 1 <= k <= m.
IdentityCheck check_gradient_dot_divided_power(const VectorPoly& phi, int k);
/// (d[phi_1]^...^d[phi_k]) (dx)^m/m! == (-1)^{k(k+1)/2} d phi_1...d phi_k (dx)^{m-k}/(m-k)!.
IdentityCheck check_gradient_wedge_volume(std::span<const VectorPoly> phases, int m);
/// (d_x ^ Psi_{m-k})[f] == (-1)^k d(f Psi_{m-k-1}) for a scalar test function f, k < m.
IdentityCheck check_wedge_surface_element(int m, int k, const VectorPoly& f);

}  // namespace distint
