// Exact polynomials in the components of K vector variables x_1..x_K in R^m,
// and the differential operators acting on them.
//
// Scalar components are flattened as index var * m + comp (both 0-based).
// Differential operators are represented by their Fischer-dual symbol: the
// polynomial obtained by substituting x_{j,i} for d/dx_{j,i}.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "distint/clifford.hpp"
#include "distint/rational.hpp"

namespace distint {

class VectorPoly {
 public:
  using Exponents = std::vector<std::uint8_t>;
  using Terms = std::map<Exponents, Rational>;

  VectorPoly() = default;
  VectorPoly(int m, int num_vars);

  static VectorPoly constant(int m, int num_vars, const Rational& c);
  /// x_{var,comp}, both 0-based.
  static VectorPoly variable(int m, int num_vars, int var, int comp);
  /// <x_a, x_b>.
  static VectorPoly dot(int m, int num_vars, int a, int b);
  /// ||x_j||^2.
  static VectorPoly normsq(int m, int num_vars, int j);

  int dimension() const { return m_; }
  int num_vars() const { return k_; }
  int num_scalars() const { return m_ * k_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in the components of vector variable `var`; -1 for zero.
  int degree_in(int var) const;

  VectorPoly& operator+=(const VectorPoly& o);
  VectorPoly& operator-=(const VectorPoly& o);
  VectorPoly& operator*=(const VectorPoly& o);
  VectorPoly& operator*=(const Rational& c);
  VectorPoly operator-() const;

  bool operator==(const VectorPoly& o) const {
    return m_ == o.m_ && k_ == o.k_ && terms_ == o.terms_;
  }

  double evaluate(std::span<const double> x) const;

  void check_compatible(const VectorPoly& o) const;

 private:
  int m_ = 0;
  int k_ = 0;
  Terms terms_;
};

VectorPoly operator+(VectorPoly a, const VectorPoly& b);
VectorPoly operator-(VectorPoly a, const VectorPoly& b);
VectorPoly operator*(const VectorPoly& a, const VectorPoly& b);
VectorPoly operator*(VectorPoly a, const Rational& c);
VectorPoly operator*(const Rational& c, VectorPoly a);
VectorPoly pow(const VectorPoly& p, unsigned n);

inline VectorPoly poly_add(const VectorPoly& a, const VectorPoly& b) { return a + b; }
inline VectorPoly poly_mul(const VectorPoly& a, const VectorPoly& b) { return a * b; }
inline VectorPoly poly_scale(const VectorPoly& a, const Rational& c) { return a * c; }

/// d/dx_{var,comp} P.
VectorPoly partial(const VectorPoly& p, int var, int comp);
/// Laplacian in the vector variable `var`.
VectorPoly laplacian(const VectorPoly& p, int var);
/// <x_coeff, d_{x_deriv}> P = sum_i x_{coeff,i} d/dx_{deriv,i} P.
VectorPoly mixed_directional(const VectorPoly& p, int coeff_var, int deriv_var);
/// P with x_var = 0.
VectorPoly set_variable_zero(const VectorPoly& p, int var);
/// Constant term.
Rational eval_at_zero(const VectorPoly& p);

/// Same polynomial viewed in a space with more vector variables.
VectorPoly embed(const VectorPoly& p, int num_vars);

/// All monic monomials of total degree <= max_degree.
std::vector<VectorPoly> monomials(int m, int num_vars, int max_degree);

struct DiffOp {
  VectorPoly symbol;

  static DiffOp laplacian(int m, int num_vars, int var) {
    return {VectorPoly::normsq(m, num_vars, var)};
  }
  /// <d_{x_a}, d_{x_b}>.
  static DiffOp mixed(int m, int num_vars, int a, int b) {
    return {VectorPoly::dot(m, num_vars, a, b)};
  }
};

/// D(d)[P].
VectorPoly apply_diffop(const DiffOp& d, const VectorPoly& p);
/// D(d)[P] evaluated at zero, without forming the intermediate polynomial.
Rational apply_at_zero(const DiffOp& d, const VectorPoly& p);
/// Q(-d)[R].
VectorPoly fischer_commute(const VectorPoly& r, const VectorPoly& q);
/// <R(d)[delta], g> = sum_beta (-1)^{|beta|} R_beta d^beta g (0).
Rational fischer_pairing(const VectorPoly& r, const VectorPoly& g);

/// Canonical text in the parser grammar, e.g. "3/2*x1_1^2*x2_3 - x1_2 + 5".
std::string to_string(const VectorPoly& p);

template <>
struct ScalarTraits<VectorPoly> {
  static bool is_zero(const VectorPoly& p) { return p.is_zero(); }
};

/// Clifford-valued polynomial field.
using MvPoly = Multivector<VectorPoly>;

/// Constant blade e_b as an MvPoly.
MvPoly mv_constant(int m, int num_vars, Blade b, const Rational& c);
/// Lifts an exact multivector to constant polynomial coefficients.
MvPoly lift(const Multivector<Rational>& a, int num_vars);
/// Dirac gradient d_x[phi] = sum_j e_j d_j phi of a scalar field (one vector variable).
MvPoly gradient(const VectorPoly& phi);
/// Componentwise partial derivative of a Clifford-valued field.
MvPoly partial(const MvPoly& f, int var, int comp);
/// The scalar field at a point, as numeric multivector.
Multivector<double> evaluate(const MvPoly& f, std::span<const double> x);

}  // namespace distint
