#include "distint/exterior.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace distint {

namespace {

int num_vars_of(const MvPoly& c) {
  return c.terms().empty() ? 1 : c.terms().begin()->second.num_vars();
}

std::string dx_name(Blade b) {
  if (b == 0) return "1";
  std::string s;
  for (int j : blade_indices(b)) s += "dx" + std::to_string(j);
  return s;
}

std::string describe(const MvPoly& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, p] : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(p) << ")";
    for (int j : blade_indices(b)) os << "e" << j;
  }
  return os.str();
}

int sign_power(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

CliffordForm::CliffordForm(int m) : m_(m) {
  if (m < 1 || m > kMaxDimension) throw std::invalid_argument("form dimension out of range");
}

CliffordForm CliffordForm::function(const MvPoly& coefficient) {
  CliffordForm f(coefficient.dimension());
  f.add_term(0, coefficient);
  return f;
}

CliffordForm CliffordForm::dx(int m, int j) {
  if (j < 1 || j > m) throw std::out_of_range("dx index out of range");
  CliffordForm f(m);
  f.add_term(Blade{1} << (j - 1), mv_constant(m, 1, 0, Rational(1)));
  return f;
}

CliffordForm CliffordForm::volume(int m) {
  CliffordForm f(m);
  f.add_term(full_blade(m), mv_constant(m, 1, 0, Rational(1)));
  return f;
}

CliffordForm CliffordForm::vector_differential(int m) {
  CliffordForm f(m);
  for (int j = 0; j < m; ++j) f.add_term(Blade{1} << j, mv_constant(m, 1, Blade{1} << j, Rational(1)));
  return f;
}

CliffordForm CliffordForm::differential(const VectorPoly& phi) {
  const int m = phi.dimension();
  CliffordForm f(m);
  for (int j = 0; j < m; ++j) f.add_term(Blade{1} << j, MvPoly::scalar(m, partial(phi, 0, j)));
  return f;
}

int CliffordForm::degree() const {
  if (terms_.empty()) return -1;
  int d = grade_of(terms_.begin()->first);
  for (const auto& [b, c] : terms_)
    if (grade_of(b) != d) return -1;
  return d;
}

void CliffordForm::add_term(Blade dx, MvPoly coefficient) {
  if ((dx & ~full_blade(m_)) != 0) throw std::out_of_range("dx blade exceeds dimension");
  if (coefficient.dimension() != m_) throw std::invalid_argument("coefficient dimension mismatch");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(dx, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void CliffordForm::check_same(const CliffordForm& o) const {
  if (m_ != o.m_) throw std::invalid_argument("form dimension mismatch");
}

CliffordForm& CliffordForm::operator+=(const CliffordForm& o) {
  check_same(o);
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

CliffordForm& CliffordForm::operator-=(const CliffordForm& o) {
  check_same(o);
  for (const auto& [b, c] : o.terms_) add_term(b, -c);
  return *this;
}

CliffordForm CliffordForm::operator-() const {
  CliffordForm r(m_);
  for (const auto& [b, c] : terms_) r.add_term(b, -c);
  return r;
}

CliffordForm operator+(CliffordForm a, const CliffordForm& b) { return a += b; }
CliffordForm operator-(CliffordForm a, const CliffordForm& b) { return a -= b; }

CliffordForm form_mul(const CliffordForm& a, const CliffordForm& b) {
  a.check_same(b);
  CliffordForm r(a.dimension());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      if ((ba & bb) != 0) continue;
      MvPoly c = ca * cb;
      if (reorder_sign(ba, bb) < 0) c = -c;
      r.add_term(ba | bb, std::move(c));
    }
  }
  return r;
}

CliffordForm divided_power(const CliffordForm& alpha, unsigned n) {
  const int m = alpha.dimension();
  int vars = alpha.is_zero() ? 1 : num_vars_of(alpha.terms().begin()->second);
  CliffordForm r = CliffordForm::function(mv_constant(m, vars, 0, Rational(1)));
  for (unsigned i = 1; i <= n; ++i) r = scale(form_mul(r, alpha), Rational(1, i));
  return r;
}

CliffordForm left_multiply(const MvPoly& a, const CliffordForm& f) {
  CliffordForm r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, a * c);
  return r;
}

CliffordForm right_multiply(const CliffordForm& f, const MvPoly& a) {
  CliffordForm r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, c * a);
  return r;
}

CliffordForm coefficient_dot(const MvPoly& v, const CliffordForm& f) {
  CliffordForm r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, dot(v, c));
  return r;
}

CliffordForm coefficient_wedge(const MvPoly& v, const CliffordForm& f) {
  CliffordForm r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, wedge(v, c));
  return r;
}

CliffordForm scale(const CliffordForm& f, const Rational& c) {
  CliffordForm r(f.dimension());
  for (const auto& [b, coeff] : f.terms()) r.add_term(b, coeff.scaled(c));
  return r;
}

CliffordForm exterior_derivative(const CliffordForm& alpha) {
  const int m = alpha.dimension();
  CliffordForm r(m);
  for (const auto& [b, c] : alpha.terms()) {
    for (int j = 0; j < m; ++j) {
      const Blade dj = Blade{1} << j;
      if ((b & dj) != 0) continue;
      MvPoly dc = partial(c, 0, j);
      if (dc.is_zero()) continue;
      if (reorder_sign(dj, b) < 0) dc = -dc;
      r.add_term(b | dj, std::move(dc));
    }
  }
  return r;
}

int ell_sign(Blade a, int m) {
  if ((a & ~full_blade(m)) != 0) throw std::out_of_range("index set exceeds dimension");
  int ell = 0;
  int i = 1;
  for (int j : blade_indices(a)) ell += j - i++;
  return ell;
}

int ell_sign(std::span<const int> indices, int m) {
  return ell_sign(blade_from_indices(indices), m);
}

CliffordForm psi(int m, int k, int num_vars) {
  if (k < 0 || k > m) throw std::out_of_range("psi: k out of range");
  CliffordForm f(m);
  const Blade all = full_blade(m);
  for (Blade a = 0; a <= all; ++a) {
    if (grade_of(a) != k) continue;
    Rational s(sign_power(ell_sign(a, m)));
    f.add_term(all & ~a, mv_constant(m, num_vars, a, s));
    if (a == all) break;
  }
  return f;
}

IdentityCheck compare_forms(const CliffordForm& lhs, const CliffordForm& rhs) {
  lhs.check_same(rhs);
  if (lhs == rhs) return {};
  CliffordForm diff = lhs - rhs;
  const Blade b = diff.terms().begin()->first;
  auto side = [b](const CliffordForm& f) {
    auto it = f.terms().find(b);
    return it == f.terms().end() ? std::string("0") : describe(it->second);
  };
  return {false, dx_name(b) + ": lhs = " + side(lhs) + ", rhs = " + side(rhs)};
}

namespace {

CliffordForm product_of_differentials(std::span<const VectorPoly> phases, int m) {
  CliffordForm r = CliffordForm::function(mv_constant(m, 1, 0, Rational(1)));
  for (const auto& phi : phases) r = form_mul(r, CliffordForm::differential(phi));
  return r;
}

MvPoly wedge_of_gradients(std::span<const VectorPoly> phases, int m) {
  if (phases.empty()) return mv_constant(m, 1, 0, Rational(1));
  std::vector<MvPoly> grads;
  for (const auto& phi : phases) grads.push_back(gradient(phi));
  return wedge_vectors<VectorPoly>(std::span<const MvPoly>(grads), VectorPoly::constant(m, 1, Rational(1)));
}

void check_phases(std::span<const VectorPoly> phases, int m) {
  if (static_cast<int>(phases.size()) > m) throw std::invalid_argument("more phases than dimensions");
  for (const auto& phi : phases)
    if (phi.dimension() != m || phi.num_vars() != 1)
      throw std::invalid_argument("phase must be a polynomial in one vector variable of dimension m");
}

}  // namespace

IdentityCheck check_oriented_surface_element(std::span<const VectorPoly> phases, int m) {
  check_phases(phases, m);
  const int k = static_cast<int>(phases.size());
  CliffordForm lhs = form_mul(product_of_differentials(phases, m), psi(m, k));
  CliffordForm rhs = left_multiply(wedge_of_gradients(phases, m), CliffordForm::volume(m));
  return compare_forms(lhs, rhs);
}

IdentityCheck check_vector_differential_power(int m, int k) {
  if (k < 0 || k > m) throw std::out_of_range("check_vector_differential_power: k out of range");
  CliffordForm lhs = divided_power(CliffordForm::vector_differential(m), static_cast<unsigned>(m - k));
  CliffordForm rhs = right_multiply(psi(m, k), mv_constant(m, 1, full_blade(m), Rational(1)));
  if (sign_power(k * (k + 1) / 2) < 0) rhs = -rhs;
  return compare_forms(lhs, rhs);
}

IdentityCheck check_gradient_dot_divided_power(const VectorPoly& phi, int k) {
  const int m = phi.dimension();
  if (k < 1 || k > m) throw std::out_of_range("check_gradient_dot_divided_power: k out of range");
  const CliffordForm dx = CliffordForm::vector_differential(m);
  CliffordForm lhs = coefficient_dot(gradient(phi), divided_power(dx, static_cast<unsigned>(k)));
  CliffordForm rhs = -form_mul(CliffordForm::differential(phi), divided_power(dx, static_cast<unsigned>(k - 1)));
  return compare_forms(lhs, rhs);
}

IdentityCheck check_gradient_wedge_volume(std::span<const VectorPoly> phases, int m) {
  check_phases(phases, m);
  const int k = static_cast<int>(phases.size());
  const CliffordForm dx = CliffordForm::vector_differential(m);
  CliffordForm lhs = left_multiply(wedge_of_gradients(phases, m), divided_power(dx, static_cast<unsigned>(m)));
  CliffordForm rhs = form_mul(product_of_differentials(phases, m), divided_power(dx, static_cast<unsigned>(m - k)));
  if (sign_power(k * (k + 1) / 2) < 0) rhs = -rhs;
  return compare_forms(lhs, rhs);
}

IdentityCheck check_wedge_surface_element(int m, int k, const VectorPoly& f) {
  if (k < 0 || k >= m) throw std::out_of_range("check_wedge_surface_element: need 0 <= k < m");
  if (f.dimension() != m || f.num_vars() != 1) throw std::invalid_argument("test function dimension mismatch");
  CliffordForm lhs = coefficient_wedge(gradient(f), psi(m, k));
  CliffordForm rhs = exterior_derivative(left_multiply(MvPoly::scalar(m, f), psi(m, k + 1)));
  if (k % 2 != 0) rhs = -rhs;
  return compare_forms(lhs, rhs);
}

}  // namespace distint
