#include "distint/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace distint {

namespace {

constexpr int kMaxExponent = 255;

// prod_i alpha_i! / (alpha_i - beta_i)!, i.e. d^beta x^alpha = ff * x^(alpha-beta).
Rational falling_factorial(const VectorPoly::Exponents& alpha, const VectorPoly::Exponents& beta) {
  Rational r(1);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int t = 0; t < beta[i]; ++t) r *= alpha[i] - t;
  return r;
}

bool dominates(const VectorPoly::Exponents& alpha, const VectorPoly::Exponents& beta) {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] < beta[i]) return false;
  return true;
}

}  // namespace

VectorPoly::VectorPoly(int m, int num_vars) : m_(m), k_(num_vars) {
  if (m < 1 || num_vars < 1) throw std::invalid_argument("polynomial needs m >= 1 and K >= 1");
}

VectorPoly VectorPoly::constant(int m, int num_vars, const Rational& c) {
  VectorPoly p(m, num_vars);
  p.add_term(Exponents(static_cast<std::size_t>(m * num_vars), 0), c);
  return p;
}

VectorPoly VectorPoly::variable(int m, int num_vars, int var, int comp) {
  if (var < 0 || var >= num_vars || comp < 0 || comp >= m)
    throw std::out_of_range("polynomial variable index out of range");
  VectorPoly p(m, num_vars);
  Exponents e(static_cast<std::size_t>(m * num_vars), 0);
  e[var * m + comp] = 1;
  p.add_term(e, Rational(1));
  return p;
}

VectorPoly VectorPoly::dot(int m, int num_vars, int a, int b) {
  VectorPoly p(m, num_vars);
  for (int i = 0; i < m; ++i) p += variable(m, num_vars, a, i) * variable(m, num_vars, b, i);
  return p;
}

VectorPoly VectorPoly::normsq(int m, int num_vars, int j) { return dot(m, num_vars, j, j); }

void VectorPoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != num_scalars())
    throw std::invalid_argument("exponent vector has wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational VectorPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int VectorPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int VectorPoly::degree_in(int var) const {
  if (var < 0 || var >= k_) throw std::out_of_range("vector variable out of range");
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i = 0; i < m_; ++i) s += e[var * m_ + i];
    d = std::max(d, s);
  }
  return d;
}

void VectorPoly::check_compatible(const VectorPoly& o) const {
  if (m_ != o.m_ || k_ != o.k_) throw std::invalid_argument("polynomial dimension mismatch");
}

VectorPoly& VectorPoly::operator+=(const VectorPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

VectorPoly& VectorPoly::operator-=(const VectorPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

VectorPoly& VectorPoly::operator*=(const VectorPoly& o) {
  check_compatible(o);
  VectorPoly r(m_, k_);
  Exponents e(static_cast<std::size_t>(num_scalars()));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        int s = ea[i] + eb[i];
        if (s > kMaxExponent) throw std::overflow_error("polynomial exponent overflow");
        e[i] = static_cast<std::uint8_t>(s);
      }
      r.add_term(e, ca * cb);
    }
  }
  return *this = std::move(r);
}

VectorPoly& VectorPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

VectorPoly VectorPoly::operator-() const {
  VectorPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

double VectorPoly::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_scalars())
    throw std::invalid_argument("evaluation point has wrong length");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) t *= x[i];
    acc += t;
  }
  return acc;
}

VectorPoly operator+(VectorPoly a, const VectorPoly& b) { return a += b; }
VectorPoly operator-(VectorPoly a, const VectorPoly& b) { return a -= b; }
VectorPoly operator*(const VectorPoly& a, const VectorPoly& b) {
  VectorPoly r = a;
  r *= b;
  return r;
}
VectorPoly operator*(VectorPoly a, const Rational& c) { return a *= c; }
VectorPoly operator*(const Rational& c, VectorPoly a) { return a *= c; }

VectorPoly pow(const VectorPoly& p, unsigned n) {
  VectorPoly r = VectorPoly::constant(p.dimension(), p.num_vars(), Rational(1));
  VectorPoly base = p;
  while (n != 0) {
    if (n & 1U) r *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return r;
}

VectorPoly partial(const VectorPoly& p, int var, int comp) {
  const int m = p.dimension();
  if (var < 0 || var >= p.num_vars() || comp < 0 || comp >= m)
    throw std::out_of_range("derivative index out of range");
  const std::size_t idx = static_cast<std::size_t>(var * m + comp);
  VectorPoly r(m, p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[idx] == 0) continue;
    VectorPoly::Exponents d = e;
    --d[idx];
    r.add_term(d, c * e[idx]);
  }
  return r;
}

VectorPoly laplacian(const VectorPoly& p, int var) {
  VectorPoly r(p.dimension(), p.num_vars());
  for (int i = 0; i < p.dimension(); ++i) r += partial(partial(p, var, i), var, i);
  return r;
}

VectorPoly mixed_directional(const VectorPoly& p, int coeff_var, int deriv_var) {
  const int m = p.dimension();
  VectorPoly r(m, p.num_vars());
  for (int i = 0; i < m; ++i)
    r += VectorPoly::variable(m, p.num_vars(), coeff_var, i) * partial(p, deriv_var, i);
  return r;
}

VectorPoly set_variable_zero(const VectorPoly& p, int var) {
  const int m = p.dimension();
  if (var < 0 || var >= p.num_vars()) throw std::out_of_range("vector variable out of range");
  VectorPoly r(m, p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    bool vanishes = false;
    for (int i = 0; i < m && !vanishes; ++i) vanishes = e[var * m + i] != 0;
    if (!vanishes) r.add_term(e, c);
  }
  return r;
}

Rational eval_at_zero(const VectorPoly& p) {
  return p.coefficient(VectorPoly::Exponents(static_cast<std::size_t>(p.num_scalars()), 0));
}

VectorPoly embed(const VectorPoly& p, int num_vars) {
  if (num_vars < p.num_vars()) throw std::invalid_argument("cannot embed into fewer variables");
  VectorPoly r(p.dimension(), num_vars);
  for (const auto& [e, c] : p.terms()) {
    VectorPoly::Exponents w = e;
    w.resize(static_cast<std::size_t>(p.dimension() * num_vars), 0);
    r.add_term(w, c);
  }
  return r;
}

std::vector<VectorPoly> monomials(int m, int num_vars, int max_degree) {
  const int n = m * num_vars;
  std::vector<VectorPoly> out;
  VectorPoly::Exponents e(static_cast<std::size_t>(n), 0);
  // Enumerates exponent vectors with sum <= max_degree in lexicographic order.
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      VectorPoly p(m, num_vars);
      p.add_term(e, Rational(1));
      out.push_back(std::move(p));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a);
      self(self, i + 1, left - a);
    }
    e[static_cast<std::size_t>(i)] = 0;
  };
  if (max_degree >= 0) rec(rec, 0, max_degree);
  return out;
}

VectorPoly apply_diffop(const DiffOp& d, const VectorPoly& p) {
  d.symbol.check_compatible(p);
  VectorPoly r(p.dimension(), p.num_vars());
  VectorPoly::Exponents diff(static_cast<std::size_t>(p.num_scalars()));
  for (const auto& [beta, cd] : d.symbol.terms()) {
    for (const auto& [alpha, cp] : p.terms()) {
      if (!dominates(alpha, beta)) continue;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = alpha[i] - beta[i];
      r.add_term(diff, cd * cp * falling_factorial(alpha, beta));
    }
  }
  return r;
}

Rational apply_at_zero(const DiffOp& d, const VectorPoly& p) {
  d.symbol.check_compatible(p);
  // Only alpha == beta survives evaluation at zero; the factor is beta!.
  Rational acc(0);
  const auto& small = p.terms().size() < d.symbol.terms().size() ? p : d.symbol;
  const auto& large = &small == &p ? d.symbol : p;
  for (const auto& [e, c] : small.terms()) {
    auto it = large.terms().find(e);
    if (it == large.terms().end()) continue;
    acc += c * it->second * falling_factorial(e, e);
  }
  return acc;
}

VectorPoly fischer_commute(const VectorPoly& r, const VectorPoly& q) {
  r.check_compatible(q);
  VectorPoly flipped(q.dimension(), q.num_vars());
  for (const auto& [e, c] : q.terms()) {
    int deg = 0;
    for (auto v : e) deg += v;
    flipped.add_term(e, deg % 2 == 0 ? c : Rational(-c));
  }
  return apply_diffop(DiffOp{flipped}, r);
}

Rational fischer_pairing(const VectorPoly& r, const VectorPoly& g) {
  r.check_compatible(g);
  VectorPoly signed_symbol(r.dimension(), r.num_vars());
  for (const auto& [e, c] : r.terms()) {
    int deg = 0;
    for (auto v : e) deg += v;
    signed_symbol.add_term(e, deg % 2 == 0 ? c : Rational(-c));
  }
  return apply_at_zero(DiffOp{signed_symbol}, g);
}

std::string to_string(const VectorPoly& p) {
  if (p.is_zero()) return "0";
  const int m = p.dimension();
  // Higher total degree first, then the map order; deterministic.
  std::vector<std::pair<const VectorPoly::Exponents*, const Rational*>> order;
  for (const auto& [e, c] : p.terms()) order.emplace_back(&e, &c);
  auto total = [](const VectorPoly::Exponents& e) {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const auto& a, const auto& b) { return total(*a.first) > total(*b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [ep, cp] : order) {
    const auto& e = *ep;
    Rational c = *cp;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    bool constant = total(e) == 0;
    bool wrote = false;
    if (constant || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (static_cast<int>(i) / m + 1) << "_" << (static_cast<int>(i) % m + 1);
      if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
      wrote = true;
    }
  }
  return os.str();
}

MvPoly mv_constant(int m, int num_vars, Blade b, const Rational& c) {
  return MvPoly::blade(m, b, VectorPoly::constant(m, num_vars, c));
}

MvPoly lift(const Multivector<Rational>& a, int num_vars) {
  MvPoly r(a.dimension());
  for (const auto& [b, c] : a.terms()) r.add_term(b, VectorPoly::constant(a.dimension(), num_vars, c));
  return r;
}

MvPoly gradient(const VectorPoly& phi) {
  if (phi.num_vars() != 1) throw std::invalid_argument("gradient needs a single vector variable");
  const int m = phi.dimension();
  MvPoly r(m);
  for (int j = 0; j < m; ++j) r.add_term(Blade{1} << j, partial(phi, 0, j));
  return r;
}

MvPoly partial(const MvPoly& f, int var, int comp) {
  MvPoly r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, partial(c, var, comp));
  return r;
}

Multivector<double> evaluate(const MvPoly& f, std::span<const double> x) {
  Multivector<double> r(f.dimension());
  for (const auto& [b, c] : f.terms()) r.add_term(b, c.evaluate(x));
  return r;
}

}  // namespace distint
