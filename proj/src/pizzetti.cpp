#include "distint/pizzetti.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace distint {

namespace {

int half_ceil(int d) { return d <= 0 ? 0 : (d + 1) / 2; }

// Gamma(a) / Gamma(a + s) for a = n2/2, as an exact rational.
Rational inverse_rising(int n2, int s) {
  Rational r(1);
  for (int t = 0; t < s; ++t) r /= Rational(n2 + 2 * t, 2);
  return r;
}

// Delta_{x_j} - sum_{l<j} <x_l, d_{x_j}>^2 applied to q.
VectorPoly stiefel_operator(const VectorPoly& q, int j) {
  VectorPoly r = laplacian(q, j);
  for (int l = 0; l < j; ++l) r -= mixed_directional(mixed_directional(q, l, j), l, j);
  return r;
}

DiffOp stiefel2_symbol(int m, int smax) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, DiffOp> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({m, smax}); it != cache.end()) return it->second;
  }
  const VectorPoly nx = VectorPoly::normsq(m, 2, 0);
  const VectorPoly ny = VectorPoly::normsq(m, 2, 1);
  const VectorPoly xy = VectorPoly::dot(m, 2, 0, 1);
  const VectorPoly a = nx + ny;
  const VectorPoly b = nx * ny - xy * xy;
  VectorPoly symbol(m, 2);
  for (int s = 0; s <= smax; ++s) {
    Rational outer = inverse_rising(m, s) / pow(Rational(4), static_cast<unsigned>(s));
    for (int r = 0; 2 * r <= s; ++r) {
      Rational inner = inverse_rising(m - 1, r) /
                       (factorial(static_cast<unsigned>(s - 2 * r)) * factorial(static_cast<unsigned>(r)));
      symbol += pow(a, static_cast<unsigned>(s - 2 * r)) * pow(b, static_cast<unsigned>(r)) * Rational(outer * inner);
    }
  }
  DiffOp op{symbol};
  std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(m, smax), op);
  return op;
}

}  // namespace

ExactScalar phi_coefficient(int k, int m) {
  if (k < 0 || m < 1) throw std::domain_error("phi_coefficient: bad arguments");
  ExactScalar denom = ExactScalar(pow(Rational(4), static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k)));
  return ExactScalar(Rational(2), m) / (denom * gamma_half(2 * k + m));
}

PizzettiResult sphere_pizzetti_series(const VectorPoly& p, int m, int extra_terms) {
  if (m < 2) throw std::domain_error("sphere Pizzetti formula needs m >= 2");
  if (p.dimension() != m || p.num_vars() != 1)
    throw std::invalid_argument("sphere Pizzetti formula needs one vector variable of dimension m");
  PizzettiResult res;
  res.truncation_degree = p.degree();
  res.terms_used = half_ceil(res.truncation_degree) + 1 + extra_terms;
  ExactScalar total;
  VectorPoly current = p;
  for (int k = 0; k < res.terms_used; ++k) {
    if (k > 0) current = laplacian(current, 0);
    Rational at_zero = eval_at_zero(current);
    if (sgn(at_zero) != 0) total += phi_coefficient(k, m) * ExactScalar(at_zero);
  }
  res.value = total;
  return res;
}

ExactScalar stiefel_volume(int m, int k) {
  if (k < 1 || k > m) throw std::domain_error("stiefel_volume: need 1 <= k <= m");
  ExactScalar v(Rational(1));
  for (int j = 1; j <= k; ++j) v *= sphere_area(m - j + 1);
  return v;
}

PizzettiResult stiefel_pizzetti_series(const VectorPoly& p, int m, int k, int extra_terms) {
  if (m < 2) throw std::domain_error("Stiefel Pizzetti formula needs m >= 2");
  if (k < 1 || k >= m) throw std::domain_error("Stiefel Pizzetti formula needs 1 <= k <= m-1");
  if (p.dimension() != m || p.num_vars() != k)
    throw std::invalid_argument("polynomial must have k vector variables of dimension m");
  PizzettiResult res;
  VectorPoly q = p;
  // Factor j (0-based) integrates x_j over the sphere of dimension m - j,
  // innermost first.
  for (int j = k - 1; j >= 0; --j) {
    const int d = m - j;
    res.truncation_degree = q.degree();
    res.terms_used = half_ceil(res.truncation_degree) + 1 + extra_terms;
    VectorPoly acc(m, k);
    VectorPoly power = q;
    for (int s = 0; s < res.terms_used; ++s) {
      if (s > 0) power = stiefel_operator(power, j);
      if (power.is_zero()) break;
      Rational c = inverse_rising(d, s) /
                   (pow(Rational(4), static_cast<unsigned>(s)) * factorial(static_cast<unsigned>(s)));
      acc += set_variable_zero(power, j) * c;
    }
    q = std::move(acc);
  }
  res.value = stiefel_volume(m, k) * ExactScalar(eval_at_zero(q));
  return res;
}

PizzettiResult stiefel2_explicit_series(const VectorPoly& p, int m, int extra_terms) {
  if (m < 3) throw std::domain_error("explicit St(m,2) formula needs m >= 3");
  if (p.dimension() != m || p.num_vars() != 2)
    throw std::invalid_argument("polynomial must have 2 vector variables of dimension m");
  PizzettiResult res;
  res.truncation_degree = p.degree();
  const int smax = half_ceil(res.truncation_degree) + extra_terms;
  res.terms_used = smax + 1;
  const DiffOp op = stiefel2_symbol(m, smax);
  res.value = stiefel_volume(m, 2) * ExactScalar(apply_at_zero(op, p));
  return res;
}

VectorPoly delm_apply(int j, int k, int m) {
  if (j < 0 || k < 0 || m < 2) throw std::domain_error("delm_apply: need j, k >= 0 and m >= 2");
  const VectorPoly nx = VectorPoly::normsq(m, 2, 0);
  const VectorPoly ny = VectorPoly::normsq(m, 2, 1);
  const VectorPoly xy = VectorPoly::dot(m, 2, 0, 1);
  const VectorPoly b = nx * ny - xy * xy;
  const ExactScalar gamma_k = gamma_half(2 * k + 1);
  const Rational prefactor = pow(Rational(4), static_cast<unsigned>(j)) * factorial(static_cast<unsigned>(k + j));
  VectorPoly out(m, 2);
  for (int r = 0; r <= std::min(j, k); ++r) {
    ExactScalar ratio = gamma_half(2 * (k + j - r) + 1) / gamma_k;  // rational
    Rational c = prefactor * binomial(static_cast<unsigned>(j), static_cast<unsigned>(r)) * ratio.rational() /
                 factorial(static_cast<unsigned>(k - r));
    if (r % 2 != 0) c = -c;
    out += pow(ny, static_cast<unsigned>(j - r)) * pow(b, static_cast<unsigned>(r)) *
           pow(nx, static_cast<unsigned>(k - r)) * c;
  }
  return out;
}

ExactScalar gauss_sum_lhs(int r, int l, int k, int m) {
  if (r < 0 || r > l || k < 0 || m < 2) throw std::domain_error("gauss_sum: need 0 <= r <= l, k >= 0, m >= 2");
  ExactScalar total;
  for (int j = r; j <= l; ++j) {
    ExactScalar term = gamma_half(2 * (k + j - r) + 1) /
                       (ExactScalar(factorial(static_cast<unsigned>(l - j)) * factorial(static_cast<unsigned>(j - r))) *
                        gamma_half(2 * (k + j) + m));
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

ExactScalar gauss_sum_rhs(int r, int l, int k, int m) {
  if (r < 0 || r > l || k < 0 || m < 2) throw std::domain_error("gauss_sum: need 0 <= r <= l, k >= 0, m >= 2");
  ExactScalar v = gamma_half(2 * k + 1) * gamma_half(2 * l + m - 1) /
                  (ExactScalar(factorial(static_cast<unsigned>(l - r))) * gamma_half(2 * r + m - 1) *
                   gamma_half(2 * (k + l) + m));
  return (r % 2 == 0) ? v : -v;
}

bool gauss_sum_check(int r, int l, int k, int m) { return gauss_sum_lhs(r, l, k, m) == gauss_sum_rhs(r, l, k, m); }

}  // namespace distint
