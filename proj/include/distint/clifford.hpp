// Real Clifford algebra R_m with negative-definite signature (e_j^2 = -1).
//
// Multivector<S> stores a sparse map from basis blades e_A to coefficients of
// type S. A blade is encoded as a bit mask: bit (j-1) set <=> j in A, so keys
// are index subsets in increasing order by construction. The scalar type only
// needs ring operations; the library instantiates it with Rational (exact
// identities), double (quadrature results) and VectorPoly (Clifford-valued
// polynomial fields).
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "distint/rational.hpp"

namespace distint {

using Blade = std::uint32_t;

inline constexpr int kMaxDimension = 30;

inline int grade_of(Blade b) { return std::popcount(b); }

/// Sign from reordering e_A e_B into increasing index order (no squares).
inline int reorder_sign(Blade a, Blade b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// e_A e_B = blade_product_sign(A, B) * e_{A xor B}.
inline int blade_product_sign(Blade a, Blade b) {
  int s = reorder_sign(a, b);
  return (std::popcount(a & b) & 1) ? -s : s;
}

inline Blade full_blade(int m) {
  return m >= 32 ? ~Blade{0} : ((Blade{1} << m) - 1);
}

/// Blade for the sorted 1-based index set `indices`.
inline Blade blade_from_indices(std::span<const int> indices) {
  Blade b = 0;
  for (int j : indices) {
    if (j < 1 || j > kMaxDimension) throw std::out_of_range("basis index out of range");
    b |= Blade{1} << (j - 1);
  }
  return b;
}

inline std::vector<int> blade_indices(Blade b) {
  std::vector<int> out;
  for (int j = 0; b != 0; ++j, b >>= 1)
    if (b & 1) out.push_back(j + 1);
  return out;
}

template <class S>
struct ScalarTraits {
  static bool is_zero(const S& s) { return s == S(0); }
};

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& s) { return sgn(s) == 0; }
};

template <class S>
class Multivector {
 public:
  using Scalar = S;
  using Terms = std::map<Blade, S>;

  Multivector() = default;
  explicit Multivector(int m) : m_(m) {
    if (m < 0 || m > kMaxDimension) throw std::invalid_argument("Clifford dimension out of range");
  }

  static Multivector scalar(int m, S value) { return blade(m, 0, std::move(value)); }

  static Multivector blade(int m, Blade b, S coefficient) {
    Multivector r(m);
    r.check_blade(b);
    r.add_term(b, std::move(coefficient));
    return r;
  }

  /// Product e_{j1} e_{j2} ... of 1-based generators in the given order,
  /// scaled by `unit` (1 for numeric scalars).
  static Multivector generators(int m, std::initializer_list<int> order, S unit) {
    Multivector r = scalar(m, unit);
    for (int j : order) {
      if (j < 1 || j > m) throw std::out_of_range("generator index out of range");
      r = r * Multivector::blade(m, Blade{1} << (j - 1), unit);
    }
    return r;
  }

  int dimension() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const S* find(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? nullptr : &it->second;
  }

  /// Coefficient of e_b, or `zero` when absent.
  S coefficient(Blade b, S zero) const {
    const S* p = find(b);
    return p ? *p : zero;
  }

  void add_term(Blade b, S coefficient) {
    if (ScalarTraits<S>::is_zero(coefficient)) return;
    auto [it, inserted] = terms_.try_emplace(b, std::move(coefficient));
    if (!inserted) {
      it->second += coefficient;
      if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  void subtract_term(Blade b, const S& coefficient) { add_term(b, -coefficient); }

  Multivector& operator+=(const Multivector& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }
  Multivector operator-() const {
    Multivector r(m_);
    for (const auto& [b, c] : terms_) r.terms_.emplace(b, -c);
    return r;
  }

  /// Multiplies every coefficient by `s` on the right.
  template <class T>
  Multivector scaled(const T& s) const {
    Multivector r(m_);
    for (const auto& [b, c] : terms_) r.add_term(b, S(c * s));
    return r;
  }

  bool operator==(const Multivector& o) const { return m_ == o.m_ && terms_ == o.terms_; }

  void check_same(const Multivector& o) const {
    if (m_ != o.m_) throw std::invalid_argument("multivector dimension mismatch");
  }

 private:
  void check_blade(Blade b) const {
    if ((b & ~full_blade(m_)) != 0) throw std::out_of_range("blade index exceeds dimension");
  }

  int m_ = 0;
  Terms terms_;
};

template <class S>
Multivector<S> operator+(Multivector<S> a, const Multivector<S>& b) {
  a += b;
  return a;
}

template <class S>
Multivector<S> operator-(Multivector<S> a, const Multivector<S>& b) {
  a -= b;
  return a;
}

namespace detail {

// Accumulates sum over term pairs whose product blade passes `keep`.
template <class S, class Keep>
Multivector<S> filtered_product(const Multivector<S>& a, const Multivector<S>& b, Keep keep) {
  a.check_same(b);
  Multivector<S> r(a.dimension());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      if (!keep(ba, bb)) continue;
      S c = ca * cb;
      if (blade_product_sign(ba, bb) < 0) c = -c;
      r.add_term(ba ^ bb, std::move(c));
    }
  }
  return r;
}

}  // namespace detail

/// Clifford (geometric) product.
template <class S>
Multivector<S> operator*(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::filtered_product(a, b, [](Blade, Blade) { return true; });
}

template <class S>
Multivector<S> geometric_product(const Multivector<S>& a, const Multivector<S>& b) {
  return a * b;
}

/// [a]_k, the k-vector part.
template <class S>
Multivector<S> grade_project(const Multivector<S>& a, int k) {
  if (k < 0 || k > a.dimension()) throw std::out_of_range("grade out of range");
  Multivector<S> r(a.dimension());
  for (const auto& [b, c] : a.terms())
    if (grade_of(b) == k) r.add_term(b, c);
  return r;
}

/// Dot product, extended linearly over grade pairs: [a_k b_l]_{|l-k|}.
template <class S>
Multivector<S> dot(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::filtered_product(a, b, [](Blade x, Blade y) {
    return grade_of(x ^ y) == std::abs(grade_of(y) - grade_of(x));
  });
}

/// Wedge product, extended linearly over grade pairs: [a_k b_l]_{k+l}.
template <class S>
Multivector<S> wedge(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::filtered_product(a, b, [](Blade x, Blade y) { return (x & y) == 0; });
}

template <class S>
S norm_squared(const Multivector<S>& a, S zero) {
  S acc = std::move(zero);
  for (const auto& [b, c] : a.terms()) acc += c * c;
  return acc;
}

inline Rational norm_squared(const Multivector<Rational>& a) { return norm_squared(a, Rational(0)); }
inline double norm_squared(const Multivector<double>& a) { return norm_squared(a, 0.0); }
inline double norm(const Multivector<double>& a) { return std::sqrt(norm_squared(a)); }

/// Grade-1 element with explicit components; converts to a Multivector.
template <class S>
struct Vector1 {
  std::vector<S> components;

  int dimension() const { return static_cast<int>(components.size()); }

  Multivector<S> to_multivector() const {
    Multivector<S> r(dimension());
    for (int j = 0; j < dimension(); ++j) r.add_term(Blade{1} << j, components[j]);
    return r;
  }

  static Vector1 from_multivector(const Multivector<S>& a, S zero) {
    Vector1 v;
    v.components.assign(a.dimension(), zero);
    for (const auto& [b, c] : a.terms()) {
      if (grade_of(b) != 1) throw std::invalid_argument("multivector is not a 1-vector");
      v.components[std::countr_zero(b)] = c;
    }
    return v;
  }
};

/// Euclidean inner product <v, w> = -(v . w).
template <class S>
S inner(const Vector1<S>& v, const Vector1<S>& w) {
  if (v.dimension() != w.dimension()) throw std::invalid_argument("vector dimension mismatch");
  if (v.components.empty()) throw std::invalid_argument("empty vector");
  S acc = v.components[0] * w.components[0];
  for (int j = 1; j < v.dimension(); ++j) acc += v.components[j] * w.components[j];
  return acc;
}

/// v1 ^ ... ^ vk computed as [v1 v2 ... vk]_k.
template <class S>
Multivector<S> wedge_vectors(std::span<const Multivector<S>> vs, S unit) {
  if (vs.empty()) throw std::invalid_argument("wedge of an empty list");
  const int m = vs.front().dimension();
  const int k = static_cast<int>(vs.size());
  if (k > m) return Multivector<S>(m);
  Multivector<S> acc = Multivector<S>::scalar(m, std::move(unit));
  for (const auto& v : vs) {
    if (v.dimension() != m) throw std::invalid_argument("vector dimension mismatch");
    // Wedging one vector at a time keeps only the top grade, which equals the
    // top-grade part of the full Clifford product.
    acc = wedge(acc, v);
  }
  return acc;
}

template <class S>
Multivector<S> wedge_vectors(std::span<const Vector1<S>> vs) {
  if (vs.empty()) throw std::invalid_argument("wedge of an empty list");
  std::vector<Multivector<S>> mv;
  mv.reserve(vs.size());
  for (const auto& v : vs) mv.push_back(v.to_multivector());
  return wedge_vectors<S>(std::span<const Multivector<S>>(mv), S(1));
}

/// Determinant of the Gram matrix of `vs` by Gaussian elimination.
template <class S>
S gram_det(std::span<const Vector1<S>> vs) {
  if (vs.empty()) throw std::invalid_argument("gram_det of an empty list");
  const std::size_t k = vs.size();
  std::vector<std::vector<S>> g(k, std::vector<S>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g[i][j] = inner(vs[i], vs[j]);
  S det(1);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    if constexpr (std::is_floating_point_v<S>) {
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
    } else {
      while (pivot < k && ScalarTraits<S>::is_zero(g[pivot][col])) ++pivot;
      if (pivot == k) return S(0);
    }
    if (ScalarTraits<S>::is_zero(g[pivot][col])) return S(0);
    if (pivot != col) {
      std::swap(g[pivot], g[col]);
      det = -det;
    }
    det *= g[col][col];
    for (std::size_t r = col + 1; r < k; ++r) {
      S f = g[r][col] / g[col][col];
      for (std::size_t c = col; c < k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  return det;
}

template <class S>
std::string to_string(const Multivector<S>& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    if constexpr (std::is_same_v<S, Rational>) {
      os << c.get_str();
    } else {
      os << c;
    }
    for (int j : blade_indices(b)) os << "*e" << j;
  }
  return os.str();
}

}  // namespace distint
