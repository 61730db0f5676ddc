#include "distint/verify.hpp"

#include <functional>
#include <stdexcept>

#include "distint/exterior.hpp"
#include "distint/pizzetti.hpp"

namespace distint {

Rational random_rational(SuiteRng& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Multivector<Rational> random_multivector(int m, SuiteRng& rng) {
  std::bernoulli_distribution keep(0.5);
  Multivector<Rational> a(m);
  for (Blade b = 0; b <= full_blade(m); ++b)
    if (keep(rng)) a.add_term(b, random_rational(rng));
  return a;
}

Multivector<Rational> random_homogeneous(int m, int grade, SuiteRng& rng) {
  std::bernoulli_distribution keep(0.6);
  Multivector<Rational> a(m);
  for (Blade b = 0; b <= full_blade(m); ++b)
    if (grade_of(b) == grade && keep(rng)) a.add_term(b, random_rational(rng));
  return a;
}

Vector1<Rational> random_vector(int m, SuiteRng& rng) {
  Vector1<Rational> v;
  for (int i = 0; i < m; ++i) v.components.push_back(random_rational(rng));
  return v;
}

VectorPoly random_quadratic(int m, SuiteRng& rng) {
  VectorPoly p(m, 1);
  for (const auto& mono : monomials(m, 1, 2)) p += mono * random_rational(rng);
  return p;
}

VectorPoly random_poly(int m, int num_vars, int max_degree, int terms, SuiteRng& rng) {
  const auto monos = monomials(m, num_vars, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  VectorPoly p(m, num_vars);
  for (int t = 0; t < terms; ++t) p += monos[pick(rng)] * random_rational(rng);
  return p;
}

int SuiteReport::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 1 : 0;
  return n;
}

int SuiteReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

namespace {

// Runs `trial` `trials` times; the first failure message is kept.
CheckOutcome run_check(const std::string& name, int trials, const std::function<std::string(int)>& trial) {
  CheckOutcome out{name, true, trials, {}};
  for (int t = 0; t < trials; ++t) {
    std::string failure = trial(t);
    if (!failure.empty()) {
      out.passed = false;
      out.detail = "trial " + std::to_string(t) + ": " + failure;
      break;
    }
  }
  return out;
}

std::string differ(const Multivector<Rational>& a, const Multivector<Rational>& b) {
  return a == b ? std::string() : to_string(a) + " != " + to_string(b);
}

std::string tag(const std::string& base, int m, int k = -1) {
  std::string s = base + " m=" + std::to_string(m);
  if (k >= 0) s += " k=" + std::to_string(k);
  return s;
}

}  // namespace

SuiteReport run_clifford_suite(std::uint64_t seed) {
  SuiteReport r{"clifford", {}};
  SuiteRng rng(seed);
  const Rational one(1);
  for (int m = 1; m <= 6; ++m) {
    r.checks.push_back(run_check(tag("defining relations", m), 1, [&](int) -> std::string {
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
          auto ej = Multivector<Rational>::blade(m, Blade{1} << j, one);
          auto el = Multivector<Rational>::blade(m, Blade{1} << l, one);
          auto expect = Multivector<Rational>::scalar(m, Rational(j == l ? -2 : 0));
          if (auto d = differ(ej * el + el * ej, expect); !d.empty()) return d;
        }
      return {};
    }));
  }
  for (int m = 1; m <= 5; ++m) {
    r.checks.push_back(run_check(tag("associativity", m), 20, [&](int) {
      auto a = random_multivector(m, rng), b = random_multivector(m, rng), c = random_multivector(m, rng);
      return differ((a * b) * c, a * (b * c));
    }));
    r.checks.push_back(run_check(tag("bilinearity", m), 20, [&](int) {
      auto a = random_multivector(m, rng), b = random_multivector(m, rng), c = random_multivector(m, rng);
      Rational s = random_rational(rng);
      auto d = differ((a.scaled(s) + b) * c, (a * c).scaled(s) + b * c);
      return d.empty() ? differ(c * (a + b), c * a + c * b) : d;
    }));
    r.checks.push_back(run_check(tag("grade decomposition", m), 20, [&](int) {
      auto a = random_multivector(m, rng);
      Multivector<Rational> sum(m);
      for (int k = 0; k <= m; ++k) sum += grade_project(a, k);
      return differ(sum, a);
    }));
    const auto em = Multivector<Rational>::blade(m, full_blade(m), one);
    for (int l = 0; l < m; ++l) {
      r.checks.push_back(run_check(tag("dual dot-wedge", m, l), 10, [&](int) {
        auto v = random_vector(m, rng).to_multivector();
        auto b = random_homogeneous(m, l, rng);
        return differ(dot(v, b * em), wedge(v, b) * em);
      }));
    }
    for (int k = 1; k <= std::min(3, m); ++k)
      for (int l = k; l <= m; ++l) {
        r.checks.push_back(run_check(tag("iterated dot and wedge", m, k) + " l=" + std::to_string(l), 5, [&](int) {
          std::vector<Vector1<Rational>> vs;
          for (int i = 0; i < k; ++i) vs.push_back(random_vector(m, rng));
          auto b = random_homogeneous(m, l, rng);
          auto blade = wedge_vectors<Rational>(std::span<const Vector1<Rational>>(vs));
          Multivector<Rational> prod = Multivector<Rational>::scalar(m, one);
          for (const auto& v : vs) prod = prod * v.to_multivector();
          prod = prod * b;
          Multivector<Rational> idot = b, iwedge = b;
          for (int i = k - 1; i >= 0; --i) {
            idot = dot(vs[i].to_multivector(), idot);
            iwedge = wedge(vs[i].to_multivector(), iwedge);
          }
          for (auto d : {differ(dot(blade, b), grade_project(prod, l - k)), differ(dot(blade, b), idot),
                         differ(wedge(blade, b), iwedge)})
            if (!d.empty()) return d;
          if (l + k <= m) return differ(wedge(blade, b), grade_project(prod, l + k));
          return std::string();
        }));
      }
    for (int k = 1; k <= m; ++k) {
      r.checks.push_back(run_check(tag("gram determinant", m, k), 10, [&](int) -> std::string {
        std::vector<Vector1<Rational>> vs;
        for (int i = 0; i < k; ++i) vs.push_back(random_vector(m, rng));
        const Rational g = gram_det<Rational>(std::span<const Vector1<Rational>>(vs));
        const Rational w = norm_squared(wedge_vectors<Rational>(std::span<const Vector1<Rational>>(vs)));
        return g == w ? std::string() : to_string(g) + " != " + to_string(w);
      }));
      r.checks.push_back(run_check(tag("wedge permutation sign", m, k), 10, [&](int) {
        std::vector<Vector1<Rational>> vs;
        for (int i = 0; i < k; ++i) vs.push_back(random_vector(m, rng));
        auto w = wedge_vectors<Rational>(std::span<const Vector1<Rational>>(vs));
        if (k < 2) return std::string();
        std::uniform_int_distribution<int> pick(0, k - 2);
        const int i = pick(rng);
        std::swap(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(i + 1)]);
        return differ(wedge_vectors<Rational>(std::span<const Vector1<Rational>>(vs)), -w);
      }));
    }
  }
  return r;
}

SuiteReport run_exterior_suite(std::uint64_t seed, int tuples, int max_m) {
  SuiteReport r{"exterior", {}};
  SuiteRng rng(seed);
  auto phases_of = [&](int m, int k) {
    std::vector<VectorPoly> ps;
    for (int j = 0; j < k; ++j) ps.push_back(random_quadratic(m, rng));
    return ps;
  };
  auto detail = [](const IdentityCheck& c) { return c.holds ? std::string() : c.first_difference; };
  for (int m = 1; m <= max_m; ++m) {
    for (int k = 0; k <= m; ++k)
      r.checks.push_back(run_check(tag("vector differential power", m, k), 1,
                                   [&](int) { return detail(check_vector_differential_power(m, k)); }));
    for (int k = 0; k <= std::min(3, m); ++k) {
      r.checks.push_back(run_check(tag("oriented surface element", m, k), tuples, [&](int) {
        auto ps = phases_of(m, k);
        return detail(check_oriented_surface_element(ps, m));
      }));
      r.checks.push_back(run_check(tag("gradient wedge times volume", m, k), tuples, [&](int) {
        auto ps = phases_of(m, k);
        return detail(check_gradient_wedge_volume(ps, m));
      }));
    }
    for (int k = 1; k <= m; ++k)
      r.checks.push_back(run_check(tag("gradient dot divided power", m, k), tuples, [&](int) {
        return detail(check_gradient_dot_divided_power(random_quadratic(m, rng), k));
      }));
    for (int k = 0; k <= std::min(3, m - 1); ++k)
      r.checks.push_back(run_check(tag("wedge with surface element", m, k), tuples, [&](int) {
        return detail(check_wedge_surface_element(m, k, random_quadratic(m, rng)));
      }));
  }
  return r;
}

VectorPoly delm_bruteforce(int j, int k, int m) {
  VectorPoly q = pow(VectorPoly::normsq(m, 2, 0), static_cast<unsigned>(k + j));
  for (int i = 0; i < 2 * j; ++i) q = mixed_directional(q, 1, 0);
  return q;
}

SuiteReport run_appendix_suite() {
  SuiteReport r{"appendix", {}};
  for (int m = 2; m <= 4; ++m)
    for (int j = 0; j <= 4; ++j)
      r.checks.push_back(run_check("directional power closed form m=" + std::to_string(m) + " j=" + std::to_string(j),
                                   5, [&](int k) {
                                     return delm_apply(j, k, m) == delm_bruteforce(j, k, m)
                                                ? std::string()
                                                : "closed form differs at k=" + std::to_string(k);
                                   }));
  for (int m = 2; m <= 6; ++m)
    r.checks.push_back(run_check(tag("terminating Gauss sum", m), 7, [&](int k) -> std::string {
      for (int l = 0; l <= 6; ++l)
        for (int rr = 0; rr <= l; ++rr)
          if (!gauss_sum_check(rr, l, k, m))
            return "r=" + std::to_string(rr) + " l=" + std::to_string(l) + " k=" + std::to_string(k) + ": " +
                   to_string(gauss_sum_lhs(rr, l, k, m)) + " != " + to_string(gauss_sum_rhs(rr, l, k, m));
      return {};
    }));
  for (int m = 3; m <= 4; ++m) {
    const auto monos = monomials(m, 2, 4);
    r.checks.push_back(run_check(tag("composed equals explicit St(m,2)", m), static_cast<int>(monos.size()),
                                 [&](int i) {
                                   const auto& p = monos[static_cast<std::size_t>(i)];
                                   auto a = stiefel_pizzetti_composed(p, m, 2);
                                   auto b = stiefel2_explicit(p, m);
                                   return a == b ? std::string() : to_string(p) + ": " + to_string(a) + " != " + to_string(b);
                                 }));
  }
  for (int m = 3; m <= 5; ++m)
    r.checks.push_back(run_check(tag("St(m,2) constraints", m), 1, [&](int) -> std::string {
      const auto dot2 = pow(VectorPoly::dot(m, 2, 0, 1), 2);
      const auto nx = VectorPoly::normsq(m, 2, 0);
      if (!stiefel_pizzetti_composed(dot2, m, 2).is_zero()) return "<x,y>^2 does not integrate to 0";
      if (!(stiefel_pizzetti_composed(nx, m, 2) == stiefel_volume(m, 2))) return "||x||^2 does not give the volume";
      return {};
    }));
  return r;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "clifford") return run_clifford_suite(seed);
  if (name == "exterior") return run_exterior_suite(seed);
  if (name == "appendix") return run_appendix_suite();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<std::string> cauchy_case_names() { return {"circle", "circle-constant", "classical"}; }

CauchyCase make_cauchy_case(const std::string& name) {
  const int m = 3;
  const Box box = Box::cube(m, -1.5, 1.5);
  const VectorPoly sphere = VectorPoly::normsq(m, 1, 0) - VectorPoly::constant(m, 1, Rational(1));
  const MvPoly one = mv_constant(m, 1, 0, Rational(1));
  auto coord = [&](int i) { return VectorPoly::variable(m, 1, 0, i - 1); };
  if (name == "circle")
    return {name, one, MvPoly::scalar(m, coord(2)), coord(1), {m, {sphere, coord(3)}, box}};
  if (name == "circle-constant") return {name, one, one, coord(1), {m, {sphere, coord(3)}, box}};
  if (name == "classical") return {name, one, MvPoly::scalar(m, coord(1)), sphere, {m, {}, box}};
  throw std::invalid_argument("unknown Cauchy case '" + name + "'");
}

}  // namespace distint
