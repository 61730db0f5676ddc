#include <doctest.h>

#include "distint/pizzetti.hpp"
#include "distint/verify.hpp"
#include "oracles.hpp"

using namespace distint;

namespace {

bool same(const ExactScalar& x, const oracle::PiValue& o) {
  if (sgn(o.q) == 0) return x.is_zero();
  return x.rational() == o.q && x.half_power() == o.sqrt_pi_power;
}

std::vector<int> exponents_of(const VectorPoly& mono) {
  const auto& e = mono.terms().begin()->first;
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("sphere examples") {
  CHECK(sphere_pizzetti(VectorPoly::constant(3, 1, 1), 3) == ExactScalar(4, 2));
  const auto x1 = VectorPoly::variable(3, 1, 0, 0);
  CHECK(sphere_pizzetti(x1 * x1, 3) == ExactScalar(Rational(4, 3), 2));
  CHECK(sphere_pizzetti(x1, 3).is_zero());
  CHECK(sphere_pizzetti(VectorPoly::constant(2, 1, 1), 2) == ExactScalar(2, 2));
  CHECK(phi_coefficient(0, 3) == sphere_area(3));
  CHECK_THROWS_AS(sphere_pizzetti(VectorPoly::constant(1, 1, 1), 1), std::domain_error);
  CHECK_THROWS_AS(sphere_pizzetti(VectorPoly::constant(3, 2, 1), 3), std::invalid_argument);
}

TEST_CASE("sphere formula matches the monomial oracle") {
  for (int m = 2; m <= 4; ++m)
    for (const auto& mono : monomials(m, 1, 6)) {
      INFO(to_string(mono) << " m=" << m);
      CHECK(same(sphere_pizzetti(mono, m), oracle::sphere_monomial(exponents_of(mono))));
    }
}

TEST_CASE("property: truncation is exact") {
  SuiteRng rng(41);
  for (int t = 0; t < 10; ++t) {
    const int m = 2 + t % 3;
    const auto p = random_poly(m, 1, 6, 5, rng);
    CHECK(sphere_pizzetti_series(p, m, 3).value == sphere_pizzetti(p, m));
    if (m >= 3) {
      const auto q = random_poly(m, 2, 4, 4, rng);
      CHECK(stiefel_pizzetti_series(q, m, 2, 2).value == stiefel_pizzetti_composed(q, m, 2));
      CHECK(stiefel2_explicit_series(q, m, 2).value == stiefel2_explicit(q, m));
    }
  }
}

TEST_CASE("Stiefel examples") {
  CHECK(stiefel_pizzetti_composed(VectorPoly::constant(3, 2, 1), 3, 2) == ExactScalar(8, 4));
  CHECK(stiefel_pizzetti_composed(VectorPoly::normsq(3, 2, 0), 3, 2) == ExactScalar(8, 4));
  CHECK(stiefel_pizzetti_composed(pow(VectorPoly::dot(3, 2, 0, 1), 2), 3, 2).is_zero());
  CHECK(stiefel2_explicit(VectorPoly::constant(3, 2, 1), 3) == ExactScalar(8, 4));
  CHECK(stiefel_pizzetti_composed(VectorPoly::constant(4, 1, 1), 4, 1) == sphere_area(4));
  CHECK_THROWS_AS(stiefel_pizzetti_composed(VectorPoly::constant(3, 3, 1), 3, 3), std::domain_error);
  CHECK_THROWS_AS(stiefel2_explicit(VectorPoly::constant(2, 2, 1), 2), std::domain_error);
}

TEST_CASE("k = 1 reduces to the sphere formula") {
  SuiteRng rng(43);
  for (int t = 0; t < 10; ++t) {
    const int m = 2 + t % 4;
    const auto p = random_poly(m, 1, 6, 4, rng);
    CHECK(stiefel_pizzetti_composed(p, m, 1) == sphere_pizzetti(p, m));
  }
}

TEST_CASE("fourth moments on St(m,2) match Weingarten values") {
  for (int m = 3; m <= 6; ++m) {
    const auto vol = stiefel_volume(m, 2);
    const auto x1 = VectorPoly::variable(m, 2, 0, 0), x2 = VectorPoly::variable(m, 2, 0, 1);
    const auto y1 = VectorPoly::variable(m, 2, 1, 0), y2 = VectorPoly::variable(m, 2, 1, 1);
    // E[x1^2 y1^2] = 1/(m(m+2)), E[x1 y1 x2 y2] = -1/((m-1) m (m+2))
    CHECK(stiefel_pizzetti_composed(x1 * x1 * y1 * y1, m, 2) == vol * ExactScalar(Rational(1, m * (m + 2))));
    CHECK(stiefel_pizzetti_composed(x1 * y1 * x2 * y2, m, 2) ==
          vol * ExactScalar(Rational(-1, (m - 1) * m * (m + 2))));
    CHECK(stiefel_pizzetti_composed(pow(x1, 4), m, 2) == vol * ExactScalar(Rational(3, m * (m + 2))));
  }
}

TEST_CASE("Stiefel volumes") {
  for (int m = 2; m <= 6; ++m)
    for (int k = 1; k <= std::min(3, m); ++k) {
      oracle::PiValue v{1, 0};
      for (int j = 1; j <= k; ++j) v = oracle::times(v, oracle::sphere_area(m - j + 1));
      CHECK(same(stiefel_volume(m, k), v));
    }
}

TEST_CASE("directional power closed form") {
  const int m = 3;
  const auto nx = VectorPoly::normsq(m, 2, 0), ny = VectorPoly::normsq(m, 2, 1);
  const auto xy = VectorPoly::dot(m, 2, 0, 1);
  const auto b = nx * ny - xy * xy;
  CHECK(delm_apply(1, 1, m) == ny * nx * Rational(12) - b * Rational(8));
  CHECK(delm_apply(0, 2, m) == nx * nx);
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k) CHECK(delm_apply(j, k, m) == delm_bruteforce(j, k, m));
}

TEST_CASE("terminating Gauss sum") {
  for (int m = 2; m <= 4; ++m)
    for (int l = 0; l <= 3; ++l)
      for (int r = 0; r <= l; ++r)
        for (int k = 0; k <= 3; ++k) CHECK(gauss_sum_check(r, l, k, m));
  CHECK_FALSE(gauss_sum_lhs(0, 2, 1, 3) == -gauss_sum_rhs(0, 2, 1, 3));
  CHECK_THROWS_AS(gauss_sum_lhs(3, 2, 0, 3), std::domain_error);
}
