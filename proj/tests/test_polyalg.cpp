#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distint/exact_scalar.hpp"
#include "distint/polyalg.hpp"
#include "distint/verify.hpp"
#include "oracles.hpp"

using namespace distint;

namespace {

VectorPoly var(int m, int k, int j, int i) { return VectorPoly::variable(m, k, j, i); }
VectorPoly cst(int m, int k, Rational c) { return VectorPoly::constant(m, k, c); }

}  // namespace

TEST_CASE("ring operations") {
  const auto x = var(3, 2, 0, 0);
  CHECK((x + (-x)).is_zero());
  const auto xy = VectorPoly::dot(3, 2, 0, 1);
  CHECK(xy * xy == pow(xy, 2));
  CHECK((xy * xy).terms().size() == 6);
  const auto b = VectorPoly::normsq(3, 2, 0) * VectorPoly::normsq(3, 2, 1) - xy * xy;
  CHECK(b.degree() == 4);
  CHECK(b.degree_in(0) == 2);
  CHECK(eval_at_zero(b) == 0);
  CHECK_THROWS_AS(VectorPoly(3, 1) + VectorPoly(3, 2), std::invalid_argument);
  CHECK(VectorPoly(2, 1).degree() == -1);
}

TEST_CASE("differential operators") {
  const int m = 4;
  CHECK(laplacian(VectorPoly::normsq(m, 1, 0), 0) == cst(m, 1, 2 * m));
  const auto xy = VectorPoly::dot(m, 2, 0, 1);
  const DiffOp mixed = DiffOp::mixed(m, 2, 0, 1);
  CHECK(apply_diffop(mixed, xy) == cst(m, 2, m));
  const DiffOp mixed2{mixed.symbol * mixed.symbol};
  CHECK(apply_diffop(mixed2, xy * xy) == cst(m, 2, 2 * m * (m + 1)));
  CHECK(apply_at_zero(mixed2, xy * xy) == 2 * m * (m + 1));
  CHECK(apply_diffop(DiffOp::laplacian(m, 2, 0), var(m, 2, 0, 1) * var(m, 2, 0, 1)) == cst(m, 2, 2));
  CHECK(mixed_directional(VectorPoly::normsq(m, 2, 0), 1, 0) == xy * Rational(2));
}

TEST_CASE("evaluation at zero") {
  CHECK(eval_at_zero(cst(2, 1, 3) + var(2, 1, 0, 0)) == 3);
  CHECK(eval_at_zero(pow(VectorPoly::dot(2, 2, 0, 1), 2)) == 0);
  CHECK(eval_at_zero(laplacian(pow(var(2, 1, 0, 0), 2), 0)) == 2);
  CHECK(set_variable_zero(var(2, 2, 0, 0) + var(2, 2, 1, 1), 1) == var(2, 2, 0, 0));
}

TEST_CASE("Fischer commutation") {
  const auto x = var(1, 1, 0, 0);
  CHECK(fischer_commute(pow(x, 2), pow(x, 3)).is_zero());
  CHECK(fischer_commute(pow(x, 2), x) == x * Rational(-2));
  SuiteRng rng(3);
  const auto r = random_poly(2, 1, 3, 4, rng);
  CHECK(fischer_commute(r, cst(2, 1, 1)) == r);
}

TEST_CASE("property: ring axioms and commuting partials") {
  SuiteRng rng(17);
  for (int t = 0; t < 30; ++t) {
    const int m = 1 + t % 3;
    const int k = 1 + t % 2;
    auto a = random_poly(m, k, 3, 4, rng), b = random_poly(m, k, 3, 4, rng), c = random_poly(m, k, 2, 3, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    const int v1 = t % k, v2 = (t + 1) % k, i1 = t % m, i2 = (t / 2) % m;
    CHECK(partial(partial(a, v1, i1), v2, i2) == partial(partial(a, v2, i2), v1, i1));
  }
}

TEST_CASE("property: Fischer pairing law") {
  SuiteRng rng(23);
  for (int t = 0; t < 40; ++t) {
    const int m = 1 + t % 3;
    const auto r = random_poly(m, 1, 5, 5, rng);
    const auto q = random_poly(m, 1, 2, 3, rng);
    const auto p = random_poly(m, 1, 3, 4, rng);
    CHECK(fischer_pairing(r, q * p) == fischer_pairing(fischer_commute(r, q), p));
  }
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials(2, 1, 2).size() == 6);
  CHECK(monomials(3, 2, 3).size() == 84);
  for (const auto& p : monomials(2, 2, 2)) CHECK(p.terms().size() == 1);
}

TEST_CASE("polynomial rendering") {
  const auto p = var(2, 2, 0, 0) * var(2, 2, 0, 0) * Rational(3, 2) - var(2, 2, 0, 1) + cst(2, 2, 5);
  CHECK(to_string(p) == "3/2*x1_1^2 - x1_2 + 5");
  CHECK(to_string(VectorPoly(2, 1)) == "0");
}

TEST_CASE("numeric evaluation") {
  const auto p = VectorPoly::normsq(2, 2, 0) + VectorPoly::dot(2, 2, 0, 1);
  const std::vector<double> x{1.0, 2.0, 3.0, -1.0};
  CHECK(p.evaluate(x) == doctest::Approx(5.0 + 1.0));
}

TEST_CASE("ExactScalar arithmetic and rendering") {
  CHECK(to_string(ExactScalar(Rational(3, 4))) == "3/4");
  CHECK(to_string(ExactScalar(Rational(4), 2)) == "4 * pi");
  CHECK(to_string(ExactScalar(Rational(8), 4)) == "8 * pi^2");
  CHECK(to_string(ExactScalar(Rational(2), 3)) == "2 * pi^(3/2)");
  CHECK(to_string(ExactScalar(Rational(0), 5)) == "0");
  CHECK(ExactScalar(Rational(0), 5) == ExactScalar());
  CHECK_THROWS_AS(ExactScalar(1, 2) + ExactScalar(1, 1), std::domain_error);
  CHECK_THROWS_AS(ExactScalar(1, 2) / ExactScalar(), std::domain_error);
  CHECK(ExactScalar(2, 1) * ExactScalar(3, 1) == ExactScalar(6, 2));
  CHECK(ExactScalar(Rational(1), 2).to_double() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("Gamma at half-integers round-trips") {
  for (int n = 0; n <= 20; ++n) {
    // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    const Rational q = factorial(2 * n) / (pow(Rational(4), n) * factorial(n));
    CHECK(gamma_half(2 * n + 1) == ExactScalar(q, 1));
    const auto o = oracle::gamma_half(2 * n + 1);
    CHECK(o.q == q);
  }
  CHECK(gamma_half(8) == ExactScalar(6));
  CHECK_THROWS(gamma_half(0));
  CHECK(sphere_area(2) == ExactScalar(2, 2));
  CHECK(sphere_area(3) == ExactScalar(4, 2));
}

TEST_CASE("independent sphere oracle") {
  auto check = [](std::vector<int> a, Rational q, int s) {
    const auto v = oracle::sphere_monomial(a);
    CHECK(v.q == q);
    if (q != 0) CHECK(v.sqrt_pi_power == s);
  };
  check({0, 0, 0}, 4, 2);
  check({2, 0, 0}, Rational(4, 3), 2);
  check({4, 0, 0}, Rational(4, 5), 2);
  check({2, 2, 0}, Rational(4, 15), 2);
  check({2, 0}, 1, 2);
  check({1, 0, 0}, 0, 0);
  check({0, 0, 0, 0}, 2, 4);
  const auto a5 = oracle::sphere_area(5);
  CHECK(a5.q == Rational(8, 3));
  CHECK(a5.sqrt_pi_power == 4);
}
