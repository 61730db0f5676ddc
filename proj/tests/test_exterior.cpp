#include <doctest.h>

#include "distint/exterior.hpp"
#include "distint/verify.hpp"

using namespace distint;

namespace {

CliffordForm dx(int m, int j) { return CliffordForm::dx(m, j); }

CliffordForm coeff_form(int m, Blade e_blade, Rational c, std::initializer_list<int> dxs) {
  CliffordForm f = CliffordForm::function(mv_constant(m, 1, e_blade, c));
  for (int j : dxs) f = form_mul(f, dx(m, j));
  return f;
}

VectorPoly coord(int m, int i) { return VectorPoly::variable(m, 1, 0, i - 1); }

}  // namespace

TEST_CASE("exterior product signs") {
  const int m = 3;
  CHECK(form_mul(dx(m, 1), dx(m, 2)) == coeff_form(m, 0, 1, {1, 2}));
  CHECK(form_mul(dx(m, 2), dx(m, 1)) == coeff_form(m, 0, -1, {1, 2}));
  CHECK(form_mul(dx(m, 1), dx(m, 1)).is_zero());
  const auto a = coeff_form(m, 0b001, 1, {2});
  const auto b = coeff_form(m, 0b010, 1, {1});
  CHECK(form_mul(a, b) == coeff_form(m, 0b011, -1, {1, 2}));
  CHECK(form_mul(a, b).degree() == 2);
}

TEST_CASE("exterior derivative") {
  const int m = 3;
  const auto x1dx2 = form_mul(CliffordForm::function(MvPoly::scalar(m, coord(m, 1))), dx(m, 2));
  CHECK(exterior_derivative(x1dx2) == form_mul(dx(m, 1), dx(m, 2)));
  const auto phi = VectorPoly::normsq(m, 1, 0);
  CliffordForm expect(m);
  for (int j = 1; j <= m; ++j)
    expect += form_mul(CliffordForm::function(MvPoly::scalar(m, coord(m, j) * Rational(2))), dx(m, j));
  CHECK(exterior_derivative(CliffordForm::function(MvPoly::scalar(m, phi))) == expect);
  CHECK(CliffordForm::differential(phi) == expect);
}

TEST_CASE("property: d squared vanishes") {
  SuiteRng rng(31);
  for (int t = 0; t < 20; ++t) {
    const int m = 2 + t % 3;
    CliffordForm f(m);
    for (int j = 1; j <= m; ++j) {
      const auto coeff = MvPoly::scalar(m, random_poly(m, 1, 3, 3, rng)) *
                         lift(random_multivector(m, rng), 1);
      f += form_mul(CliffordForm::function(coeff), dx(m, j));
    }
    CHECK(exterior_derivative(exterior_derivative(f)).is_zero());
  }
}

TEST_CASE("property: graded anticommutativity for scalar coefficients") {
  SuiteRng rng(37);
  for (int t = 0; t < 20; ++t) {
    const int m = 4;
    std::uniform_int_distribution<int> pick(1, m);
    const int p = 1 + t % 2, q = 1 + (t / 2) % 2;
    CliffordForm a = CliffordForm::function(MvPoly::scalar(m, random_poly(m, 1, 2, 2, rng)));
    CliffordForm b = CliffordForm::function(MvPoly::scalar(m, random_poly(m, 1, 2, 2, rng)));
    for (int i = 0; i < p; ++i) a = form_mul(a, dx(m, pick(rng)));
    for (int i = 0; i < q; ++i) b = form_mul(b, dx(m, pick(rng)));
    const CliffordForm ab = form_mul(a, b);
    const CliffordForm ba = form_mul(b, a);
    CHECK(((p * q) % 2 == 0 ? ab == ba : ab == -ba));
  }
}

TEST_CASE("oriented surface element") {
  const int m = 3;
  const auto expect = coeff_form(m, 0b001, 1, {2, 3}) - coeff_form(m, 0b010, 1, {1, 3}) +
                      coeff_form(m, 0b100, 1, {1, 2});
  CHECK(psi(m, 1) == expect);
  CHECK(psi(m, 0) == CliffordForm::volume(m));
  CHECK(psi(m, 3) == CliffordForm::function(mv_constant(m, 1, 0b111, 1)));
  CHECK_THROWS_AS(psi(m, 4), std::out_of_range);
}

TEST_CASE("index sign") {
  std::vector<int> a{1, 2, 3};
  CHECK(ell_sign(a, 5) == 0);
  std::vector<int> b{2};
  CHECK(ell_sign(b, 2) == 1);
  std::vector<int> c{1, 3};
  CHECK(ell_sign(c, 3) == 1);
  // dV = (-1)^l(A) dx_A dx_{M\A}
  const int m = 4;
  for (Blade s = 0; s <= full_blade(m); ++s) {
    CliffordForm lhs = CliffordForm::function(mv_constant(m, 1, 0, 1));
    for (int j : blade_indices(s)) lhs = form_mul(lhs, dx(m, j));
    for (int j : blade_indices(full_blade(m) & ~s)) lhs = form_mul(lhs, dx(m, j));
    CHECK((ell_sign(s, m) % 2 == 0 ? lhs == CliffordForm::volume(m) : -lhs == CliffordForm::volume(m)));
  }
  CHECK_THROWS_AS(ell_sign(Blade{0b1000}, 3), std::out_of_range);
}

TEST_CASE("surface element identity examples") {
  const int m = 3;
  std::vector<VectorPoly> plane{coord(m, 3)};
  CHECK(check_oriented_surface_element(plane, m));
  std::vector<VectorPoly> circle{VectorPoly::normsq(m, 1, 0), coord(m, 3)};
  CHECK(check_oriented_surface_element(circle, m));
  CHECK(check_vector_differential_power(2, 1));
  CHECK(check_wedge_surface_element(3, 1, VectorPoly::constant(3, 1, 7)));
  std::vector<VectorPoly> full{coord(m, 1), coord(m, 2), coord(m, 3) * coord(m, 1)};
  CHECK(check_gradient_wedge_volume(full, m));
}

TEST_CASE("mismatched forms report the first difference") {
  const auto c = compare_forms(dx(3, 1), dx(3, 2));
  CHECK_FALSE(c.holds);
  CHECK(c.first_difference.find("dx1") != std::string::npos);
  CHECK(compare_forms(dx(3, 1), dx(3, 1)).holds);
}

TEST_CASE("property: exterior identity suite") {
  const SuiteReport rep = run_exterior_suite(7, 12, 4);
  CHECK(rep.checks.size() > 30);
  for (const auto& c : rep.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
}
