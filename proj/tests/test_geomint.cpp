#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distint/geomint.hpp"
#include "distint/pizzetti.hpp"
#include "distint/verify.hpp"

using namespace distint;
using MVd = Multivector<double>;

namespace {

constexpr double kPi = std::numbers::pi;

VectorPoly coord(int m, int i) { return VectorPoly::variable(m, 1, 0, i - 1); }
VectorPoly sphere_phase(int m) { return VectorPoly::normsq(m, 1, 0) - VectorPoly::constant(m, 1, 1); }

ImplicitSurfaceSpec sphere_spec() { return {3, {sphere_phase(3)}, Box::cube(3, -1.5, 1.5)}; }
ImplicitSurfaceSpec circle_spec() { return {3, {sphere_phase(3), coord(3, 3)}, Box::cube(3, -1.5, 1.5)}; }

QuadratureConfig grid(int n) {
  QuadratureConfig cfg;
  cfg.n = n;
  return cfg;
}

double coefficient(const MVd& a, Blade b) { return a.coefficient(b, 0.0); }

double max_abs(const MVd& a) {
  double r = 0.0;
  for (const auto& [b, c] : a.terms()) r = std::max(r, std::abs(c));
  return r;
}

MvPoly scalar_field(const VectorPoly& p) { return MvPoly::scalar(p.dimension(), p); }

}  // namespace

TEST_CASE("mollifier has unit mass and compact support") {
  const double eps = 0.3;
  double mass = 0.0;
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) {
    const double t = -1.0 + (i + 0.5) * 2.0 / steps;
    mass += mollifier(t, eps) * 2.0 / steps;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mollifier(0.31, eps) == 0.0);
  CHECK(mollifier(0.0, eps) == doctest::Approx(1.0 / eps));
}

TEST_CASE("sphere area and circle length") {
  CHECK(integrate_implicit(VectorPoly::constant(3, 1, 1), sphere_spec()) == doctest::Approx(4 * kPi).epsilon(0.01));
  CHECK(integrate_implicit(VectorPoly::constant(3, 1, 1), circle_spec()) == doctest::Approx(2 * kPi).epsilon(0.01));
}

TEST_CASE("plane Gaussian") {
  const ImplicitSurfaceSpec spec{2, {coord(2, 2)}, Box::cube(2, -4, 4)};
  const ScalarField f = [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); };
  CHECK(integrate_implicit(f, spec) == doctest::Approx(std::sqrt(kPi)).epsilon(0.01));
}

TEST_CASE("oriented examples") {
  const ImplicitSurfaceSpec plane{3, {coord(3, 3)}, Box::cube(3, -4, 4)};
  const ScalarField gauss = [](std::span<const double> x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  };
  const MVd p = integrate_oriented(gauss, plane, grid(121));
  CHECK(coefficient(p, 0b100) == doctest::Approx(kPi).epsilon(0.02));
  CHECK(std::abs(coefficient(p, 0b001)) < 1e-9);

  const MVd c1 = integrate_oriented(VectorPoly::constant(3, 1, 1), circle_spec(), grid(101));
  CHECK(max_abs(c1) < 1e-9);
  const MVd cx = integrate_oriented(coord(3, 1), circle_spec(), grid(201));
  CHECK(coefficient(cx, 0b101) == doctest::Approx(kPi).epsilon(0.01));
  CHECK(std::abs(coefficient(cx, 0b110)) < 1e-9);
}

TEST_CASE("property: refining the grid reduces the sphere error") {
  double previous = 1e9;
  for (int n : {51, 101, 201}) {
    const double err = std::abs(integrate_implicit(VectorPoly::constant(3, 1, 1), sphere_spec(), grid(n)) - 4 * kPi);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("property: orientation flips with the phase order") {
  ImplicitSurfaceSpec swapped = circle_spec();
  std::swap(swapped.phases[0], swapped.phases[1]);
  const auto cfg = grid(101);
  const MVd a = integrate_oriented(coord(3, 1), circle_spec(), cfg);
  const MVd b = integrate_oriented(coord(3, 1), swapped, cfg);
  CHECK(max_abs(a + b) < 1e-12 * max_abs(a));
  CHECK(integrate_implicit(coord(3, 1) * coord(3, 1), circle_spec(), cfg) ==
        doctest::Approx(integrate_implicit(coord(3, 1) * coord(3, 1), swapped, cfg)).epsilon(1e-12));
}

TEST_CASE("property: phase mixing invariance") {
  const auto one = VectorPoly::constant(3, 1, 1);
  const auto zero = VectorPoly(3, 1);
  const auto cfg = grid(101);
  const auto [base, same] = phase_rescale_invariance(circle_spec(), {{one, zero}, {zero, one}}, one, cfg);
  CHECK(base == same);
  const double base_err = std::abs(base - 2 * kPi);
  const auto two = VectorPoly::constant(3, 1, 2);
  const auto [b2, doubled] = phase_rescale_invariance(circle_spec(), {{two, zero}, {zero, two}}, one, cfg);
  CHECK(std::abs(doubled - b2) <= 3 * base_err);
  const auto c = VectorPoly::constant(3, 1, Rational(3, 5)), s = VectorPoly::constant(3, 1, Rational(4, 5));
  const auto [b3, rotated] = phase_rescale_invariance(circle_spec(), {{c, -s}, {s, c}}, one, cfg);
  CHECK(std::abs(rotated - b3) <= 3 * base_err);
  CHECK_THROWS_AS(phase_rescale_invariance(circle_spec(), {{one, one}, {one, one}}, one, cfg), DeterminantError);
}

TEST_CASE("errors") {
  ImplicitSurfaceSpec touching{3, {sphere_phase(3)}, Box::cube(3, -1.0, 1.0)};
  CHECK_THROWS_AS(integrate_implicit(VectorPoly::constant(3, 1, 1), touching, grid(51)), BoundaryError);
  ImplicitSurfaceSpec dependent{3, {coord(3, 3), coord(3, 3) * Rational(2)}, Box::cube(3, -1.5, 1.5)};
  CHECK_THROWS_AS(integrate_implicit(VectorPoly::constant(3, 1, 1), dependent, grid(31)), IndependenceError);
  CHECK_THROWS_AS(integrate_implicit(VectorPoly::constant(3, 1, 1), sphere_spec(), grid(8)), std::invalid_argument);
  ImplicitSurfaceSpec wrong_dim{3, {sphere_phase(2)}, Box::cube(3, -1.5, 1.5)};
  CHECK_THROWS_AS(wrong_dim.validate(), std::invalid_argument);
}

TEST_CASE("tangent and normal frames") {
  const std::vector<double> p{1.0, 0.0, 0.0};
  const auto s = tangent_normal_frames(sphere_spec(), p);
  REQUIRE(s.normal.size() == 1);
  REQUIRE(s.tangent.size() == 2);
  CHECK(std::abs(s.normal.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(s.tangent.vectors.row(0).norm() < 1e-12);

  const auto c = tangent_normal_frames(circle_spec(), p);
  REQUIRE(c.tangent.size() == 1);
  CHECK(std::abs(c.tangent.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(c.normal.vectors.row(1).norm() < 1e-12);

  SuiteRng rng(3);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> q{normal(rng), normal(rng), 0.0};
    const double r = std::hypot(q[0], q[1]);
    q[0] /= r;
    q[1] /= r;
    const auto f = tangent_normal_frames(circle_spec(), q);
    Eigen::MatrixXd all(3, 3);
    all << f.normal.vectors, f.tangent.vectors;
    CHECK((all.transpose() * all - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  }
  const std::vector<double> off{1.2, 0.0, 0.0};
  CHECK_THROWS(tangent_normal_frames(sphere_spec(), off));
}

TEST_CASE("tangential Dirac operator") {
  const std::vector<double> p{1.0, 0.0, 0.0};
  CHECK(max_abs(tangential_dirac(scalar_field(VectorPoly::constant(3, 1, 5)), sphere_spec(), p)) < 1e-14);
  const MVd a = tangential_dirac(scalar_field(coord(3, 3)), sphere_spec(), p);
  CHECK(coefficient(a, 0b100) == doctest::Approx(1.0));
  CHECK(max_abs(a - MVd::blade(3, 0b100, coefficient(a, 0b100))) < 1e-12);
  const MVd b = tangential_dirac(scalar_field(coord(3, 2)), circle_spec(), p);
  CHECK(coefficient(b, 0b010) == doctest::Approx(1.0));
  // normal derivative is discarded
  CHECK(max_abs(tangential_dirac(scalar_field(coord(3, 1)), sphere_spec(), p)) < 1e-12);
  // left and right actions agree for scalar fields
  const MVd r = tangential_dirac_right(scalar_field(coord(3, 2)), circle_spec(), p);
  CHECK(max_abs(r - b) < 1e-12);
}

TEST_CASE("Cauchy formula") {
  const auto constant = make_cauchy_case("circle-constant");
  const auto r0 = cauchy_check(constant.f, constant.g, constant.phi, constant.spec, grid(101));
  CHECK(max_abs(r0.lhs) < 1e-9);
  CHECK(max_abs(r0.rhs) < 1e-9);

  const auto circle = make_cauchy_case("circle");
  const auto coarse = cauchy_check(circle.f, circle.g, circle.phi, circle.spec, grid(101));
  const auto fine = cauchy_check(circle.f, circle.g, circle.phi, circle.spec, grid(201));
  CHECK(fine.residual < 0.02);
  CHECK(fine.residual < coarse.residual);
  CHECK_THROWS_AS(make_cauchy_case("nope"), std::invalid_argument);
}

TEST_CASE("Haar sampling") {
  SuiteRng rng(9);
  int plus = 0;
  for (int t = 0; t < 2000; ++t) {
    const Frame f = haar_sample_stiefel(1, 1, rng);
    CHECK(std::abs(f.vectors(0, 0)) == 1.0);
    plus += f.vectors(0, 0) > 0;
  }
  CHECK(plus > 900);
  CHECK(plus < 1100);
  for (int t = 0; t < 200; ++t) {
    const Frame f = haar_sample_stiefel(5, 3, rng);
    CHECK(f.orthonormality_residual() < 1e-12);
  }
  CHECK_THROWS_AS(haar_sample_stiefel(2, 3, rng), std::invalid_argument);
}

TEST_CASE("Monte Carlo Stiefel integrals") {
  const double vol = stiefel_volume(3, 2).to_double();
  const auto one = mc_stiefel_integral(VectorPoly::constant(3, 2, 1), 3, 2, 1000, 4);
  CHECK(one.mean == doctest::Approx(vol).epsilon(1e-14));
  CHECK(one.standard_error < 1e-9);

  const auto xy = mc_stiefel_integral(VectorPoly::dot(3, 2, 0, 1), 3, 2, 1000, 4);
  CHECK(std::abs(xy.mean) < 1e-9);

  const auto x11 = VectorPoly::variable(3, 2, 0, 0);
  const auto est = mc_stiefel_integral(x11 * x11, 3, 2, 100000, 7);
  CHECK(std::abs(est.mean - 8 * kPi * kPi / 3) <= 4 * est.standard_error);
  CHECK(est.samples == 100000);

  const auto again = mc_stiefel_integral(x11 * x11, 3, 2, 100000, 7);
  CHECK(again.mean == est.mean);
  CHECK(again.standard_error == est.standard_error);
  const auto other = mc_stiefel_integral(x11 * x11, 3, 2, 100000, 8);
  CHECK(other.mean != est.mean);
}

TEST_CASE("property: block-orthogonal bases") {
  SuiteRng rng(13);
  for (int t = 0; t < 40; ++t) {
    const int m = 2 + t % 5;
    const int k = 1 + t % std::min(3, m - 1);
    const Eigen::MatrixXd rows = random_block_orthogonal(m, k, rng);
    CHECK((rows.topRows(k) * rows.bottomRows(m - k).transpose()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(block_orthogonal_check(rows, k).holds(1e-10));
  }
  Eigen::MatrixXd skew(2, 2);
  skew << 1, 0, 1, 1;
  CHECK_FALSE(block_orthogonal_check(skew, 1).holds(1e-10));
}
