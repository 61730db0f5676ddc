// Seeded identity suites and named Cauchy test cases, shared by the CLI and tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distint/clifford.hpp"
#include "distint/geomint.hpp"
#include "distint/polyalg.hpp"

namespace distint {

using SuiteRng = std::mt19937_64;

/// p/q with |p| <= 5, 1 <= q <= 4.
Rational random_rational(SuiteRng& rng);
Multivector<Rational> random_multivector(int m, SuiteRng& rng);
Multivector<Rational> random_homogeneous(int m, int grade, SuiteRng& rng);
Vector1<Rational> random_vector(int m, SuiteRng& rng);
/// Dense random polynomial of degree <= 2 in one vector variable.
VectorPoly random_quadratic(int m, SuiteRng& rng);
/// Random polynomial with at most `terms` terms of degree <= max_degree.
VectorPoly random_poly(int m, int num_vars, int max_degree, int terms, SuiteRng& rng);

struct CheckOutcome {
  std::string name;
  bool passed = true;
  int trials = 0;
  std::string detail;  // first failure
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckOutcome> checks;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
};

SuiteReport run_clifford_suite(std::uint64_t seed = 1);
/// Exterior-form identities for m <= max_m, k <= 3, `tuples` random quadratic phase tuples each.
SuiteReport run_exterior_suite(std::uint64_t seed = 1, int tuples = 50, int max_m = 5);
/// Stiefel operator identities: directional-power closed form, terminating Gauss sum,
/// composed vs explicit St(m,2) formula on low-degree monomials.
SuiteReport run_appendix_suite();
/// "clifford", "exterior" or "appendix"; throws std::invalid_argument otherwise.
SuiteReport run_suite(const std::string& name, std::uint64_t seed = 1);

/// <y, d_x>^{2j} ||x||^{2k+2j} by repeated differentiation.
VectorPoly delm_bruteforce(int j, int k, int m);

struct CauchyCase {
  std::string name;
  MvPoly f;
  MvPoly g;
  VectorPoly phi;
  ImplicitSurfaceSpec spec;
};

/// "circle" (F=1, G=x2, cut x1), "circle-constant" (F=G=1) or "classical"
/// (k=0, F=1, G=x1, cut ||x||^2-1), all in R^3 on [-1.5, 1.5]^3.
CauchyCase make_cauchy_case(const std::string& name);
std::vector<std::string> cauchy_case_names();

}  // namespace distint
