#include "distint/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "distint/geomint.hpp"
#include "distint/parser.hpp"
#include "distint/pizzetti.hpp"
#include "distint/verify.hpp"

namespace distint {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json multivector_json(const Multivector<double>& a) {
  json arr = json::array();
  for (const auto& [b, c] : a.terms()) arr.push_back({{"blade", blade_indices(b)}, {"value", c}});
  return arr;
}

json exact_json(const ExactScalar& v) { return {{"value", to_string(v)}, {"float", v.to_double()}}; }

Box parse_box(const std::string& text, int m) {
  std::istringstream is(text);
  double a = 0, b = 0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof())
    throw UsageError("--box expects 'a,b', got '" + text + "'");
  if (!(b > a)) throw UsageError("--box needs a < b");
  return Box::cube(m, a, b);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw UsageError(msg);
}

struct Options {
  int m = 0;
  int k = 1;
  std::string poly;
  std::string method = "composed";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int partitions = 16;
  std::string phases;
  std::string f = "1";
  std::string box = "-1.5,1.5";
  int n = 201;
  double eps = 0.0;
  std::string suite;
  std::string cauchy_case;
  std::string out_file;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and numerical integration over spheres, Stiefel manifolds and implicit surfaces"};
  app.require_subcommand(1);
  app.add_option("--out", o.out_file, "Also write the JSON result to FILE");

  auto* piz = app.add_subcommand("pizzetti", "Exact Pizzetti integrals");
  piz->require_subcommand(1);
  auto* piz_sphere = piz->add_subcommand("sphere", "Integral over S^{m-1}");
  piz_sphere->add_option("--m", o.m, "Dimension")->required();
  piz_sphere->add_option("--poly", o.poly, "Polynomial in x1")->required();
  auto* piz_stiefel = piz->add_subcommand("stiefel", "Integral over St(m,k)");
  piz_stiefel->add_option("--m", o.m, "Dimension")->required();
  piz_stiefel->add_option("--k", o.k, "Frame size")->required();
  piz_stiefel->add_option("--poly", o.poly, "Polynomial in x1..xk")->required();
  piz_stiefel->add_option("--method", o.method, "composed or explicit2")
      ->check(CLI::IsMember({"composed", "explicit2"}));

  auto* oracle = app.add_subcommand("oracle", "Monte Carlo oracles");
  oracle->require_subcommand(1);
  auto* mc = oracle->add_subcommand("mc", "Haar Monte Carlo estimate over St(m,k)");
  mc->add_option("--m", o.m, "Dimension")->required();
  mc->add_option("--k", o.k, "Frame size")->required();
  mc->add_option("--poly", o.poly, "Polynomial in x1..xk")->required();
  mc->add_option("--samples", o.samples, "Sample count");
  mc->add_option("--seed", o.seed, "Seed");
  mc->add_option("--partitions", o.partitions, "Independent RNG streams");

  auto* integ = app.add_subcommand("integrate", "Mollified-delta surface quadrature");
  integ->require_subcommand(1);
  std::vector<CLI::App*> integ_modes;
  for (const char* mode : {"implicit", "oriented"}) {
    auto* s = integ->add_subcommand(mode, std::string(mode) + " integral");
    s->add_option("--m", o.m, "Dimension")->required();
    s->add_option("--phases", o.phases, "Phase polynomials separated by ';'")->required();
    s->add_option("--f", o.f, "Polynomial integrand");
    s->add_option("--box", o.box, "Cube bounds a,b");
    s->add_option("--n", o.n, "Grid points per axis");
    s->add_option("--eps", o.eps, "Mollifier half-width (default 6 * spacing)");
    integ_modes.push_back(s);
  }

  auto* verify = app.add_subcommand("verify", "Identity suites and Cauchy formula checks");
  verify->require_subcommand(1);
  auto* ident = verify->add_subcommand("identities", "Exact identity suites");
  ident->add_option("--suite", o.suite, "clifford, exterior or appendix")
      ->required()
      ->check(CLI::IsMember({"clifford", "exterior", "appendix"}));
  ident->add_option("--seed", o.seed, "Seed for random inputs");
  auto* cauchy = verify->add_subcommand("cauchy", "Both sides of the Cauchy formula");
  cauchy->add_option("--case", o.cauchy_case, "Case name")->required()->check(CLI::IsMember(cauchy_case_names()));
  cauchy->add_option("--n", o.n, "Grid points per axis");
  cauchy->add_option("--eps", o.eps, "Mollifier half-width (default 6 * spacing)");

  std::vector<const char*> argv{"distint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  json result;
  try {
    if (piz_sphere->parsed()) {
      require(o.m >= 2, "--m must be at least 2");
      const VectorPoly p = parse_poly(o.poly, o.m, 1);
      result = exact_json(sphere_pizzetti(p, o.m));
      result["command"] = "pizzetti sphere";
      result["m"] = o.m;
      result["poly"] = to_string(p);
    } else if (piz_stiefel->parsed()) {
      require(o.m >= 2 && o.k >= 1 && o.k < o.m, "need m >= 2 and 1 <= k <= m-1");
      require(o.method == "composed" || (o.k == 2 && o.m >= 3), "--method explicit2 needs k = 2 and m >= 3");
      const VectorPoly p = parse_poly(o.poly, o.m, o.k);
      const ExactScalar v = o.method == "composed" ? stiefel_pizzetti_composed(p, o.m, o.k) : stiefel2_explicit(p, o.m);
      result = exact_json(v);
      result["command"] = "pizzetti stiefel";
      result["m"] = o.m;
      result["k"] = o.k;
      result["method"] = o.method;
      result["poly"] = to_string(p);
    } else if (mc->parsed()) {
      require(o.m >= 1 && o.k >= 1 && o.k <= o.m, "need 1 <= k <= m");
      require(o.samples >= 2 && o.partitions >= 1, "need --samples >= 2 and --partitions >= 1");
      const VectorPoly p = parse_poly(o.poly, o.m, o.k);
      const MCEstimate e = mc_stiefel_integral(p, o.m, o.k, o.samples, o.seed, o.partitions);
      result = {{"command", "oracle mc"}, {"m", o.m},           {"k", o.k},
                {"poly", to_string(p)},   {"mean", e.mean},     {"stderr", e.standard_error},
                {"samples", e.samples},   {"seed", e.seed},     {"partitions", o.partitions}};
    } else if (integ_modes[0]->parsed() || integ_modes[1]->parsed()) {
      const bool oriented = integ_modes[1]->parsed();
      require(o.m >= 1 && o.m <= 6, "--m must be between 1 and 6");
      require(o.n >= 16, "--n must be at least 16");
      ImplicitSurfaceSpec spec{o.m, parse_poly_list(o.phases, o.m, 1), parse_box(o.box, o.m)};
      require(spec.codimension() <= o.m, "more phases than dimensions");
      const VectorPoly f = parse_poly(o.f, o.m, 1);
      QuadratureConfig cfg;
      cfg.n = o.n;
      cfg.eps = o.eps;
      try {
        cfg.eps = cfg.resolved_eps(spec.box);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      err << "integrate: n=" << cfg.n << " eps=" << cfg.eps << "\n";
      result = {{"command", oriented ? "integrate oriented" : "integrate implicit"},
                {"m", o.m},
                {"k", spec.codimension()},
                {"n", cfg.n},
                {"eps", cfg.eps}};
      if (oriented)
        result["value"] = multivector_json(integrate_oriented(f, spec, cfg));
      else
        result["value"] = integrate_implicit(f, spec, cfg);
    } else if (ident->parsed()) {
      const SuiteReport rep = run_suite(o.suite, o.seed);
      json checks = json::array();
      for (const auto& c : rep.checks) {
        json j = {{"name", c.name}, {"passed", c.passed}, {"trials", c.trials}};
        if (!c.passed) j["detail"] = c.detail;
        checks.push_back(std::move(j));
      }
      result = {{"command", "verify identities"}, {"suite", rep.suite}, {"passed", rep.passed()},
                {"failed", rep.failed()},         {"checks", checks}};
      err << "suite " << rep.suite << ": " << rep.passed() << " passed, " << rep.failed() << " failed\n";
    } else if (cauchy->parsed()) {
      require(o.n >= 16, "--n must be at least 16");
      const CauchyCase c = make_cauchy_case(o.cauchy_case);
      QuadratureConfig cfg;
      cfg.n = o.n;
      cfg.eps = o.eps;
      const CauchyResult r = cauchy_check(c.f, c.g, c.phi, c.spec, cfg);
      result = {{"command", "verify cauchy"},         {"case", c.name},
                {"n", cfg.n},                         {"lhs", multivector_json(r.lhs)},
                {"rhs", multivector_json(r.rhs)},     {"residual", r.residual}};
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }

  const std::string text = result.dump() + "\n";
  out << text;
  if (!o.out_file.empty()) {
    std::ofstream file(o.out_file);
    if (!(file << text)) {
      err << "error: cannot write " << o.out_file << "\n";
      return kExitComputation;
    }
  }
  if (ident->parsed() && result["failed"].get<int>() > 0) return kExitComputation;
  return kExitOk;
}

}  // namespace distint
