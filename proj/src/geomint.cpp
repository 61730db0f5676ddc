#include "distint/geomint.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "distint/exact_scalar.hpp"

namespace distint {

namespace {

constexpr int kMaxGridDim = 6;
constexpr int kMaxBlades = 1 << kMaxGridDim;

// ---- compiled polynomial evaluation ----------------------------------------

// x_i^e for every scalar variable, refreshed once per point.
class PowerTable {
 public:
  PowerTable(int num_scalars, int max_degree)
      : n_(num_scalars), stride_(max_degree + 1), v_(static_cast<std::size_t>(n_ * stride_), 1.0) {}

  void fill(const double* x) {
    for (int i = 0; i < n_; ++i) {
      double* row = &v_[static_cast<std::size_t>(i * stride_)];
      for (int e = 1; e < stride_; ++e) row[e] = row[e - 1] * x[i];
    }
  }
  double get(int i, int e) const { return v_[static_cast<std::size_t>(i * stride_ + e)]; }

 private:
  int n_;
  int stride_;
  std::vector<double> v_;
};

class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const VectorPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Term t{c.get_d(), static_cast<std::uint32_t>(factors_.size()), 0};
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) factors_.push_back({static_cast<std::uint16_t>(i), e[i]});
      t.end = static_cast<std::uint32_t>(factors_.size());
      terms_.push_back(t);
    }
  }

  double operator()(const PowerTable& t) const {
    double s = 0.0;
    for (const auto& term : terms_) {
      double prod = term.c;
      for (std::uint32_t f = term.begin; f < term.end; ++f) prod *= t.get(factors_[f].var, factors_[f].exp);
      s += prod;
    }
    return s;
  }
  bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    double c;
    std::uint32_t begin, end;
  };
  struct Factor {
    std::uint16_t var;
    std::uint8_t exp;
  };
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
};

// Scalar field with its gradient.
struct CompiledField {
  CompiledPoly value;
  std::vector<CompiledPoly> grad;

  CompiledField() = default;
  explicit CompiledField(const VectorPoly& p) : value(p) {
    for (int i = 0; i < p.dimension(); ++i) grad.emplace_back(partial(p, 0, i));
  }
};

// Clifford-valued field with its partial derivatives, by blade.
struct CompiledMvField {
  std::vector<Blade> blades;
  std::vector<CompiledField> coeffs;

  explicit CompiledMvField(const MvPoly& f) {
    for (const auto& [b, p] : f.terms()) {
      blades.push_back(b);
      coeffs.emplace_back(p);
    }
  }
};

// ---- dense multivectors for m <= 6 ----------------------------------------

using Dense = std::array<double, kMaxBlades>;

const std::array<std::array<signed char, kMaxBlades>, kMaxBlades>& sign_table() {
  static const auto table = [] {
    std::array<std::array<signed char, kMaxBlades>, kMaxBlades> t{};
    for (Blade a = 0; a < kMaxBlades; ++a)
      for (Blade b = 0; b < kMaxBlades; ++b) t[a][b] = static_cast<signed char>(blade_product_sign(a, b));
    return t;
  }();
  return table;
}

Dense dense_zero() {
  Dense d;
  d.fill(0.0);
  return d;
}

void dense_mul(const Dense& a, const Dense& b, int nb, Dense& out) {
  const auto& s = sign_table();
  out.fill(0.0);
  for (int i = 0; i < nb; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < nb; ++j) {
      if (b[j] == 0.0) continue;
      out[i ^ j] += s[i][j] * a[i] * b[j];
    }
  }
}

Dense dense_mul(const Dense& a, const Dense& b, int nb) {
  Dense out;
  dense_mul(a, b, nb, out);
  return out;
}

// a ^ v for a grade-1 v given by components.
Dense dense_wedge_vector(const Dense& a, const double* v, int m) {
  Dense out = dense_zero();
  const int nb = 1 << m;
  for (int b = 0; b < nb; ++b) {
    if (a[b] == 0.0) continue;
    for (int j = 0; j < m; ++j) {
      const Blade bit = Blade{1} << j;
      if ((b & bit) != 0) continue;
      const int above = std::popcount(static_cast<Blade>(b) >> (j + 1));
      out[b | bit] += ((above & 1) ? -a[b] : a[b]) * v[j];
    }
  }
  return out;
}

Dense dense_vector(const double* v, int m) {
  Dense d = dense_zero();
  for (int j = 0; j < m; ++j) d[Blade{1} << j] = v[j];
  return d;
}

double dense_norm(const Dense& a, int nb) {
  double s = 0.0;
  for (int i = 0; i < nb; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

Multivector<double> to_multivector(const Dense& a, int m) {
  Multivector<double> r(m);
  for (int i = 0; i < (1 << m); ++i)
    if (a[i] != 0.0) r.add_term(static_cast<Blade>(i), a[i]);
  return r;
}

// Evaluates a compiled Clifford field (value or one partial) into dense form.
void eval_mv(const CompiledMvField& f, const PowerTable& t, int comp, Dense& out) {
  out.fill(0.0);
  for (std::size_t i = 0; i < f.blades.size(); ++i)
    out[f.blades[i]] += comp < 0 ? f.coeffs[i].value(t) : f.coeffs[i].grad[static_cast<std::size_t>(comp)](t);
}

// ---- grid -------------------------------------------------------------------

struct Grid {
  int m;
  int n;
  std::vector<double> lower;
  std::vector<double> spacing;
  double cell_volume;
};

Grid make_grid(const Box& box, int n) {
  Grid g{box.dimension(), n, box.lower, {}, 1.0};
  for (int i = 0; i < g.m; ++i) {
    const double h = (box.upper[i] - box.lower[i]) / n;
    g.spacing.push_back(h);
    g.cell_volume *= h;
  }
  return g;
}

// Visits every cell centre; chunks of the first axis are processed by a
// worker pool and reduced in chunk order, so results do not depend on the
// number of threads.
template <class Partial, class Visit>
std::vector<Partial> grid_map(const Grid& g, int chunks, const Partial& init, Visit visit) {
  const int nchunks = std::clamp(chunks, 1, g.n);
  std::vector<Partial> partials(static_cast<std::size_t>(nchunks), init);
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<double> x(static_cast<std::size_t>(g.m));
    std::vector<int> idx(static_cast<std::size_t>(g.m));
    for (int c = next++; c < nchunks; c = next++) {
      Partial& acc = partials[static_cast<std::size_t>(c)];
      const int begin = static_cast<int>(static_cast<long>(g.n) * c / nchunks);
      const int end = static_cast<int>(static_cast<long>(g.n) * (c + 1) / nchunks);
      for (int i0 = begin; i0 < end; ++i0) {
        std::fill(idx.begin(), idx.end(), 0);
        idx[0] = i0;
        for (;;) {
          bool edge = false;
          for (int a = 0; a < g.m; ++a) {
            x[a] = g.lower[a] + (idx[a] + 0.5) * g.spacing[a];
            edge = edge || idx[a] == 0 || idx[a] == g.n - 1;
          }
          visit(x.data(), edge, acc);
          int a = g.m - 1;
          while (a >= 1 && ++idx[a] == g.n) idx[a--] = 0;
          if (a < 1) break;
        }
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int nthreads = std::min<int>(static_cast<int>(hw), nchunks);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return partials;
}

std::string point_string(const double* x, int m) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < m; ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Weight and gradients of the mollified phase deltas at a point.
struct PhaseEval {
  double weight = 1.0;
  std::array<std::array<double, kMaxGridDim>, kMaxGridDim> grads{};
  bool active = true;
  bool degenerate = false;  // zero gradient on the surface
};

void eval_phases(const std::vector<CompiledField>& phases, const PowerTable& t, int m, double eps, PhaseEval& pe) {
  pe.weight = 1.0;
  pe.active = true;
  pe.degenerate = false;
  for (std::size_t j = 0; j < phases.size(); ++j) {
    const double v = phases[j].value(t);
    double g2 = 0.0;
    for (int i = 0; i < m; ++i) {
      pe.grads[j][i] = phases[j].grad[static_cast<std::size_t>(i)](t);
      g2 += pe.grads[j][i] * pe.grads[j][i];
    }
    const double gn = std::sqrt(g2);
    if (gn == 0.0) {
      pe.active = false;
      pe.degenerate = (v == 0.0);
      return;
    }
    const double d = v / gn;
    if (std::abs(d) >= eps) {
      pe.active = false;
      return;
    }
    pe.weight *= mollifier(d, eps) / gn;
  }
}

Dense wedge_of(const PhaseEval& pe, int k, int m) {
  Dense b = dense_zero();
  b[0] = 1.0;
  for (int j = 0; j < k; ++j) b = dense_wedge_vector(b, pe.grads[j].data(), m);
  return b;
}

struct SurfacePartial {
  Dense sum = dense_zero();
  double peak = 0.0;
  double boundary_peak = 0.0;
  bool dependent = false;
  std::array<double, kMaxGridDim> where{};
};

void check_surface(const std::vector<SurfacePartial>& parts, int m, double rel_tol) {
  double peak = 0.0;
  double boundary_peak = 0.0;
  for (const auto& p : parts) {
    if (p.dependent)
      throw IndependenceError("phase gradients are dependent near surface point " + point_string(p.where.data(), m));
    peak = std::max(peak, p.peak);
    boundary_peak = std::max(boundary_peak, p.boundary_peak);
  }
  if (boundary_peak > rel_tol * peak)
    throw BoundaryError("surface reaches the quadrature box boundary (relative weight " +
                        std::to_string(peak > 0 ? boundary_peak / peak : boundary_peak) + ")");
}

int max_degree(const std::vector<const VectorPoly*>& ps) {
  int d = 0;
  for (const auto* p : ps) d = std::max(d, p->degree());
  return d;
}

std::vector<CompiledField> compile_phases(const std::vector<VectorPoly>& phases) {
  std::vector<CompiledField> out;
  out.reserve(phases.size());
  for (const auto& p : phases) out.emplace_back(p);
  return out;
}

// Shared band quadrature; integrand(x, pe, B, weight, acc) adds its contribution.
template <class Integrand>
Dense band_quadrature(const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg, int degree_extra,
                      Integrand integrand) {
  spec.validate();
  const int m = spec.m;
  const int k = spec.codimension();
  const double eps = cfg.resolved_eps(spec.box);
  const Grid grid = make_grid(spec.box, cfg.n);
  const auto phases = compile_phases(spec.phases);
  std::vector<const VectorPoly*> polys;
  for (const auto& p : spec.phases) polys.push_back(&p);
  const int deg = std::max(max_degree(polys), degree_extra);
  const int nb = 1 << m;

  auto parts = grid_map(grid, cfg.chunks, SurfacePartial{}, [&](const double* x, bool edge, SurfacePartial& acc) {
    thread_local PowerTable table(0, 0);
    thread_local int table_key = -1;
    const int key = m * 64 + deg;
    if (table_key != key) {
      table = PowerTable(m, deg);
      table_key = key;
    }
    table.fill(x);
    PhaseEval pe;
    eval_phases(phases, table, m, eps, pe);
    if (pe.degenerate) {
      acc.dependent = true;
      std::copy(x, x + m, acc.where.begin());
      return;
    }
    if (!pe.active) return;
    const Dense b = wedge_of(pe, k, m);
    if (dense_norm(b, nb) < cfg.independence_tol) {
      acc.dependent = true;
      std::copy(x, x + m, acc.where.begin());
      return;
    }
    Dense contrib = dense_zero();
    integrand(x, table, b, pe.weight, contrib);
    const double mag = dense_norm(contrib, nb);
    acc.peak = std::max(acc.peak, mag);
    if (edge) acc.boundary_peak = std::max(acc.boundary_peak, mag);
    for (int i = 0; i < nb; ++i) acc.sum[i] += contrib[i];
  });
  check_surface(parts, m, cfg.boundary_rel_tol);
  Dense total = dense_zero();
  for (const auto& p : parts)
    for (int i = 0; i < nb; ++i) total[i] += p.sum[i];
  for (int i = 0; i < nb; ++i) total[i] *= grid.cell_volume;
  return total;
}

void check_integrand(const VectorPoly& f, const ImplicitSurfaceSpec& spec) {
  if (f.dimension() != spec.m || f.num_vars() != 1)
    throw std::invalid_argument("integrand must be a polynomial in one vector variable of dimension m");
}

double scalar_integral(const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg, int degree,
                       const std::function<double(const double*, const PowerTable&)>& f) {
  const int nb = 1 << spec.m;
  Dense r = band_quadrature(spec, cfg, degree,
                            [&](const double* x, const PowerTable& t, const Dense& b, double w, Dense& out) {
                              out[0] = w * dense_norm(b, nb) * f(x, t);
                            });
  return r[0];
}

Multivector<double> oriented_integral(const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg, int degree,
                                      const std::function<double(const double*, const PowerTable&)>& f) {
  const int nb = 1 << spec.m;
  Dense r = band_quadrature(spec, cfg, degree,
                            [&](const double* x, const PowerTable& t, const Dense& b, double w, Dense& out) {
                              const double s = w * f(x, t);
                              for (int i = 0; i < nb; ++i) out[i] = s * b[i];
                            });
  return to_multivector(r, spec.m);
}

// ---- frames -----------------------------------------------------------------

using Vec = std::array<double, kMaxGridDim>;

double vdot(const Vec& a, const Vec& b, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += a[i] * b[i];
  return s;
}

// Orthonormal normals from the gradients and a tangent completion chosen by
// largest residual among the coordinate axes. Returns false on dependence.
bool build_frames(const std::array<Vec, kMaxGridDim>& grads, int k, int m, double rel_tol,
                  std::array<Vec, kMaxGridDim>& basis) {
  for (int j = 0; j < k; ++j) {
    Vec v = grads[j];
    const double g = std::sqrt(vdot(v, v, m));
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) {
        const double c = vdot(v, basis[i], m);
        for (int a = 0; a < m; ++a) v[a] -= c * basis[i][a];
      }
    const double nv = std::sqrt(vdot(v, v, m));
    if (g == 0.0 || nv <= rel_tol * g) return false;
    for (int a = 0; a < m; ++a) basis[j][a] = v[a] / nv;
  }
  std::array<bool, kMaxGridDim> used{};
  for (int t = k; t < m; ++t) {
    int best = -1;
    double best_norm = -1.0;
    Vec best_v{};
    for (int c = 0; c < m; ++c) {
      if (used[c]) continue;
      Vec v{};
      v[c] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < t; ++i) {
          const double d = vdot(v, basis[i], m);
          for (int a = 0; a < m; ++a) v[a] -= d * basis[i][a];
        }
      const double nv = std::sqrt(vdot(v, v, m));
      if (nv > best_norm) {
        best_norm = nv;
        best = c;
        best_v = v;
      }
    }
    used[best] = true;
    for (int a = 0; a < m; ++a) basis[t][a] = best_v[a] / best_norm;
  }
  return true;
}

struct CauchyPartial {
  Dense lhs = dense_zero();
  Dense rhs = dense_zero();
  double peak = 0.0;
  double boundary_peak = 0.0;
  bool dependent = false;
  bool transversal_failure = false;
  std::array<double, kMaxGridDim> where{};
};

}  // namespace

void ImplicitSurfaceSpec::validate(bool allow_empty) const {
  if (m < 1 || m > kMaxGridDim) throw std::invalid_argument("grid quadrature supports 1 <= m <= 6");
  const int k = codimension();
  if (k > m || (k == 0 && !allow_empty)) throw std::invalid_argument("need 1 <= k <= m phases");
  for (const auto& p : phases)
    if (p.dimension() != m || p.num_vars() != 1)
      throw std::invalid_argument("phase must be a polynomial in one vector variable of dimension m");
  if (box.dimension() != m || static_cast<int>(box.upper.size()) != m)
    throw std::invalid_argument("box dimension must equal m");
  for (int i = 0; i < m; ++i)
    if (!(box.upper[i] > box.lower[i])) throw std::invalid_argument("box bounds must satisfy lower < upper");
}

double QuadratureConfig::resolved_eps(const Box& box) const {
  if (n < 16) throw std::invalid_argument("quadrature needs n >= 16");
  double hmax = 0.0;
  double side = std::numeric_limits<double>::infinity();
  for (int i = 0; i < box.dimension(); ++i) {
    const double len = box.upper[i] - box.lower[i];
    hmax = std::max(hmax, len / n);
    side = std::min(side, len);
  }
  const double e = eps > 0.0 ? eps : 6.0 * hmax;
  if (!(e > hmax && e < side)) throw std::invalid_argument("eps must lie strictly between grid spacing and box size");
  return e;
}

double mollifier(double t, double eps) {
  if (std::abs(t) >= eps) return 0.0;
  return (1.0 + std::cos(std::numbers::pi * t / eps)) / (2.0 * eps);
}

double integrate_implicit(const ScalarField& f, const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg) {
  const int m = spec.m;
  return scalar_integral(spec, cfg, 0, [&](const double* x, const PowerTable&) {
    return f(std::span<const double>(x, static_cast<std::size_t>(m)));
  });
}

double integrate_implicit(const VectorPoly& f, const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg) {
  check_integrand(f, spec);
  const CompiledPoly cf(f);
  return scalar_integral(spec, cfg, f.degree(), [&](const double*, const PowerTable& t) { return cf(t); });
}

Multivector<double> integrate_oriented(const ScalarField& f, const ImplicitSurfaceSpec& spec,
                                       const QuadratureConfig& cfg) {
  const int m = spec.m;
  return oriented_integral(spec, cfg, 0, [&](const double* x, const PowerTable&) {
    return f(std::span<const double>(x, static_cast<std::size_t>(m)));
  });
}

Multivector<double> integrate_oriented(const VectorPoly& f, const ImplicitSurfaceSpec& spec,
                                       const QuadratureConfig& cfg) {
  check_integrand(f, spec);
  const CompiledPoly cf(f);
  return oriented_integral(spec, cfg, f.degree(), [&](const double*, const PowerTable& t) { return cf(t); });
}

std::pair<double, double> phase_rescale_invariance(const ImplicitSurfaceSpec& spec,
                                                   const std::vector<std::vector<VectorPoly>>& alpha,
                                                   const VectorPoly& f, const QuadratureConfig& cfg,
                                                   double det_tol) {
  spec.validate();
  const int k = spec.codimension();
  if (static_cast<int>(alpha.size()) != k) throw std::invalid_argument("alpha must be k x k");
  for (const auto& row : alpha)
    if (static_cast<int>(row.size()) != k) throw std::invalid_argument("alpha must be k x k");

  ImplicitSurfaceSpec mixed = spec;
  for (int l = 0; l < k; ++l) {
    VectorPoly psi(spec.m, 1);
    for (int j = 0; j < k; ++j) psi += alpha[l][j] * spec.phases[j];
    mixed.phases[l] = std::move(psi);
  }

  // det(alpha) on a coarse grid of the box.
  std::vector<std::vector<CompiledPoly>> ca(static_cast<std::size_t>(k));
  int deg = 0;
  for (int l = 0; l < k; ++l)
    for (int j = 0; j < k; ++j) {
      ca[l].emplace_back(alpha[l][j]);
      deg = std::max(deg, alpha[l][j].degree());
    }
  const Grid coarse = make_grid(spec.box, 9);
  double min_det = std::numeric_limits<double>::infinity();
  auto dets = grid_map(coarse, 1, min_det, [&](const double* x, bool, double& acc) {
    PowerTable t(spec.m, std::max(deg, 0));
    t.fill(x);
    Eigen::MatrixXd a(k, k);
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < k; ++j) a(l, j) = ca[l][j](t);
    acc = std::min(acc, std::abs(a.determinant()));
  });
  for (double d : dets) min_det = std::min(min_det, d);
  if (min_det < det_tol) throw DeterminantError("phase mixing matrix is singular on the box");

  return {integrate_implicit(f, spec, cfg), integrate_implicit(f, mixed, cfg)};
}

double Frame::orthonormality_residual() const {
  const Eigen::MatrixXd g = vectors.transpose() * vectors;
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

TangentNormalFrames tangent_normal_frames(const ImplicitSurfaceSpec& spec, std::span<const double> point,
                                          double surface_tol, double independence_tol) {
  spec.validate();
  const int m = spec.m;
  const int k = spec.codimension();
  if (static_cast<int>(point.size()) != m) throw std::invalid_argument("point dimension must equal m");
  std::array<Vec, kMaxGridDim> grads{};
  std::vector<Multivector<double>> gv;
  for (int j = 0; j < k; ++j) {
    const double v = spec.phases[j].evaluate(point);
    if (std::abs(v) > surface_tol)
      throw std::invalid_argument("point is not on the surface (|phi_" + std::to_string(j + 1) + "| = " +
                                  std::to_string(std::abs(v)) + ")");
    Multivector<double> g(m);
    for (int i = 0; i < m; ++i) {
      grads[j][i] = partial(spec.phases[j], 0, i).evaluate(point);
      g.add_term(Blade{1} << i, grads[j][i]);
    }
    gv.push_back(std::move(g));
  }
  if (norm(wedge_vectors<double>(std::span<const Multivector<double>>(gv), 1.0)) <= independence_tol)
    throw IndependenceError("phase gradients are dependent at " + point_string(point.data(), m));
  std::array<Vec, kMaxGridDim> basis{};
  if (!build_frames(grads, k, m, 1e-12, basis))
    throw IndependenceError("phase gradients are dependent at " + point_string(point.data(), m));
  TangentNormalFrames out{Frame{Eigen::MatrixXd(m, k)}, Frame{Eigen::MatrixXd(m, m - k)}};
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < m; ++a) {
      if (j < k)
        out.normal.vectors(a, j) = basis[j][a];
      else
        out.tangent.vectors(a, j - k) = basis[j][a];
    }
  return out;
}

namespace {

Multivector<double> tangential_dirac_side(const MvPoly& f, const ImplicitSurfaceSpec& spec,
                                          std::span<const double> point, bool left) {
  const int m = spec.m;
  if (f.dimension() != m) throw std::invalid_argument("field dimension must equal m");
  const Frame tangent = tangent_normal_frames(spec, point).tangent;
  std::vector<Multivector<double>> partials;
  for (int i = 0; i < m; ++i) partials.push_back(evaluate(partial(f, 0, i), point));
  Multivector<double> out(m);
  for (int t = 0; t < tangent.size(); ++t) {
    Multivector<double> dir(m);
    Multivector<double> vec(m);
    for (int i = 0; i < m; ++i) {
      dir += partials[i].scaled(tangent.vectors(i, t));
      vec.add_term(Blade{1} << i, tangent.vectors(i, t));
    }
    out += left ? vec * dir : dir * vec;
  }
  return out;
}

}  // namespace

Multivector<double> tangential_dirac(const MvPoly& f, const ImplicitSurfaceSpec& spec, std::span<const double> point) {
  return tangential_dirac_side(f, spec, point, true);
}

Multivector<double> tangential_dirac_right(const MvPoly& f, const ImplicitSurfaceSpec& spec,
                                           std::span<const double> point) {
  return tangential_dirac_side(f, spec, point, false);
}

CauchyResult cauchy_check(const MvPoly& f, const MvPoly& g, const VectorPoly& phi, const ImplicitSurfaceSpec& spec,
                          const QuadratureConfig& cfg) {
  spec.validate(true);
  const int m = spec.m;
  const int k = spec.codimension();
  if (k >= m) throw std::invalid_argument("cauchy_check needs k < m");
  if (f.dimension() != m || g.dimension() != m || phi.dimension() != m || phi.num_vars() != 1)
    throw std::invalid_argument("F, G and phi must live in dimension m");
  const double eps = cfg.resolved_eps(spec.box);
  const Grid grid = make_grid(spec.box, cfg.n);
  const auto phases = compile_phases(spec.phases);
  const CompiledField cut(phi);
  const CompiledMvField cf(f);
  const CompiledMvField cg(g);

  int deg = phi.degree();
  for (const auto& p : spec.phases) deg = std::max(deg, p.degree());
  for (const auto* mv : {&f, &g})
    for (const auto& [b, p] : mv->terms()) deg = std::max(deg, p.degree());
  const int nb = 1 << m;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;

  auto parts = grid_map(grid, cfg.chunks, CauchyPartial{}, [&](const double* x, bool edge, CauchyPartial& acc) {
    thread_local PowerTable table(0, 0);
    thread_local int table_key = -1;
    const int key = m * 64 + deg;
    if (table_key != key) {
      table = PowerTable(m, deg);
      table_key = key;
    }
    table.fill(x);
    PhaseEval pe;
    eval_phases(phases, table, m, eps, pe);
    if (pe.degenerate) {
      acc.dependent = true;
      std::copy(x, x + m, acc.where.begin());
      return;
    }
    if (!pe.active) return;

    const double pv = cut.value(table);
    Vec pg{};
    double pg2 = 0.0;
    for (int i = 0; i < m; ++i) {
      pg[i] = cut.grad[static_cast<std::size_t>(i)](table);
      pg2 += pg[i] * pg[i];
    }
    const double pgn = std::sqrt(pg2);
    const bool inside = pv < 0.0;
    const bool on_cut = pgn > 0.0 && std::abs(pv / pgn) < eps;
    if (!inside && !on_cut) return;

    const Dense b = wedge_of(pe, k, m);
    if (k > 0 && dense_norm(b, nb) < cfg.independence_tol) {
      acc.dependent = true;
      std::copy(x, x + m, acc.where.begin());
      return;
    }
    Dense fv, gv;
    eval_mv(cf, table, -1, fv);
    eval_mv(cg, table, -1, gv);
    Dense contrib_l = dense_zero();
    Dense contrib_r = dense_zero();

    if (inside) {
      std::array<Vec, kMaxGridDim> basis{};
      if (!build_frames(pe.grads, k, m, 1e-12, basis)) {
        acc.dependent = true;
        std::copy(x, x + m, acc.where.begin());
        return;
      }
      std::array<Dense, kMaxGridDim> df, dg;
      for (int i = 0; i < m; ++i) {
        eval_mv(cf, table, i, df[i]);
        eval_mv(cg, table, i, dg[i]);
      }
      Dense f_par = dense_zero();  // F d_par
      Dense g_par = dense_zero();  // d_par G
      for (int t = k; t < m; ++t) {
        Dense dft = dense_zero();
        Dense dgt = dense_zero();
        for (int i = 0; i < m; ++i) {
          const double c = basis[t][i];
          if (c == 0.0) continue;
          for (int a = 0; a < nb; ++a) {
            dft[a] += c * df[i][a];
            dgt[a] += c * dg[i][a];
          }
        }
        const Dense et = dense_vector(basis[t].data(), m);
        const Dense r1 = dense_mul(dft, et, nb);
        const Dense r2 = dense_mul(et, dgt, nb);
        for (int a = 0; a < nb; ++a) {
          f_par[a] += r1[a];
          g_par[a] += r2[a];
        }
      }
      const Dense t1 = dense_mul(dense_mul(f_par, b, nb), gv, nb);
      const Dense t2 = dense_mul(dense_mul(fv, b, nb), g_par, nb);
      for (int a = 0; a < nb; ++a) contrib_l[a] = pe.weight * (t1[a] + sign * t2[a]);
    }
    if (on_cut) {
      const Dense nb_wedge = [&] {
        Dense v = dense_vector(pg.data(), m);
        for (int j = 0; j < k; ++j) v = dense_wedge_vector(v, pe.grads[j].data(), m);
        return v;
      }();
      if (dense_norm(nb_wedge, nb) < cfg.independence_tol) {
        acc.transversal_failure = true;
        std::copy(x, x + m, acc.where.begin());
        return;
      }
      const double w = pe.weight * mollifier(pv / pgn, eps) / pgn;
      const Dense r = dense_mul(dense_mul(fv, nb_wedge, nb), gv, nb);
      for (int a = 0; a < nb; ++a) contrib_r[a] = w * r[a];
    }
    const double mag = std::max(dense_norm(contrib_l, nb), dense_norm(contrib_r, nb));
    acc.peak = std::max(acc.peak, mag);
    if (edge) acc.boundary_peak = std::max(acc.boundary_peak, mag);
    for (int a = 0; a < nb; ++a) {
      acc.lhs[a] += contrib_l[a];
      acc.rhs[a] += contrib_r[a];
    }
  });

  double peak = 0.0;
  double boundary_peak = 0.0;
  Dense lhs = dense_zero();
  Dense rhs = dense_zero();
  for (const auto& p : parts) {
    if (p.dependent)
      throw IndependenceError("phase gradients are dependent near " + point_string(p.where.data(), m));
    if (p.transversal_failure)
      throw TransversalityError("cut is not transversal to the surface near " + point_string(p.where.data(), m));
    peak = std::max(peak, p.peak);
    boundary_peak = std::max(boundary_peak, p.boundary_peak);
    for (int a = 0; a < nb; ++a) {
      lhs[a] += p.lhs[a];
      rhs[a] += p.rhs[a];
    }
  }
  if (boundary_peak > cfg.boundary_rel_tol * peak)
    throw BoundaryError("integration domain reaches the quadrature box boundary");
  for (int a = 0; a < nb; ++a) {
    lhs[a] *= grid.cell_volume;
    rhs[a] *= grid.cell_volume;
  }
  CauchyResult res{to_multivector(lhs, m), to_multivector(rhs, m), 0.0};
  Dense diff;
  for (int a = 0; a < nb; ++a) diff[a] = lhs[a] - rhs[a];
  res.residual = dense_norm(diff, nb) / std::max({dense_norm(lhs, nb), dense_norm(rhs, nb), 1.0});
  return res;
}

MCEstimate mc_stiefel_integral(const VectorPoly& p, int m, int k, std::uint64_t samples, std::uint64_t seed,
                               int partitions) {
  if (k < 1 || k > m) throw std::invalid_argument("mc_stiefel_integral: need 1 <= k <= m");
  if (p.dimension() != m || p.num_vars() != k)
    throw std::invalid_argument("polynomial must have k vector variables of dimension m");
  if (samples < 2) throw std::invalid_argument("mc_stiefel_integral: need at least 2 samples");
  if (partitions < 1) throw std::invalid_argument("mc_stiefel_integral: need at least one partition");

  struct Stats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  const CompiledPoly cp(p);
  const int deg = std::max(p.degree(), 0);
  std::vector<Stats> stats(static_cast<std::size_t>(partitions));
  std::atomic<int> next{0};
  auto worker = [&] {
    PowerTable table(m * k, deg);
    std::vector<double> x(static_cast<std::size_t>(m * k));
    for (int part = next++; part < partitions; part = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(part)};
      std::mt19937_64 rng(seq);
      const std::uint64_t count = samples / partitions + (static_cast<std::uint64_t>(part) < samples % partitions);
      Stats& s = stats[static_cast<std::size_t>(part)];
      for (std::uint64_t i = 0; i < count; ++i) {
        const Frame fr = haar_sample_stiefel(m, k, rng);
        for (int j = 0; j < k; ++j)
          for (int c = 0; c < m; ++c) x[static_cast<std::size_t>(j * m + c)] = fr.vectors(c, j);
        table.fill(x.data());
        const double v = cp(table);
        ++s.n;
        const double delta = v - s.mean;
        s.mean += delta / static_cast<double>(s.n);
        s.m2 += delta * (v - s.mean);
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int nthreads = std::min<int>(static_cast<int>(hw), partitions);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Stats total;
  for (const auto& s : stats) {
    if (s.n == 0) continue;
    const double n = static_cast<double>(total.n + s.n);
    const double delta = s.mean - total.mean;
    total.mean += delta * static_cast<double>(s.n) / n;
    total.m2 += s.m2 + delta * delta * static_cast<double>(total.n) * static_cast<double>(s.n) / n;
    total.n += s.n;
  }
  double volume = 1.0;
  for (int j = 1; j <= k; ++j) volume *= sphere_area(m - j + 1).to_double();
  const double var = total.m2 / static_cast<double>(total.n - 1);
  return {volume * total.mean, volume * std::sqrt(var / static_cast<double>(total.n)), total.n, seed};
}

BlockOrthogonalResult block_orthogonal_check(const Eigen::MatrixXd& rows, int k) {
  const int m = static_cast<int>(rows.rows());
  if (rows.cols() != m || k < 1 || k >= m || m > kMaxDimension)
    throw std::invalid_argument("block_orthogonal_check: need square M and 1 <= k < m");
  const Eigen::MatrixXd w = rows.inverse();
  auto wedge_norm = [m](const Eigen::MatrixXd& vs) {  // columns
    std::vector<Multivector<double>> mv;
    for (int j = 0; j < vs.cols(); ++j) {
      Multivector<double> v(m);
      for (int i = 0; i < m; ++i) v.add_term(Blade{1} << i, vs(i, j));
      mv.push_back(std::move(v));
    }
    return norm(wedge_vectors<double>(std::span<const Multivector<double>>(mv), 1.0));
  };
  BlockOrthogonalResult r;
  for (int j = 0; j < k; ++j)
    for (int l = k; l < m; ++l) {
      const double c = w.col(j).dot(w.col(l)) / (w.col(j).norm() * w.col(l).norm());
      r.inverse_orthogonality = std::max(r.inverse_orthogonality, std::abs(c));
    }
  const Eigen::MatrixXd vt = rows.transpose();
  const double v1 = wedge_norm(vt.leftCols(k));
  const double v2 = wedge_norm(vt.rightCols(m - k));
  const double w1 = wedge_norm(w.leftCols(k));
  const double w2 = wedge_norm(w.rightCols(m - k));
  const double det = std::abs(rows.determinant());
  r.determinant_split = std::abs(det - v1 * v2) / std::max(det, 1.0);
  r.reciprocal_volumes = std::max(std::abs(v1 * w1 - 1.0), std::abs(v2 * w2 - 1.0));
  return r;
}

}  // namespace distint
