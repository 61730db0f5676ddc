// Numerical integration over implicit surfaces and Stiefel manifolds.
//
// Surface integrals use a tensor-grid Riemann sum with mollified deltas;
// Stiefel integrals are estimated by Monte Carlo over Haar-distributed frames.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "distint/clifford.hpp"
#include "distint/polyalg.hpp"

namespace distint {

struct GeomintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Gradients of the phases are (nearly) dependent at a surface point.
struct IndependenceError : GeomintError {
  using GeomintError::GeomintError;
};
/// The mollified surface reaches the boundary of the quadrature box.
struct BoundaryError : GeomintError {
  using GeomintError::GeomintError;
};
/// grad phi ^ grad phi_1 ^ ... ^ grad phi_k vanishes where the cut meets Sigma.
struct TransversalityError : GeomintError {
  using GeomintError::GeomintError;
};
/// Phase mixing matrix is (nearly) singular on the box.
struct DeterminantError : GeomintError {
  using GeomintError::GeomintError;
};

/// Axis-aligned box prod_i [lower_i, upper_i].
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box cube(int m, double a, double b) {
    return {std::vector<double>(static_cast<std::size_t>(m), a), std::vector<double>(static_cast<std::size_t>(m), b)};
  }
  int dimension() const { return static_cast<int>(lower.size()); }
};

/// Sigma = {phi_1 = ... = phi_k = 0} in R^m, integrated over `box`.
struct ImplicitSurfaceSpec {
  int m = 0;
  std::vector<VectorPoly> phases;
  Box box;

  int codimension() const { return static_cast<int>(phases.size()); }
  /// Throws std::invalid_argument unless 0 <= k <= m and all shapes agree.
  void validate(bool allow_empty = false) const;
};

enum class Kernel { cosine };

struct QuadratureConfig {
  int n = 201;                    // cell-centred grid points per axis
  double eps = 0.0;               // mollifier half-width; <= 0 selects 6 * spacing
  double independence_tol = 1e-6;
  double boundary_rel_tol = 1e-6; // allowed boundary-layer weight relative to peak
  Kernel kernel = Kernel::cosine;
  int chunks = 64;                // fixed reduction partition count

  /// Effective eps for a box; throws std::invalid_argument on bad settings.
  double resolved_eps(const Box& box) const;
};

/// Cosine bump of half-width eps with unit mass.
double mollifier(double t, double eps);

using ScalarField = std::function<double(std::span<const double>)>;

/// sum over the grid of prod_j delta_eps(phi_j) |grad phi_1 ^ ... ^ grad phi_k| f dV.
double integrate_implicit(const ScalarField& f, const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg = {});
double integrate_implicit(const VectorPoly& f, const ImplicitSurfaceSpec& spec, const QuadratureConfig& cfg = {});

/// Same quadrature with the k-vector grad phi_1 ^ ... ^ grad phi_k in place of its norm.
Multivector<double> integrate_oriented(const ScalarField& f, const ImplicitSurfaceSpec& spec,
                                       const QuadratureConfig& cfg = {});
Multivector<double> integrate_oriented(const VectorPoly& f, const ImplicitSurfaceSpec& spec,
                                       const QuadratureConfig& cfg = {});

/// Non-oriented integral with the original phases and with psi_l = sum_j alpha[l][j] phi_j.
std::pair<double, double> phase_rescale_invariance(const ImplicitSurfaceSpec& spec,
                                                   const std::vector<std::vector<VectorPoly>>& alpha,
                                                   const VectorPoly& f, const QuadratureConfig& cfg = {},
                                                   double det_tol = 1e-8);

/// Orthonormal columns in R^m.
struct Frame {
  Eigen::MatrixXd vectors;

  int dimension() const { return static_cast<int>(vectors.rows()); }
  int size() const { return static_cast<int>(vectors.cols()); }
  /// max_{i,j} |<v_i, v_j> - delta_ij|.
  double orthonormality_residual() const;
};

struct TangentNormalFrames {
  Frame normal;   // orthonormalized phase gradients
  Frame tangent;  // orthonormal complement
};

/// Frames at a point of Sigma (|phi_j(point)| <= surface_tol).
TangentNormalFrames tangent_normal_frames(const ImplicitSurfaceSpec& spec, std::span<const double> point,
                                          double surface_tol = 1e-8, double independence_tol = 1e-6);

/// d_par F = sum_j eps_j <eps_j, d_x> F at a point of Sigma.
Multivector<double> tangential_dirac(const MvPoly& f, const ImplicitSurfaceSpec& spec, std::span<const double> point);
/// F d_par = sum_j (<eps_j, d_x> F) eps_j.
Multivector<double> tangential_dirac_right(const MvPoly& f, const ImplicitSurfaceSpec& spec,
                                           std::span<const double> point);

struct CauchyResult {
  Multivector<double> lhs;
  Multivector<double> rhs;
  double residual = 0.0;
};

/// Both sides of the Cauchy formula on C = Sigma cap {phi < 0}:
///   lhs = int H(-phi) prod delta(phi_j) [(F d_par) B G + (-1)^k F B (d_par G)]
///   rhs = int delta(phi) prod delta(phi_j) F (grad phi ^ B) G,
/// B = grad phi_1 ^ ... ^ grad phi_k. k = 0 is the classical Cauchy formula.
CauchyResult cauchy_check(const MvPoly& f, const MvPoly& g, const VectorPoly& phi, const ImplicitSurfaceSpec& spec,
                          const QuadratureConfig& cfg = {});

/// Haar-distributed point of St(m, k): Q factor of a Gaussian m x k matrix, diag(R) > 0.
template <class Rng>
Frame haar_sample_stiefel(int m, int k, Rng& rng);

struct MCEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// (prod_j A_{m-j+1}) * E_Haar[P]; partition p draws from mt19937_64(seed_seq{seed, p}).
MCEstimate mc_stiefel_integral(const VectorPoly& p, int m, int k, std::uint64_t samples, std::uint64_t seed,
                               int partitions = 16);

/// Residuals of the three block-orthogonality identities for M with rows v_1..v_m,
/// rows 1..k orthogonal to rows k+1..m.
struct BlockOrthogonalResult {
  double inverse_orthogonality = 0.0;  // max |<w_j, w_{k+l}>|
  double determinant_split = 0.0;      // | |det M| - |v_1^..^v_k| |v_{k+1}^..^v_m| |
  double reciprocal_volumes = 0.0;     // max of | |V_1||W_1| - 1 |, | |V_2||W_2| - 1 |
  bool holds(double tol) const {
    return inverse_orthogonality <= tol && determinant_split <= tol && reciprocal_volumes <= tol;
  }
};
BlockOrthogonalResult block_orthogonal_check(const Eigen::MatrixXd& rows, int k);

/// Random M whose first k rows are orthogonal to the last m-k rows.
template <class Rng>
Eigen::MatrixXd random_block_orthogonal(int m, int k, Rng& rng);

// ---------------------------------------------------------------------------

template <class Rng>
Frame haar_sample_stiefel(int m, int k, Rng& rng) {
  if (k < 1 || k > m) throw std::invalid_argument("haar_sample_stiefel: need 1 <= k <= m");
  std::normal_distribution<double> normal;
  for (;;) {
    Eigen::MatrixXd a(m, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < m; ++i) a(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    bool singular = false;
    for (int j = 0; j < k; ++j) singular = singular || std::abs(r(j, j)) < 1e-12;
    if (singular) continue;
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, k);
    for (int j = 0; j < k; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return Frame{std::move(q)};
  }
}

template <class Rng>
Eigen::MatrixXd random_block_orthogonal(int m, int k, Rng& rng) {
  if (k < 1 || k >= m) throw std::invalid_argument("random_block_orthogonal: need 1 <= k < m");
  const Frame q = haar_sample_stiefel(m, m, rng);
  std::normal_distribution<double> normal;
  auto mix = [&](int rows) {
    Eigen::MatrixXd a(rows, rows);
    do {
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) a(i, j) = normal(rng);
    } while (std::abs(a.determinant()) < 1e-3);
    return a;
  };
  Eigen::MatrixXd out(m, m);
  out.topRows(k) = mix(k) * q.vectors.leftCols(k).transpose();
  out.bottomRows(m - k) = mix(m - k) * q.vectors.rightCols(m - k).transpose();
  return out;
}

}  // namespace distint
