#pragma once

#include <cstdint>
#include <utility>

#include "ricci/algebra.hpp"

namespace ricci {

/// Curvature data of the left-invariant metric carried by an algebra
/// (orthonormal frame; the Gram was normalized away at load).
struct CurvaturePackage {
  int n = 0;
  std::string source_label;
  std::vector<Eigen::MatrixXd> nabla; ///< nabla[i].col(j) = components of ∇_{e_i} e_j
  std::vector<double> riem;           ///< R(e_i,e_j,e_k,e_l), dense n^4, row-major
  Eigen::MatrixXd ric;
  double scal = 0.0;

  [[nodiscard]] double riem_at(int i, int j, int k, int l) const {
    return riem[static_cast<std::size_t>(((i * n + j) * n + k)) * n + l];
  }
};

/// nabla only (2∇_U V = ad_U V − ad*_U V − ad*_V U).
std::vector<Eigen::MatrixXd> connection(const MetricLieAlgebra& alg);

/// Full package: connection, Riemann, Ricci, scalar.
/// R(T,U,V,W) = <∇_T V, ∇_U W> − <∇_U V, ∇_T W> − <∇_[T,U] V, W>;
/// ric_ij = Σ_p R(e_i, e_p, e_p, e_j); this index order satisfies
/// R̊(gram) = ric and sec(e1,e2) = −3/4 on nil3 (pinned by tests).
CurvaturePackage curvature(const MetricLieAlgebra& alg);

/// R(u,v,v,u) / (|u|²|v|² − <u,v>²).  Throws on a degenerate plane.
double sectional(const CurvaturePackage& pkg, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v);

struct SectionalScan {
  /// (i, j, sec(e_i,e_j)) for every coordinate plane i<j (0-based).
  std::vector<std::tuple<int, int, double>> coordinate_plane_values;
  double sampled_min = 0.0;
  double sampled_max = 0.0;
  /// Extreme eigenvalues (min, max) of the curvature operator on Λ²; the
  /// max is a sound upper bound for every sectional value.
  std::pair<double, double> lambda2_eig_bounds{0.0, 0.0};
  bool positive_plane_detected = false;
};

inline constexpr std::uint64_t kScanSeed = 0x5EED;
inline constexpr int kScanSamples = 4096;

/// Deterministic scan: all coordinate planes plus `samples` pseudorandom
/// planes from the given seed; extrema cover both sets.
SectionalScan sectional_scan(const CurvaturePackage& pkg, int samples = kScanSamples,
                             std::uint64_t seed = kScanSeed);

/// Curvature operator on Λ²: P×P matrix (P = n(n-1)/2) over the orthonormal
/// e_i∧e_j (i<j) basis whose Rayleigh quotients are the sectional values.
Eigen::MatrixXd lambda2_matrix(const CurvaturePackage& pkg);

/// Two-step Ricci via the structure-constant sums (Eberlein): in the split
/// basis, Ric|_v = ½ Σ_α J_α², Ric|_z = −¼ tr(J_α J_β), mixed block zero;
/// returned in ambient coordinates.  Throws unless the split is a genuine
/// two-step split (z ⊇ [g,g] central, v the orthogonal complement).
Eigen::MatrixXd ricci_two_step_oracle(const MetricLieAlgebra& alg, const Eigen::MatrixXd& v_basis,
                                      const Eigen::MatrixXd& z_basis);

struct MomentMapRicci {
  Eigen::MatrixXd ric_mm;
  double scal_mm = 0.0;
};

/// Ricci via the moment map of the GL(n)-representation on bracket space:
/// ric_mm = m(μ)/4 with <m(μ),X> = <π(X)μ, μ>, scal_mm = −¼|μ|².
/// Valid (and enforced) only for nilpotent algebras.
MomentMapRicci ricci_moment_map_oracle(const MetricLieAlgebra& alg);

} // namespace ricci
