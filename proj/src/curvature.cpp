#include "ricci/curvature.hpp"

#include <cmath>
#include <stdexcept>

#include "ricci/sym_eigen.hpp"
#include "ricci/tolerances.hpp"

namespace ricci {

// ---------------------------------------------------------------- connection

std::vector<Eigen::MatrixXd> connection(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  std::vector<Eigen::MatrixXd> adT(n);
  for (int i = 0; i < n; ++i) adT[i] = alg.ad(i).transpose();

  // 2 nabla_U V = ad_U V - ad*_U V - ad*_V U  (orthonormal frame: ad* = ad^T)
  std::vector<Eigen::MatrixXd> nabla(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      nabla[i].col(j) = 0.5 * (alg.ad(i).col(j) - adT[i].col(j) - adT[j].col(i));
  return nabla;
}

// ----------------------------------------------------------------- curvature

CurvaturePackage curvature(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  CurvaturePackage pkg;
  pkg.n = n;
  pkg.source_label = alg.label();
  pkg.nabla = connection(alg);

  // inner products <nabla_i e_k, nabla_j e_l> in one Gram matrix
  Eigen::MatrixXd C(n, n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) C.col(i * n + k) = pkg.nabla[i].col(k);
  const Eigen::MatrixXd G = C.transpose() * C;

  // nabla along [e_i, e_j], i<j (antisymmetric in i,j)
  std::vector<Eigen::MatrixXd> nabla_br(n * n, Eigen::MatrixXd());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd b = alg.bracket(i, j);
      Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
      for (int m = 0; m < n; ++m)
        if (b[m] != 0.0) M += b[m] * pkg.nabla[m];
      nabla_br[i * n + j] = M;
    }

  pkg.riem.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  auto riem_ref = [&](int i, int j, int k, int l) -> double& {
    return pkg.riem[static_cast<std::size_t>(((i * n + j) * n + k)) * n + l];
  };
  // R(T,U,V,W) = <nab_T V, nab_U W> - <nab_U V, nab_T W> - <nab_[T,U] V, W>
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::MatrixXd& M = nabla_br[i * n + j];
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double val = G(i * n + k, j * n + l) - G(j * n + k, i * n + l) - M(l, k);
          riem_ref(i, j, k, l) = val;
          riem_ref(j, i, k, l) = -val;
        }
    }

  pkg.ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int p = 0; p < n; ++p) s += pkg.riem_at(i, p, p, j);
      pkg.ric(i, j) = s;
    }
  pkg.ric = (0.5 * (pkg.ric + pkg.ric.transpose())).eval();
  pkg.scal = pkg.ric.trace();
  return pkg;
}

// ----------------------------------------------------------------- sectional

double sectional(const CurvaturePackage& pkg, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v) {
  const int n = pkg.n;
  if (u.size() != n || v.size() != n)
    throw std::invalid_argument("sectional: vector has wrong size");
  const double area = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  if (area <= 1e-12 * u.squaredNorm() * v.squaredNorm() || area == 0.0)
    throw std::invalid_argument("sectional: degenerate plane");

  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (v[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (v[k] == 0.0) continue;
        for (int l = 0; l < n; ++l)
          num += u[i] * v[j] * v[k] * u[l] * pkg.riem_at(i, j, k, l);
      }
    }
  }
  return num / area;
}

// ------------------------------------------------------------------- lambda2

Eigen::MatrixXd lambda2_matrix(const CurvaturePackage& pkg) {
  const int n = pkg.n;
  const int P = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(P);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  // M_(ij),(kl) = R(e_i,e_j,e_l,e_k): then for w = u^v (w_ij = u_i v_j - u_j v_i)
  // w^T M w = R(u,v,v,u), so Rayleigh quotients of M are sectional values.
  Eigen::MatrixXd M(P, P);
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b)
      M(a, b) = pkg.riem_at(pairs[a].first, pairs[a].second, pairs[b].second, pairs[b].first);
  return (0.5 * (M + M.transpose())).eval();
}

namespace {

// splitmix64 + Box-Muller: self-contained so scans do not depend on any
// library's distribution internals.
struct ScanRng {
  std::uint64_t state;
  explicit ScanRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

} // namespace

SectionalScan sectional_scan(const CurvaturePackage& pkg, int samples, std::uint64_t seed) {
  const int n = pkg.n;
  SectionalScan scan;
  if (n < 2) return scan;

  const Eigen::MatrixXd M = lambda2_matrix(pkg);
  const int P = static_cast<int>(M.rows());

  double lo = 0.0, hi = 0.0;
  bool first = true;
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const double val = M(a, a); // sec(e_i, e_j)
      scan.coordinate_plane_values.emplace_back(i, j, val);
      if (first || val < lo) lo = val;
      if (first || val > hi) hi = val;
      first = false;
    }

  ScanRng rng(seed);
  Eigen::VectorXd u(n), v(n), w(P);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) u[i] = rng.gaussian();
    for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++c) w[c] = u[i] * v[j] - u[j] * v[i];
    const double nw2 = w.squaredNorm();
    if (nw2 <= 1e-12 * u.squaredNorm() * v.squaredNorm() || nw2 == 0.0) continue;
    const double val = w.dot(M * w) / nw2;
    if (val < lo) lo = val;
    if (val > hi) hi = val;
  }
  scan.sampled_min = lo;
  scan.sampled_max = hi;

  const SymEigenResult eig = sym_eigen(M);
  scan.lambda2_eig_bounds = {eig.values[0], eig.values[P - 1]};

  const double scale = std::max({1.0, std::abs(eig.values[0]), std::abs(eig.values[P - 1])});
  scan.positive_plane_detected = (hi > 1e-10 * scale);
  return scan;
}

// -------------------------------------------------------- two-step oracle

Eigen::MatrixXd ricci_two_step_oracle(const MetricLieAlgebra& alg, const Eigen::MatrixXd& v_basis,
                                      const Eigen::MatrixXd& z_basis) {
  const int n = alg.dim();
  const int p = static_cast<int>(v_basis.cols());
  const int q = static_cast<int>(z_basis.cols());
  if (v_basis.rows() != n || (q > 0 && z_basis.rows() != n) || p + q != n)
    throw std::invalid_argument("ricci_two_step_oracle: split has wrong shape");

  Eigen::MatrixXd B(n, n);
  B.leftCols(p) = v_basis;
  B.rightCols(q) = z_basis;
  if ((B.transpose() * B - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("ricci_two_step_oracle: split basis not orthonormal");

  // z must be central, and all v-brackets must land in z
  for (int al = 0; al < q; ++al)
    if ((alg.ad(Eigen::VectorXd(z_basis.col(al)))).norm() > tol_structure)
      throw std::invalid_argument("ricci_two_step_oracle: not two-step (z not central)");
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      const Eigen::VectorXd br = alg.bracket(v_basis.col(a), v_basis.col(b));
      if ((br - z_basis * (z_basis.transpose() * br)).norm() > tol_structure)
        throw std::invalid_argument("ricci_two_step_oracle: not two-step ([v,v] not in z)");
    }

  // J_alpha on v: <v_a, J_alpha v_b> = <z_alpha, [v_b, v_a]>
  std::vector<Eigen::MatrixXd> J(q, Eigen::MatrixXd::Zero(p, p));
  for (int al = 0; al < q; ++al)
    for (int b = 0; b < p; ++b)
      for (int a = 0; a < p; ++a)
        J[al](a, b) = z_basis.col(al).dot(alg.bracket(v_basis.col(b), v_basis.col(a)));

  Eigen::MatrixXd ric_v = Eigen::MatrixXd::Zero(p, p);
  for (int al = 0; al < q; ++al) ric_v += 0.5 * (J[al] * J[al]);
  Eigen::MatrixXd ric_z = Eigen::MatrixXd::Zero(q, q);
  for (int al = 0; al < q; ++al)
    for (int be = 0; be < q; ++be) ric_z(al, be) = -0.25 * (J[al] * J[be]).trace();

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  if (p > 0) out += v_basis * ric_v * v_basis.transpose();
  if (q > 0) out += z_basis * ric_z * z_basis.transpose();
  return (0.5 * (out + out.transpose())).eval();
}

// ------------------------------------------------------ moment-map oracle

MomentMapRicci ricci_moment_map_oracle(const MetricLieAlgebra& alg) {
  const StructureReport rep = structure_report(alg);
  if (!rep.is_nilpotent)
    throw std::invalid_argument("ricci_moment_map_oracle: algebra not nilpotent");

  const int n = alg.dim();
  // mu(i,j)^k for all ordered (i,j) via the ad matrices
  auto mu = [&](int i, int j, int k) -> double { return alg.ad(i)(k, j); };

  MomentMapRicci out;
  out.ric_mm = Eigen::MatrixXd::Zero(n, n);

  double mu2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) mu2 += mu(i, j, k) * mu(i, j, k);
  out.scal_mm = -0.25 * (2.0 * mu2);

  // <m(mu), E_ab> = <pi(E_ab) mu, mu>, inner product 2 sum_{i<j,k}
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            const double m = mu(i, j, k);
            if (m == 0.0) continue;
            double pi = 0.0;
            if (k == a) pi += mu(i, j, b);
            if (i == b) pi -= mu(a, j, k);
            if (j == b) pi -= mu(i, a, k);
            acc += pi * m;
          }
      out.ric_mm(a, b) = 2.0 * acc / 4.0; // m(mu) = 4 Ric
    }
  out.ric_mm = (0.5 * (out.ric_mm + out.ric_mm.transpose())).eval();
  return out;
}

} // namespace ricci
