#include "ricci/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ricci/simd_kernels.hpp"

namespace ricci {

namespace {

constexpr int kMaxSweeps = 50;
constexpr double kOffTolFactor = 1e-12;

// Off-diagonal Frobenius norm of the row-major n x n buffer, summed over
// the two contiguous off-diagonal segments of each row (no cancellation).
double off_norm(const std::vector<double>& a, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = &a[static_cast<std::size_t>(i) * n];
    acc += kernels::sum_squares(row, static_cast<std::size_t>(i));
    acc += kernels::sum_squares(row + i + 1, static_cast<std::size_t>(n - i - 1));
  }
  return std::sqrt(acc);
}

} // namespace

SymEigenResult sym_eigen(const Eigen::MatrixXd& mat) {
  const int n = static_cast<int>(mat.rows());
  if (mat.cols() != n) throw std::invalid_argument("sym_eigen: matrix not square");

  const double scale = mat.norm(); // Frobenius
  const double asym = (mat - mat.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (scale + 1.0))
    throw std::invalid_argument("sym_eigen: matrix not symmetric");

  SymEigenResult res;
  if (n == 0) {
    res.values.resize(0);
    res.vectors.resize(0, 0);
    res.converged = true;
    return res;
  }

  // Row-major working copies: a is the matrix, vt holds the eigenvector
  // estimates as rows (rows of vt = columns of the accumulated V).
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  std::vector<double> vt(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    vt[i * n + i] = 1.0;
    for (int j = 0; j < n; ++j) a[i * n + j] = mat(i, j);
  }

  const double off_tol = kOffTolFactor * scale;
  double off = off_norm(a, n);

  while (res.sweeps < kMaxSweeps && off > off_tol) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;

        // classic symmetric Schur 2x2: pick t = tan(theta) of smaller magnitude
        const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- G^T A G with G the (p,q) rotation [[c, s], [-s, c]].
        // Row pass (contiguous, SIMD kernel), then column pass (strided).
        kernels::apply_rotation(&a[p * n], &a[q * n], static_cast<std::size_t>(n), c, s);
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        // the rotation annihilates (p,q) exactly in exact arithmetic
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;

        // V <- V G, i.e. rotate rows p,q of V^T.
        kernels::apply_rotation(&vt[p * n], &vt[q * n], static_cast<std::size_t>(n), c, s);
      }
    }
    ++res.sweeps;
    off = off_norm(a, n);
  }

  res.off_final = off;
  res.converged = (off <= off_tol);

  // ascending eigenvalue order; ties keep sweep order for determinism
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int i, int j) { return a[i * n + i] < a[j * n + j]; });

  res.values.resize(n);
  res.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = perm[k];
    res.values[k] = a[src * n + src];
    for (int i = 0; i < n; ++i) res.vectors(i, k) = vt[src * n + i];
  }
  return res;
}

} // namespace ricci
