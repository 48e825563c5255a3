#pragma once

#include <Eigen/Dense>

namespace ricci {

struct SymEigenResult {
  Eigen::VectorXd values;   ///< eigenvalues, ascending
  Eigen::MatrixXd vectors;  ///< orthonormal columns, vectors.col(k) <-> values[k]
  int sweeps = 0;           ///< sweeps actually performed
  double off_final = 0.0;   ///< off-diagonal Frobenius norm at exit
  bool converged = false;
};

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Sweeps run row-cyclically over the fixed pair order
/// (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1) and stop once the
/// off-diagonal Frobenius norm falls below 1e-12 * ||mat||_F, or after 50
/// sweeps.  The fixed order (together with the dispatch-invariant kernels)
/// makes the output bitwise reproducible run to run.
///
/// Throws std::invalid_argument on non-symmetric input.
SymEigenResult sym_eigen(const Eigen::MatrixXd& mat);

} // namespace ricci
