#pragma once

#include "ricci/curvature.hpp"
#include "ricci/sym_eigen.hpp"

namespace ricci {

/// Orthonormal (Frobenius) basis of symmetric n×n matrices:
/// E_ii for i = 0..n-1, then (E_ij + E_ji)/sqrt(2) for i<j in row-major order.
struct SymBasis {
  int n = 0;
  int N = 0; ///< n(n+1)/2
  std::vector<Eigen::MatrixXd> elements;

  static SymBasis make(int n);

  /// Coordinates of a symmetric matrix in this basis.
  [[nodiscard]] Eigen::VectorXd coordinates(const Eigen::MatrixXd& h) const;

  /// Matrix with the given coordinates.
  [[nodiscard]] Eigen::MatrixXd matrix(const Eigen::VectorXd& coords) const;
};

enum class SymKind { rho, ric_compose, q, weitzenboeck, lambda2 };

const char* sym_kind_name(SymKind kind) noexcept;

/// A self-adjoint operator stored as an explicit symmetric matrix.  For the
/// four Sym² kinds `mat` is N×N over `basis`; for kind lambda2 it is the
/// P×P curvature operator over the orthonormal e_i∧e_j (i<j) basis.
struct SymOperator {
  Eigen::MatrixXd mat;
  SymBasis basis;
  SymKind kind = SymKind::rho;
};

/// h -> R̊h, (R̊h)_ij = R_ipqj h_pq.
SymOperator rho_operator(const CurvaturePackage& pkg);

/// h -> ½(Ric·h + h·Ric), the self-adjoint representative of <Ric∘h, h>.
SymOperator ric_compose_operator(const CurvaturePackage& pkg);

/// q = rho + ric_compose; max eigenvalue = sup_{|h|=1} Q(h).
SymOperator q_operator(const CurvaturePackage& pkg);

/// weitzenboeck = -2·rho + 2·ric_compose.
SymOperator weitzenboeck_operator(const CurvaturePackage& pkg);

/// Curvature operator on Λ² packaged like the others (kind lambda2).
SymOperator lambda2_operator(const CurvaturePackage& pkg);

/// Apply R̊ to one symmetric matrix.
Eigen::MatrixXd apply_rho(const CurvaturePackage& pkg, const Eigen::MatrixXd& h);

/// Spectrum via the cyclic Jacobi solver; eigenvalues ascending.  Throws on
/// non-symmetric input or non-convergence, and verifies the per-pair
/// residual ||mat v - lambda v|| <= 1e-9 ||mat||.
SymEigenResult sym_spectrum(const SymOperator& op);

/// <op(h), h> through basis coordinates; for kind q this is Q(h).
double evaluate_form(const SymOperator& op, const Eigen::MatrixXd& h);

} // namespace ricci
