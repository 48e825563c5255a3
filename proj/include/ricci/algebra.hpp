#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace ricci {

/// One stored bracket [e_i, e_j] = sum_k coeffs[k] e_k, 0-based, i < j.
/// Brackets with j < i are never stored; antisymmetry is structural.
struct Bracket {
  int i = 0;
  int j = 0;
  Eigen::VectorXd coeffs;
};

/// A Lie algebra with an inner product, presented in an orthonormal basis.
///
/// Non-identity Gram matrices are normalized away on construction (Cholesky
/// change of basis), so internally the Gram is always the identity; every
/// curvature formula downstream assumes exactly that.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(int n, std::vector<Bracket> brackets, std::string label = {});

  [[nodiscard]] int dim() const noexcept { return n_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Trailing a-block size for algebras built as semidirect products
  /// (in-memory metadata only; 0 when there is no designated block).
  [[nodiscard]] int a_dim() const noexcept { return a_dim_; }
  void set_a_dim(int m);

  /// Sparse structure constants, i < j, zero brackets pruned.
  [[nodiscard]] const std::vector<Bracket>& brackets() const noexcept { return brackets_; }

  /// [e_i, e_j] for arbitrary i, j (negated when i > j).
  [[nodiscard]] Eigen::VectorXd bracket(int i, int j) const;

  /// [x, y] for arbitrary vectors.
  [[nodiscard]] Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Matrix of ad_x = [x, .].
  [[nodiscard]] Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  [[nodiscard]] const Eigen::MatrixXd& ad(int i) const { return ad_[i]; }

  /// Algebra with every structure constant multiplied by s (same metric).
  [[nodiscard]] MetricLieAlgebra scaled(double s) const;

 private:
  int n_ = 0;
  int a_dim_ = 0;
  std::string label_;
  std::vector<Bracket> brackets_;
  std::vector<Eigen::MatrixXd> ad_; // ad_[i] = matrix of ad_{e_i}
};

/// Symmetric derivations intended for Lauret extensions.
struct DerivationSet {
  std::vector<Eigen::MatrixXd> maps;
  bool symmetric_flag = false; ///< every map self-adjoint w.r.t. the metric
};

struct StructureReport {
  bool is_nilpotent = false;
  int step = 0; ///< length of the lower central series when nilpotent
  bool is_solvable = false;
  bool is_unimodular = false;
  Eigen::MatrixXd derived_subalgebra_basis; ///< orthonormal columns spanning [s,s]
  std::vector<int> lower_central_dims;
  std::vector<int> derived_dims;
};

/// Max over i<j<k of |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|.
double jacobi_defect(const MetricLieAlgebra& alg);

/// Worst Jacobi triple (1-based, for error reporting); defect in `defect`.
std::array<int, 3> worst_jacobi_triple(const MetricLieAlgebra& alg, double& defect);

/// Metric adjoint of ad_x: <ad_star(x) y, z> = <y, [x,z]>.
Eigen::MatrixXd ad_star(const MetricLieAlgebra& alg, const Eigen::VectorXd& x);

/// Max over i<j of |M[e_i,e_j] - [Me_i,e_j] - [e_i,Me_j]|.
double derivation_defect(const MetricLieAlgebra& alg, const Eigen::MatrixXd& M);

StructureReport structure_report(const MetricLieAlgebra& alg);

/// New constants realize G.mu(X,Y) = G mu(G^{-1}X, G^{-1}Y); Gram kept
/// identity (the GL-action absorbs the metric change).  Throws on singular
/// G; the condition number is reported through cond_out when given.
MetricLieAlgebra change_basis(const MetricLieAlgebra& alg, const Eigen::MatrixXd& G,
                              double* cond_out = nullptr);

/// n_alg ⋊ a with [A,X] = A(X), [A,B] = 0, n-brackets inherited; Gram is
/// id ⊕ gram_a, normalized away as usual.  The a-block is recorded.
MetricLieAlgebra semidirect_product(const MetricLieAlgebra& n_alg, const DerivationSet& a,
                                    const Eigen::MatrixXd& gram_a);

/// Mean curvature H in the designated a-block: <H, A> = tr ad_A.
Eigen::VectorXd mean_curvature(const MetricLieAlgebra& alg);

/// Orthonormal (Frobenius) basis of Der(alg), via the nullspace of the
/// linear derivation-defect map, rank cutoff tol_rank.
DerivationSet derivation_space(const MetricLieAlgebra& alg);

/// Orthonormal column basis of the span of `vectors` (relative SVD cutoff
/// tol_rank, raised to `floor` when positive).  The absolute floor matters
/// when the span may consist entirely of roundoff: a relative cutoff alone
/// would promote noise to rank one.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& vectors, double floor = 0.0);

} // namespace ricci
