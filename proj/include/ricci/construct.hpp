#pragma once

#include "ricci/soliton.hpp"

#include <map>

namespace ricci {

/// A set of skew-symmetric maps J_α on v ≅ ℝ^q encoding a two-step bracket
/// into z ≅ ℝ^p via ⟨J_α u, w⟩ = ⟨z_α, [u, w]⟩.
struct JMapSet {
  int p = 0;
  int q = 0;
  std::vector<Eigen::MatrixXd> J;
};

/// Throws unless every J_α is q×q and skew-symmetric (tol 1e−12).
void validate_jmaps(const JMapSet& jm);

/// max_{α,β} ‖J_αJ_β + J_βJ_α + 2δ_{αβ}·id‖ — zero for Clifford families.
double clifford_residual(const JMapSet& jm);

/// True when every bracket is a multiple of a single basis vector and, for
/// each target vector, the contributing index pairs are pairwise disjoint.
bool is_nice_basis(const MetricLieAlgebra& alg);

struct ExtensionSpec {
  MetricLieAlgebra base;
  SolitonReport base_report;
  DerivationSet a_maps;
  Eigen::MatrixXd gram_a;      ///< ⟨A_α,A_β⟩ = −(1/λ)·tr(A_αA_β)
  double predicted_lambda = 0.0;
  Eigen::MatrixXd predicted_D; ///< block diag(D_n − ad_H, 0) on the extension
};

MetricLieAlgebra abelian(int n, double lambda = -1.0);

MetricLieAlgebra two_step_from_jmaps(const JMapSet& jm);

/// Generalized Heisenberg algebra h_{p,q} built from unit complex /
/// anticommuting-pair / quaternionic J-maps; q = k·(module dimension).
MetricLieAlgebra heisenberg_like(int p, int copies);

/// Free two-step nilpotent algebra on q generators: ℝ^q ⊕ so(q).
MetricLieAlgebra free_two_step(int q);

/// Validates the maps (symmetric, commuting, derivations), detects the base
/// soliton, and fills the Gram matrix and predictions.
ExtensionSpec make_extension_spec(const MetricLieAlgebra& base,
                                  const std::vector<Eigen::MatrixXd>& a_maps);

/// Solvable extension n ⋊ a carrying the soliton inner product (the a-block
/// is orthonormalized internally, so the result lives in an orthonormal
/// basis with identity Gram).
MetricLieAlgebra lauret_extension(const ExtensionSpec& spec);

/// One-dimensional Einstein extension with ad_A = D/√(tr D).
MetricLieAlgebra einstein_rank_one_extension(const MetricLieAlgebra& base);

/// ℝⁿ ⋊ ℝᵐ with ad of the α-th a-generator = diag(A.col(α)); columns of A
/// must be orthonormal, which realizes the soliton Gram at λ = −1.
MetricLieAlgebra diagonal_abelian_solvsoliton(const Eigen::MatrixXd& A);

/// Closed-form sectional curvature of diagonal_abelian_solvsoliton(A) on the
/// plane spanned by u, v (coordinates: n ambient entries then m a-entries).
double abelian_sectional_oracle(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v);

/// Named example algebras.  Parameters come either inline ("abelian(4)",
/// "lauret_curve(0.5)") or through the params map ({"t", 0.5}, {"n", 4},
/// {"q", 3}, {"p", 3}); inline arguments win.
MetricLieAlgebra catalog(const std::string& name,
                         const std::map<std::string, double>& params = {});

/// Names accepted by catalog(), with parameter placeholders.
std::vector<std::string> catalog_names();

} // namespace ricci
