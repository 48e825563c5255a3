#pragma once

#include "ricci/curvature.hpp"
#include "ricci/symtensor.hpp"

namespace ricci {

struct SolitonReport {
  double lambda = 0.0;
  Eigen::MatrixXd D;       ///< Ric − λ·id
  double defect = 0.0;     ///< derivation defect of D at the detected λ
  bool is_soliton = false; ///< defect ≤ 1e−8·‖Ric‖
  bool is_einstein = false;
  double trace_D = 0.0;
};

enum class Verdict { strict, weak, inconclusive, not_applicable };

const char* verdict_name(Verdict v) noexcept;

/// strict iff lhs < rhs − tol; weak iff |lhs−rhs| ≤ tol; else inconclusive,
/// with tol = verdict_tolerance(lhs, rhs).
Verdict classify_verdict(double lhs, double rhs);

struct StabilityCertificate {
  std::string criterion;
  double lhs = 0.0;
  double rhs = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string notes;
};

/// λ* from exact 1-D least squares over the derivation defect:
/// minimize ‖L(Ric) − λ·L(id)‖² (L the linear derivation-defect map,
/// L(id) = −μ), so λ* = −<L(Ric), μ>/|μ|² when μ ≠ 0; abelian convention
/// λ = −1.  D = Ric − λ*·id, defect evaluated at λ*.
SolitonReport detect_soliton(const MetricLieAlgebra& alg);

/// Einstein: max eig R̊ vs −λ.  Otherwise: max eig Q vs ½·tr D.
/// Notes carry the secondary R̊-vs-¼·tr D criterion.  Throws if the
/// report is not a soliton.
StabilityCertificate stability_certificate(const MetricLieAlgebra& alg,
                                           const SolitonReport& report);

/// K from the Λ² upper bound: strict if K ≤ 0 and (n−2)K < ½·tr D − tol;
/// not_applicable when sampling finds a positive sectional value.
StabilityCertificate sectional_certificate(const MetricLieAlgebra& alg,
                                           const SolitonReport& report);

/// ρ₋, ρ₊ < ¼·tr D and ½qρ₋ + (p+1)ρ₊ < tr D (p = dim z, q = dim v).
StabilityCertificate two_step_certificate(const MetricLieAlgebra& alg,
                                          const SolitonReport& report);

/// max eig D vs tr D/(2+√2).
StabilityCertificate extension_heuristic_certificate(const SolitonReport& report);

struct TwoStepRicciBounds {
  double ric_norm_sq = 0.0; ///< |Ric|² after scal = −1 normalization
  double rho_minus = 0.0;
  double rho_plus = 0.0;
  bool rho_minus_ok = false; ///< ρ₋ ≤ |Ric|²
  bool rho_plus_ok = false;  ///< ρ₊ ≤ |Ric|²
  bool norm_lower_ok = false; ///< |Ric|² ≥ 1/p + 4/q
};

/// Lemma-style bounds checked after rescaling to scal = −1.
TwoStepRicciBounds two_step_ricci_bounds(const MetricLieAlgebra& alg);

enum class NormalizeKind { scal, lambda };

/// Scale structure constants by s (curvature scales by s²) so that scal or
/// λ hits the target.  Throws when the target is unachievable.
MetricLieAlgebra normalize(const MetricLieAlgebra& alg, NormalizeKind kind, double target);

/// Orthonormal two-step split (v = complement, z = derived subalgebra).
/// Throws unless the algebra is two-step nilpotent (step exactly 2).
struct TwoStepSplit {
  Eigen::MatrixXd v;
  Eigen::MatrixXd z;
};
TwoStepSplit two_step_split(const MetricLieAlgebra& alg);

} // namespace ricci
