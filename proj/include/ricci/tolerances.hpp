#pragma once

// Pinned numeric policy.  Every rank decision, defect threshold and verdict
// margin in the library goes through these four constants.

namespace ricci {

/// Jacobi / derivation defect threshold.
inline constexpr double tol_structure = 1e-10;

/// Relative singular-value cutoff for every rank / nullspace decision.
inline constexpr double tol_rank = 1e-9;

/// Soliton detection threshold, relative to ||Ric||.
inline constexpr double tol_soliton = 1e-8;

/// Verdict margin factor: tol_verdict = factor * max(|lhs|, |rhs|, 1).
/// The environment variable RICCI_STAB_TOL overrides the factor.
inline constexpr double tol_verdict_factor = 1e-6;

/// tol_verdict for a bound pair, honoring RICCI_STAB_TOL.
double verdict_tolerance(double lhs, double rhs);

} // namespace ricci
