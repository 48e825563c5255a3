#include "ricci/soliton.hpp"

#include "ricci/sym_eigen.hpp"
#include "ricci/tolerances.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ricci {

namespace {

double env_verdict_factor() {
  if (const char* env = std::getenv("RICCI_STAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return tol_verdict_factor;
}

std::string format_g9(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

double max_eigenvalue(const Eigen::MatrixXd& sym) {
  const SymEigenResult eig = sym_eigen(sym);
  return eig.values(eig.values.size() - 1);
}

int worse(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::strict: return 0;
      case Verdict::weak: return 1;
      default: return 2;
    }
  };
  return rank(a) < rank(b) ? 1 : 0;
}

void require_soliton(const SolitonReport& report, const char* who) {
  if (!report.is_soliton) {
    throw std::invalid_argument(std::string(who) +
                                ": report does not describe a soliton (defect " +
                                format_g9(report.defect) + ")");
  }
}

} // namespace

double verdict_tolerance(double lhs, double rhs) {
  return env_verdict_factor() * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::strict: return "strict";
    case Verdict::weak: return "weak";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "inconclusive";
}

Verdict classify_verdict(double lhs, double rhs) {
  const double tol = verdict_tolerance(lhs, rhs);
  if (std::abs(lhs - rhs) <= tol) return Verdict::weak;
  if (lhs < rhs) return Verdict::strict;
  return Verdict::inconclusive;
}

SolitonReport detect_soliton(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  const CurvaturePackage pkg = curvature(alg);
  const Eigen::MatrixXd& ric = pkg.ric;
  const double ric_norm = ric.norm();

  // λ* minimizes ‖L(Ric) − λ·L(id)‖² with L the stacked derivation-defect
  // map over all basis pairs; L(id) = −μ, so λ* = −⟨L(Ric), μ⟩/|μ|².
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd b = alg.bracket(i, j);
      const double b2 = b.squaredNorm();
      if (b2 == 0.0) continue;
      const Eigen::VectorXd defect_vec =
          ric * b + alg.ad(j) * ric.col(i) - alg.ad(i) * ric.col(j);
      num += defect_vec.dot(b);
      den += b2;
    }
  }

  SolitonReport report;
  report.lambda = (den > 0.0) ? (-num / den) : -1.0;
  report.D = ric - report.lambda * Eigen::MatrixXd::Identity(n, n);
  report.defect = derivation_defect(alg, report.D);
  report.trace_D = report.D.trace();
  const double tol = tol_soliton * ric_norm;
  report.is_soliton = report.defect <= tol || (den == 0.0 && report.defect == 0.0);
  report.is_einstein = report.is_soliton && report.D.norm() <= tol;
  return report;
}

StabilityCertificate stability_certificate(const MetricLieAlgebra& alg,
                                           const SolitonReport& report) {
  require_soliton(report, "stability_certificate");
  const CurvaturePackage pkg = curvature(alg);

  StabilityCertificate cert;
  if (report.is_einstein) {
    cert.criterion = "einstein";
    cert.lhs = max_eigenvalue(rho_operator(pkg).mat);
    cert.rhs = -report.lambda;
    cert.verdict = classify_verdict(cert.lhs, cert.rhs);
    cert.notes = "einstein metric (D = 0); comparing max eig of the curvature "
                 "action on Sym^2 against -lambda = " + format_g9(cert.rhs);
    return cert;
  }

  cert.criterion = "q";
  cert.lhs = max_eigenvalue(q_operator(pkg).mat);
  cert.rhs = 0.5 * report.trace_D;
  cert.verdict = classify_verdict(cert.lhs, cert.rhs);

  const double rho_max = max_eigenvalue(rho_operator(pkg).mat);
  const double quarter = 0.25 * report.trace_D;
  cert.notes = "secondary criterion max eig rho = " + format_g9(rho_max) +
               " vs trace_D/4 = " + format_g9(quarter) + " (" +
               verdict_name(classify_verdict(rho_max, quarter)) + ")";
  return cert;
}

StabilityCertificate sectional_certificate(const MetricLieAlgebra& alg,
                                           const SolitonReport& report) {
  require_soliton(report, "sectional_certificate");
  const CurvaturePackage pkg = curvature(alg);
  const SectionalScan scan = sectional_scan(pkg);
  const double K = scan.lambda2_eig_bounds.second;
  const int n = alg.dim();

  StabilityCertificate cert;
  cert.criterion = "sectional";
  cert.lhs = (n - 2) * K;
  cert.rhs = 0.5 * report.trace_D;

  if (scan.positive_plane_detected) {
    cert.verdict = Verdict::not_applicable;
    cert.notes = "positive sectional curvature sampled (max sample " +
                 format_g9(scan.sampled_max) + "); nonpositivity hypothesis fails";
    return cert;
  }
  if (K > 0.0) {
    cert.verdict = Verdict::inconclusive;
    cert.notes = "upper bound K = " + format_g9(K) +
                 " from the two-form operator is positive; no conclusion";
    return cert;
  }
  cert.verdict = classify_verdict(cert.lhs, cert.rhs);
  cert.notes = "K = " + format_g9(K) + " bounds all sectional curvatures; sampled range [" +
               format_g9(scan.sampled_min) + ", " + format_g9(scan.sampled_max) + "]";
  return cert;
}

StabilityCertificate two_step_certificate(const MetricLieAlgebra& alg,
                                          const SolitonReport& report) {
  require_soliton(report, "two_step_certificate");
  const TwoStepSplit split = two_step_split(alg);
  const int q = static_cast<int>(split.v.cols());
  const int p = static_cast<int>(split.z.cols());

  const CurvaturePackage pkg = curvature(alg);
  const Eigen::MatrixXd ric_v = split.v.transpose() * pkg.ric * split.v;
  const Eigen::MatrixXd ric_z = split.z.transpose() * pkg.ric * split.z;
  const double rho_minus = -sym_eigen(ric_v).values(0);
  const double rho_plus = max_eigenvalue(ric_z);

  const double trace_D = report.trace_D;
  struct Ineq {
    const char* name;
    double lhs;
    double rhs;
  };
  const Ineq ineqs[3] = {
      {"rho_minus < trace_D/4", rho_minus, 0.25 * trace_D},
      {"rho_plus < trace_D/4", rho_plus, 0.25 * trace_D},
      {"q/2*rho_minus + (p+1)*rho_plus < trace_D",
       0.5 * q * rho_minus + (p + 1) * rho_plus, trace_D},
  };

  StabilityCertificate cert;
  cert.criterion = "two-step";
  cert.verdict = Verdict::strict;
  int headline = 0;
  double best_margin = std::numeric_limits<double>::infinity();
  std::string notes = "p = " + std::to_string(p) + ", q = " + std::to_string(q);
  for (int k = 0; k < 3; ++k) {
    const Verdict v = classify_verdict(ineqs[k].lhs, ineqs[k].rhs);
    if (worse(cert.verdict, v)) cert.verdict = v;
    const double margin = ineqs[k].rhs - ineqs[k].lhs;
    if (margin < best_margin) {
      best_margin = margin;
      headline = k;
    }
    notes += "; " + std::string(ineqs[k].name) + ": " + format_g9(ineqs[k].lhs) +
             " vs " + format_g9(ineqs[k].rhs) + " (" + verdict_name(v) + ")";
  }
  cert.lhs = ineqs[headline].lhs;
  cert.rhs = ineqs[headline].rhs;
  cert.notes = notes;
  return cert;
}

StabilityCertificate extension_heuristic_certificate(const SolitonReport& report) {
  require_soliton(report, "extension_heuristic_certificate");
  StabilityCertificate cert;
  cert.criterion = "ext-heuristic";
  cert.lhs = max_eigenvalue(report.D);
  cert.rhs = report.trace_D / (2.0 + std::sqrt(2.0));
  cert.verdict = classify_verdict(cert.lhs, cert.rhs);
  cert.notes = "predicts stability of the one-dimensional solvable extension";
  return cert;
}

TwoStepRicciBounds two_step_ricci_bounds(const MetricLieAlgebra& alg) {
  const MetricLieAlgebra unit = normalize(alg, NormalizeKind::scal, -1.0);
  const TwoStepSplit split = two_step_split(unit);
  const CurvaturePackage pkg = curvature(unit);
  const int q = static_cast<int>(split.v.cols());
  const int p = static_cast<int>(split.z.cols());

  TwoStepRicciBounds out;
  out.ric_norm_sq = pkg.ric.squaredNorm();
  out.rho_minus = -sym_eigen(split.v.transpose() * pkg.ric * split.v).values(0);
  out.rho_plus = max_eigenvalue(split.z.transpose() * pkg.ric * split.z);
  auto leq = [](double a, double b) {
    return a <= b + 1e-12 * std::max(1.0, std::abs(b));
  };
  out.rho_minus_ok = leq(out.rho_minus, out.ric_norm_sq);
  out.rho_plus_ok = leq(out.rho_plus, out.ric_norm_sq);
  out.norm_lower_ok = leq(1.0 / p + 4.0 / q, out.ric_norm_sq);
  return out;
}

MetricLieAlgebra normalize(const MetricLieAlgebra& alg, NormalizeKind kind, double target) {
  double current = 0.0;
  if (kind == NormalizeKind::scal) {
    current = curvature(alg).scal;
  } else {
    current = detect_soliton(alg).lambda;
  }
  if (current == 0.0 || !(target / current > 0.0)) {
    throw std::invalid_argument("normalize: target " + format_g9(target) +
                                " unreachable by scaling from " + format_g9(current));
  }
  MetricLieAlgebra scaled = alg.scaled(std::sqrt(target / current));
  scaled.set_label(alg.label() + (kind == NormalizeKind::scal ? " [scal=" : " [lambda=") +
                   format_g9(target) + "]");
  return scaled;
}

TwoStepSplit two_step_split(const MetricLieAlgebra& alg) {
  const StructureReport sr = structure_report(alg);
  if (!sr.is_nilpotent || sr.step != 2) {
    throw std::invalid_argument("two_step_split: algebra '" + alg.label() +
                                "' is not two-step nilpotent");
  }
  const Eigen::MatrixXd& z = sr.derived_subalgebra_basis;
  const int n = alg.dim();
  const int p = static_cast<int>(z.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);

  TwoStepSplit split;
  split.z = z;
  split.v = full_q.rightCols(n - p);
  return split;
}

} // namespace ricci
