#include "ricci/symtensor.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ricci {

// ----------------------------------------------------------------- SymBasis

SymBasis SymBasis::make(int n) {
  SymBasis basis;
  basis.n = n;
  basis.N = n * (n + 1) / 2;
  basis.elements.reserve(basis.N);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
    E(i, i) = 1.0;
    basis.elements.push_back(E);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
      E(i, j) = inv_sqrt2;
      E(j, i) = inv_sqrt2;
      basis.elements.push_back(E);
    }
  return basis;
}

Eigen::VectorXd SymBasis::coordinates(const Eigen::MatrixXd& h) const {
  Eigen::VectorXd c(N);
  for (int i = 0; i < n; ++i) c[i] = h(i, i);
  int a = n;
  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c[a++] = sqrt2 * h(i, j);
  return c;
}

Eigen::MatrixXd SymBasis::matrix(const Eigen::VectorXd& coords) const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = coords[i];
  int a = n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = coords[a] * inv_sqrt2;
      h(j, i) = coords[a] * inv_sqrt2;
      ++a;
    }
  return h;
}

const char* sym_kind_name(SymKind kind) noexcept {
  switch (kind) {
    case SymKind::rho: return "rho";
    case SymKind::ric_compose: return "ric_compose";
    case SymKind::q: return "q";
    case SymKind::weitzenboeck: return "weitzenboeck";
    case SymKind::lambda2: return "lambda2";
  }
  return "unknown";
}

// ---------------------------------------------------------------- operators

Eigen::MatrixXd apply_rho(const CurvaturePackage& pkg, const Eigen::MatrixXd& h) {
  const int n = pkg.n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double hpq = h(p, q);
          if (hpq != 0.0) s += pkg.riem_at(i, p, q, j) * hpq;
        }
      out(i, j) = s;
    }
  return (0.5 * (out + out.transpose())).eval();
}

namespace {

SymOperator assemble(const CurvaturePackage& pkg, SymKind kind,
                     const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& apply) {
  SymOperator op;
  op.kind = kind;
  op.basis = SymBasis::make(pkg.n);
  op.mat.resize(op.basis.N, op.basis.N);
  for (int b = 0; b < op.basis.N; ++b)
    op.mat.col(b) = op.basis.coordinates(apply(op.basis.elements[b]));
  op.mat = (0.5 * (op.mat + op.mat.transpose())).eval();
  return op;
}

} // namespace

SymOperator rho_operator(const CurvaturePackage& pkg) {
  return assemble(pkg, SymKind::rho,
                  [&](const Eigen::MatrixXd& h) { return apply_rho(pkg, h); });
}

SymOperator ric_compose_operator(const CurvaturePackage& pkg) {
  return assemble(pkg, SymKind::ric_compose, [&](const Eigen::MatrixXd& h) {
    return (0.5 * (pkg.ric * h + h * pkg.ric)).eval();
  });
}

SymOperator q_operator(const CurvaturePackage& pkg) {
  SymOperator rho = rho_operator(pkg);
  const SymOperator rc = ric_compose_operator(pkg);
  rho.mat += rc.mat;
  rho.kind = SymKind::q;
  return rho;
}

SymOperator weitzenboeck_operator(const CurvaturePackage& pkg) {
  SymOperator rho = rho_operator(pkg);
  const SymOperator rc = ric_compose_operator(pkg);
  rho.mat = (-2.0 * rho.mat + 2.0 * rc.mat).eval();
  rho.kind = SymKind::weitzenboeck;
  return rho;
}

SymOperator lambda2_operator(const CurvaturePackage& pkg) {
  SymOperator op;
  op.kind = SymKind::lambda2;
  op.basis = SymBasis::make(pkg.n);
  op.mat = lambda2_matrix(pkg);
  return op;
}

// ------------------------------------------------------------- sym_spectrum

SymEigenResult sym_spectrum(const SymOperator& op) {
  SymEigenResult res = sym_eigen(op.mat); // throws on non-symmetric input
  const double scale = op.mat.norm();
  if (!res.converged) {
    std::ostringstream msg;
    msg << "sym_spectrum: Jacobi did not converge after " << res.sweeps
        << " sweeps (off-diagonal residual " << res.off_final << ")";
    throw std::runtime_error(msg.str());
  }
  double worst = 0.0;
  for (int k = 0; k < res.values.size(); ++k) {
    const double r = (op.mat * res.vectors.col(k) - res.values[k] * res.vectors.col(k)).norm();
    worst = std::max(worst, r);
  }
  if (worst > 1e-9 * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "sym_spectrum: eigenpair residual " << worst << " exceeds 1e-9*||mat||";
    throw std::runtime_error(msg.str());
  }
  return res;
}

// ------------------------------------------------------------ evaluate_form

double evaluate_form(const SymOperator& op, const Eigen::MatrixXd& h) {
  if (op.kind == SymKind::lambda2)
    throw std::invalid_argument("evaluate_form: lambda2 operator does not act on Sym^2");
  if (h.rows() != op.basis.n || h.cols() != op.basis.n)
    throw std::invalid_argument("evaluate_form: h has wrong size");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("evaluate_form: h not symmetric");
  const Eigen::VectorXd c = op.basis.coordinates(h);
  return c.dot(op.mat * c);
}

} // namespace ricci
