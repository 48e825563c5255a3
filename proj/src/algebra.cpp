#include "ricci/algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ricci/tolerances.hpp"

namespace ricci {

// ------------------------------------------------------------ MetricLieAlgebra

MetricLieAlgebra::MetricLieAlgebra(int n, std::vector<Bracket> brackets, std::string label)
    : n_(n), label_(std::move(label)) {
  if (n < 1) throw std::invalid_argument("MetricLieAlgebra: dimension must be positive");
  ad_.assign(n_, Eigen::MatrixXd::Zero(n_, n_));
  std::vector<bool> seen(static_cast<std::size_t>(n_) * n_, false);
  for (auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= n_ || b.j >= n_)
      throw std::invalid_argument("MetricLieAlgebra: bracket index out of range");
    if (b.i >= b.j)
      throw std::invalid_argument("MetricLieAlgebra: brackets must have i < j");
    if (b.coeffs.size() != n_)
      throw std::invalid_argument("MetricLieAlgebra: coefficient vector has wrong size");
    if (seen[b.i * n_ + b.j])
      throw std::invalid_argument("MetricLieAlgebra: duplicate bracket entry");
    seen[b.i * n_ + b.j] = true;
    if (b.coeffs.norm() == 0.0) continue;
    ad_[b.i].col(b.j) += b.coeffs;
    ad_[b.j].col(b.i) -= b.coeffs;
    brackets_.push_back(std::move(b));
  }
}

void MetricLieAlgebra::set_a_dim(int m) {
  if (m < 0 || m > n_) throw std::invalid_argument("set_a_dim: block size out of range");
  a_dim_ = m;
}

Eigen::VectorXd MetricLieAlgebra::bracket(int i, int j) const {
  return ad_[i].col(j);
}

Eigen::VectorXd MetricLieAlgebra::bracket(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i)
    if (x[i] != 0.0) out += x[i] * (ad_[i] * y);
  return out;
}

Eigen::MatrixXd MetricLieAlgebra::ad(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    if (x[i] != 0.0) out += x[i] * ad_[i];
  return out;
}

MetricLieAlgebra MetricLieAlgebra::scaled(double s) const {
  std::vector<Bracket> scaled_brackets = brackets_;
  for (auto& b : scaled_brackets) b.coeffs *= s;
  MetricLieAlgebra out(n_, std::move(scaled_brackets), label_);
  out.a_dim_ = a_dim_;
  return out;
}

// -------------------------------------------------------------------- defects

std::array<int, 3> worst_jacobi_triple(const MetricLieAlgebra& alg, double& defect) {
  const int n = alg.dim();
  defect = 0.0;
  std::array<int, 3> worst{0, 0, 0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        const Eigen::VectorXd v = -alg.ad(k) * alg.bracket(i, j)
                                  - alg.ad(i) * alg.bracket(j, k)
                                  + alg.ad(j) * alg.bracket(i, k);
        const double norm = v.norm();
        if (norm > defect) {
          defect = norm;
          worst = {i + 1, j + 1, k + 1};
        }
      }
  return worst;
}

double jacobi_defect(const MetricLieAlgebra& alg) {
  double defect = 0.0;
  worst_jacobi_triple(alg, defect);
  return defect;
}

Eigen::MatrixXd ad_star(const MetricLieAlgebra& alg, const Eigen::VectorXd& x) {
  return alg.ad(x).transpose();
}

double derivation_defect(const MetricLieAlgebra& alg, const Eigen::MatrixXd& M) {
  const int n = alg.dim();
  if (M.rows() != n || M.cols() != n)
    throw std::invalid_argument("derivation_defect: matrix has wrong size");
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // M[e_i,e_j] - [Me_i,e_j] - [e_i,Me_j]
      const Eigen::VectorXd v =
          M * alg.bracket(i, j) + alg.ad(j) * M.col(i) - alg.ad(i) * M.col(j);
      defect = std::max(defect, v.norm());
    }
  return defect;
}

// ----------------------------------------------------------------------- span

Eigen::MatrixXd span_basis(const Eigen::MatrixXd& vectors, double floor) {
  const int n = static_cast<int>(vectors.rows());
  if (vectors.cols() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return Eigen::MatrixXd(n, 0);
  const double cutoff = std::max(tol_rank * sv[0], floor);
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv[k] > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

// ----------------------------------------------------------- structure_report

namespace {

// Largest bracket-coefficient norm; the natural magnitude of anything a
// bracket of unit vectors can produce.
double bracket_scale(const MetricLieAlgebra& alg) {
  double scale = 0.0;
  for (const Bracket& b : alg.brackets()) scale = std::max(scale, b.coeffs.norm());
  return scale;
}

// span of all [x, y] with x over columns of A, y over columns of B.  Columns
// of A and B are unit vectors, so singular values below tol_rank times the
// bracket scale are roundoff from brackets that vanish exactly.
Eigen::MatrixXd bracket_span(const MetricLieAlgebra& alg, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& B) {
  const int n = alg.dim();
  Eigen::MatrixXd gen(n, A.cols() * B.cols());
  int c = 0;
  for (int a = 0; a < A.cols(); ++a)
    for (int b = 0; b < B.cols(); ++b) gen.col(c++) = alg.bracket(A.col(a), B.col(b));
  return span_basis(gen, tol_rank * bracket_scale(alg));
}

} // namespace

StructureReport structure_report(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  StructureReport rep;

  const Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);

  // lower central series g, [g,g], [g,[g,g]], ...
  rep.lower_central_dims.push_back(n);
  Eigen::MatrixXd term = full;
  while (true) {
    const Eigen::MatrixXd next = bracket_span(alg, full, term);
    const int d = static_cast<int>(next.cols());
    if (d == 0) {
      rep.is_nilpotent = true;
      rep.step = static_cast<int>(rep.lower_central_dims.size());
      break;
    }
    if (d >= static_cast<int>(term.cols())) break; // stagnated: not nilpotent
    rep.lower_central_dims.push_back(d);
    term = next;
  }

  // derived series g, [g,g], [[g,g],[g,g]], ...
  rep.derived_dims.push_back(n);
  Eigen::MatrixXd derived = bracket_span(alg, full, full);
  rep.derived_subalgebra_basis = derived;
  while (true) {
    const int d = static_cast<int>(derived.cols());
    if (d == 0) {
      rep.is_solvable = true;
      break;
    }
    if (d >= rep.derived_dims.back() && rep.derived_dims.size() > 1) break; // stagnated
    rep.derived_dims.push_back(d);
    derived = bracket_span(alg, derived, derived);
  }

  rep.is_unimodular = true;
  for (int i = 0; i < n; ++i)
    if (std::abs(alg.ad(i).trace()) > tol_structure) rep.is_unimodular = false;

  return rep;
}

// --------------------------------------------------------------- change_basis

MetricLieAlgebra change_basis(const MetricLieAlgebra& alg, const Eigen::MatrixXd& G,
                              double* cond_out) {
  const int n = alg.dim();
  if (G.rows() != n || G.cols() != n)
    throw std::invalid_argument("change_basis: G has wrong size");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv[n - 1] <= tol_rank * sv[0]) {
    std::ostringstream msg;
    msg << "change_basis: singular G (sigma_min/sigma_max = "
        << (sv[0] > 0 ? sv[n - 1] / sv[0] : 0.0) << ")";
    throw std::invalid_argument(msg.str());
  }
  if (cond_out) *cond_out = sv[0] / sv[n - 1];

  const Eigen::MatrixXd Ginv = svd.solve(Eigen::MatrixXd::Identity(n, n));

  std::vector<Bracket> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const Eigen::VectorXd v = G * alg.bracket(Ginv.col(a), Ginv.col(b));
      if (v.norm() == 0.0) continue;
      out.push_back({a, b, v});
    }
  return MetricLieAlgebra(n, std::move(out), alg.label());
}

// --------------------------------------------------------- semidirect_product

MetricLieAlgebra semidirect_product(const MetricLieAlgebra& n_alg, const DerivationSet& a,
                                    const Eigen::MatrixXd& gram_a) {
  const int n = n_alg.dim();
  const int m = static_cast<int>(a.maps.size());
  if (m == 0) throw std::invalid_argument("semidirect_product: empty derivation set");
  if (gram_a.rows() != m || gram_a.cols() != m)
    throw std::invalid_argument("semidirect_product: gram_a has wrong size");

  for (int k = 0; k < m; ++k) {
    const Eigen::MatrixXd& A = a.maps[k];
    if (A.rows() != n || A.cols() != n)
      throw std::invalid_argument("semidirect_product: map has wrong size");
    const double defect = derivation_defect(n_alg, A);
    if (defect > tol_structure) {
      std::ostringstream msg;
      msg << "semidirect_product: map " << k + 1 << " is not a derivation (defect " << defect
          << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      const double comm = (a.maps[k] * a.maps[l] - a.maps[l] * a.maps[k]).norm();
      if (comm > tol_structure * (1.0 + a.maps[k].norm() * a.maps[l].norm())) {
        std::ostringstream msg;
        msg << "semidirect_product: maps " << k + 1 << ", " << l + 1 << " do not commute";
        throw std::invalid_argument(msg.str());
      }
    }

  if ((gram_a - gram_a.transpose()).cwiseAbs().maxCoeff() > tol_structure * (1.0 + gram_a.norm()))
    throw std::invalid_argument("semidirect_product: gram_a not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(gram_a);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("semidirect_product: gram_a not positive-definite");

  const int N = n + m;
  std::vector<Bracket> brackets;
  for (const auto& b : n_alg.brackets()) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
    c.head(n) = b.coeffs;
    brackets.push_back({b.i, b.j, c});
  }
  for (int al = 0; al < m; ++al)
    for (int i = 0; i < n; ++i) {
      // [e_i, f_al] = -A_al e_i, stored at (i, n+al)
      Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
      c.head(n) = -a.maps[al].col(i);
      if (c.norm() == 0.0) continue;
      brackets.push_back({i, n + al, c});
    }

  MetricLieAlgebra out(N, std::move(brackets), n_alg.label());

  // normalize the a-block metric: f' = f L^{-T}, i.e. change_basis with L^T
  const Eigen::MatrixXd L = llt.matrixL();
  if ((Eigen::MatrixXd(L) - Eigen::MatrixXd::Identity(m, m)).norm() > 0.0) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(N, N);
    G.bottomRightCorner(m, m) = L.transpose();
    out = change_basis(out, G);
  }
  out.set_a_dim(m);
  return out;
}

// -------------------------------------------------------------- mean_curvature

Eigen::VectorXd mean_curvature(const MetricLieAlgebra& alg) {
  const int m = alg.a_dim();
  if (m == 0)
    throw std::invalid_argument("mean_curvature: algebra has no designated a-block");
  const int n = alg.dim() - m;
  Eigen::VectorXd H = Eigen::VectorXd::Zero(alg.dim());
  for (int al = 0; al < m; ++al) H[n + al] = alg.ad(n + al).trace();
  return H;
}

// ------------------------------------------------------------ derivation_space

DerivationSet derivation_space(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  const int pairs = n * (n - 1) / 2;
  // unknown M stored column-major: x[c*n + r] = M(r,c)
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(std::max(pairs * n, 1), n * n);
  int row0 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd b = alg.bracket(i, j);
      for (int k = 0; k < n; ++k) {
        // defect_k = (M b)_k + (ad_j M e_i)_k - (ad_i M e_j)_k
        for (int c = 0; c < n; ++c) A(row0 + k, c * n + k) += b[c];
        for (int r = 0; r < n; ++r) {
          A(row0 + k, i * n + r) += alg.ad(j)(k, r);
          A(row0 + k, j * n + r) -= alg.ad(i)(k, r);
        }
      }
      row0 += n;
    }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0)
    for (int k = 0; k < sv.size(); ++k)
      if (sv[k] > tol_rank * sv[0]) ++rank;

  DerivationSet out;
  out.symmetric_flag = true;
  const Eigen::MatrixXd V = svd.matrixV();
  for (int c = rank; c < n * n; ++c) {
    Eigen::MatrixXd M = Eigen::Map<const Eigen::MatrixXd>(V.col(c).data(), n, n);
    if ((M - M.transpose()).norm() > tol_structure * (1.0 + M.norm()))
      out.symmetric_flag = false;
    out.maps.push_back(M);
  }
  return out;
}

} // namespace ricci
