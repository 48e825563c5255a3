#include "ricci/construct.hpp"

#include "ricci/tolerances.hpp"

#include <cctype>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

namespace ricci {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Bracket make_bracket(int i, int j, int n, std::initializer_list<std::pair<int, double>> terms) {
  Bracket b;
  b.i = i;
  b.j = j;
  b.coeffs = VectorXd::Zero(n);
  for (const auto& [k, v] : terms) b.coeffs(k) = v;
  return b;
}

std::string format_g9(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

MatrixXd block_diagonal_copies(const MatrixXd& block, int copies) {
  const int d = static_cast<int>(block.rows());
  MatrixXd out = MatrixXd::Zero(d * copies, d * copies);
  for (int c = 0; c < copies; ++c) out.block(c * d, c * d, d, d) = block;
  return out;
}

/// Quaternion left multiplications by i, j, k on ℝ⁴ ≅ ℍ.
MatrixXd quaternion_unit(int which) {
  MatrixXd m = MatrixXd::Zero(4, 4);
  switch (which) {
    case 0:
      m(0, 1) = -1; m(1, 0) = 1; m(2, 3) = -1; m(3, 2) = 1;
      break;
    case 1:
      m(0, 2) = -1; m(1, 3) = 1; m(2, 0) = 1; m(3, 1) = -1;
      break;
    default:
      m(0, 3) = -1; m(1, 2) = -1; m(2, 1) = 1; m(3, 0) = 1;
      break;
  }
  return m;
}

struct ParsedName {
  std::string base;
  std::vector<double> args;
};

ParsedName parse_catalog_name(const std::string& name) {
  ParsedName out;
  const auto open = name.find('(');
  if (open == std::string::npos) {
    out.base = name;
    return out;
  }
  if (name.back() != ')') {
    throw std::invalid_argument("catalog: malformed name '" + name + "'");
  }
  out.base = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("catalog: bad parameter '" + tok + "' in '" + name + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) {
      throw std::invalid_argument("catalog: bad parameter '" + tok + "' in '" + name + "'");
    }
    out.args.push_back(v);
  }
  return out;
}

double require_param(const ParsedName& parsed, const std::map<std::string, double>& params,
                     const char* key, size_t index) {
  if (index < parsed.args.size()) return parsed.args[index];
  const auto it = params.find(key);
  if (it != params.end()) return it->second;
  throw std::invalid_argument("catalog: " + parsed.base + " requires parameter '" + key + "'");
}

int as_int(double v, const char* key) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9 || std::abs(r) > 1e9) {
    throw std::invalid_argument(std::string("catalog: parameter '") + key +
                                "' must be an integer, got " + format_g9(v));
  }
  return static_cast<int>(r);
}

MetricLieAlgebra build_nil3() {
  std::vector<Bracket> br{make_bracket(0, 1, 3, {{2, 1.0}})};
  return MetricLieAlgebra(3, std::move(br), "nil3");
}

MetricLieAlgebra build_mu11_raw() {
  std::vector<Bracket> br{
      make_bracket(0, 1, 6, {{3, 1.0}}),
      make_bracket(0, 3, 6, {{4, 1.0}}),
      make_bracket(0, 4, 6, {{5, 1.0}}),
      make_bracket(1, 2, 6, {{5, 1.0}}),
      make_bracket(1, 3, 6, {{5, 1.0}}),
  };
  return MetricLieAlgebra(6, std::move(br), "mu11_raw");
}

MetricLieAlgebra build_mu11_diagonalized() {
  const double a = 0.6 * std::sqrt(1.5);
  const double b = 0.3;
  const double c = 3.0 / std::sqrt(10.0);
  std::vector<Bracket> br{
      make_bracket(0, 1, 6, {{2, a}, {3, b}}),
      make_bracket(0, 2, 6, {{4, c}}),
      make_bracket(0, 4, 6, {{5, a}}),
      make_bracket(1, 2, 6, {{5, b}}),
      make_bracket(1, 3, 6, {{5, a}}),
  };
  return MetricLieAlgebra(6, std::move(br), "mu11_diagonalized");
}

MetricLieAlgebra build_lauret_curve(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("catalog: lauret_curve requires t in (0,1), got " + format_g9(t));
  }
  const double rt = std::sqrt(t);
  const double rs = std::sqrt(1.0 - t);
  std::vector<Bracket> br{
      make_bracket(0, 1, 7, {{2, rs}}),
      make_bracket(0, 2, 7, {{3, 1.0}}),
      make_bracket(0, 3, 7, {{4, rt}}),
      make_bracket(0, 4, 7, {{5, 1.0}}),
      make_bracket(0, 5, 7, {{6, 1.0}}),
      make_bracket(1, 2, 7, {{4, 1.0}}),
      make_bracket(1, 3, 7, {{5, 1.0}}),
      make_bracket(1, 4, 7, {{6, rt}}),
      make_bracket(2, 3, 7, {{6, rs}}),
  };
  return MetricLieAlgebra(7, std::move(br), "lauret_curve(t=" + format_g9(t) + ")");
}

MetricLieAlgebra build_nil3_family(double t) {
  const double bound = 1.0 / std::sqrt(2.0);
  if (!(t > -bound && t < bound)) {
    throw std::invalid_argument("catalog: nil3_family requires |t| < 1/sqrt(2), got " +
                                format_g9(t));
  }
  const double w = std::sqrt(1.0 - t * t);
  MatrixXd ad_a = MatrixXd::Zero(3, 3);
  ad_a.diagonal() << t, w, t + w;
  MetricLieAlgebra ext = lauret_extension(make_extension_spec(build_nil3(), {ad_a}));
  ext.set_label("nil3_family(t=" + format_g9(t) + ")");
  return ext;
}

MatrixXd abelian_ex1_matrix() {
  const double s = 1.0 / std::sqrt(12.0);
  MatrixXd A(4, 3);
  A << std::sqrt(3.0), 2.0 * std::sqrt(2.0), 0.0,
       std::sqrt(3.0), -std::sqrt(2.0), std::sqrt(6.0),
       std::sqrt(3.0), -std::sqrt(2.0), -std::sqrt(6.0),
       std::sqrt(3.0), 0.0, 0.0;
  return s * A;
}

MatrixXd abelian_ex2_matrix() {
  const double s = 1.0 / std::sqrt(3.0);
  MatrixXd A(4, 3);
  A << 0, 1, 1,
       1, 0, 1,
       1, -1, 0,
       1, 1, -1;
  return s * A;
}

} // namespace

void validate_jmaps(const JMapSet& jm) {
  if (jm.q < 1 || jm.p < 1 || static_cast<int>(jm.J.size()) != jm.p) {
    throw std::invalid_argument("JMapSet: need p >= 1 maps of size q >= 1 (p = " +
                                std::to_string(jm.p) + ", q = " + std::to_string(jm.q) +
                                ", maps = " + std::to_string(jm.J.size()) + ")");
  }
  for (int al = 0; al < jm.p; ++al) {
    const MatrixXd& J = jm.J[al];
    if (J.rows() != jm.q || J.cols() != jm.q) {
      throw std::invalid_argument("JMapSet: map " + std::to_string(al + 1) + " is not " +
                                  std::to_string(jm.q) + "x" + std::to_string(jm.q));
    }
    const double skew = (J + J.transpose()).cwiseAbs().maxCoeff();
    if (skew > 1e-12) {
      throw std::invalid_argument("JMapSet: map " + std::to_string(al + 1) +
                                  " is not skew-symmetric (residual " + format_g9(skew) + ")");
    }
  }
}

double clifford_residual(const JMapSet& jm) {
  validate_jmaps(jm);
  const MatrixXd id2 = 2.0 * MatrixXd::Identity(jm.q, jm.q);
  double worst = 0.0;
  for (int a = 0; a < jm.p; ++a) {
    for (int b = a; b < jm.p; ++b) {
      MatrixXd anti = jm.J[a] * jm.J[b] + jm.J[b] * jm.J[a];
      if (a == b) anti += id2;
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool is_nice_basis(const MetricLieAlgebra& alg) {
  std::map<int, std::vector<std::pair<int, int>>> pairs_by_target;
  for (const Bracket& b : alg.brackets()) {
    int target = -1;
    for (int k = 0; k < b.coeffs.size(); ++k) {
      if (std::abs(b.coeffs(k)) <= 1e-13) continue;
      if (target >= 0) return false;
      target = k;
    }
    if (target >= 0) pairs_by_target[target].emplace_back(b.i, b.j);
  }
  for (const auto& [target, pairs] : pairs_by_target) {
    for (size_t a = 0; a < pairs.size(); ++a) {
      for (size_t b = a + 1; b < pairs.size(); ++b) {
        const bool share = pairs[a].first == pairs[b].first || pairs[a].first == pairs[b].second ||
                           pairs[a].second == pairs[b].first || pairs[a].second == pairs[b].second;
        if (share) return false;
      }
    }
  }
  return true;
}

MetricLieAlgebra abelian(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("abelian: n must be >= 1");
  if (!(lambda < 0.0)) {
    throw std::invalid_argument("abelian: soliton constant must be negative, got " +
                                format_g9(lambda));
  }
  return MetricLieAlgebra(n, {}, "abelian(" + std::to_string(n) +
                                     "), lambda=" + format_g9(lambda));
}

MetricLieAlgebra two_step_from_jmaps(const JMapSet& jm) {
  validate_jmaps(jm);
  const int n = jm.q + jm.p;
  std::vector<Bracket> br;
  for (int i = 0; i < jm.q; ++i) {
    for (int j = i + 1; j < jm.q; ++j) {
      VectorXd c = VectorXd::Zero(n);
      for (int al = 0; al < jm.p; ++al) c(jm.q + al) = jm.J[al](j, i);
      if (c.squaredNorm() > 0.0) {
        Bracket b;
        b.i = i;
        b.j = j;
        b.coeffs = std::move(c);
        br.push_back(std::move(b));
      }
    }
  }
  return MetricLieAlgebra(n, std::move(br),
                          "two_step(p=" + std::to_string(jm.p) + ",q=" + std::to_string(jm.q) + ")");
}

MetricLieAlgebra heisenberg_like(int p, int copies) {
  if (p < 1 || p > 3) {
    throw std::invalid_argument("heisenberg_like: built-in J-maps cover p in {1,2,3}, got " +
                                std::to_string(p));
  }
  if (copies < 1) throw std::invalid_argument("heisenberg_like: copies must be >= 1");

  JMapSet jm;
  jm.p = p;
  if (p == 1) {
    MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;
    jm.q = 2 * copies;
    jm.J.push_back(block_diagonal_copies(rot, copies));
  } else {
    jm.q = 4 * copies;
    for (int al = 0; al < p; ++al) {
      jm.J.push_back(block_diagonal_copies(quaternion_unit(al), copies));
    }
  }
  const double res = clifford_residual(jm);
  if (res > 1e-10) {
    throw std::runtime_error("heisenberg_like: built-in maps fail the Clifford relation (" +
                             format_g9(res) + ")");
  }
  MetricLieAlgebra alg = two_step_from_jmaps(jm);
  alg.set_label("heis(" + std::to_string(p) + "," + std::to_string(jm.q) + ")");
  return alg;
}

MetricLieAlgebra free_two_step(int q) {
  if (q < 2) throw std::invalid_argument("free_two_step: q must be >= 2");
  const int p = q * (q - 1) / 2;
  const int n = q + p;
  std::vector<Bracket> br;
  int idx = 0;
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j, ++idx) {
      br.push_back(make_bracket(i, j, n, {{q + idx, 1.0}}));
    }
  }
  return MetricLieAlgebra(n, std::move(br), "free2(" + std::to_string(q) + ")");
}

ExtensionSpec make_extension_spec(const MetricLieAlgebra& base,
                                  const std::vector<Eigen::MatrixXd>& a_maps) {
  const int n = base.dim();
  if (a_maps.empty()) {
    throw std::invalid_argument("make_extension_spec: need at least one derivation");
  }
  for (size_t al = 0; al < a_maps.size(); ++al) {
    const MatrixXd& A = a_maps[al];
    if (A.rows() != n || A.cols() != n) {
      throw std::invalid_argument("make_extension_spec: map " + std::to_string(al + 1) +
                                  " is not " + std::to_string(n) + "x" + std::to_string(n));
    }
    const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * (1.0 + A.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("make_extension_spec: map " + std::to_string(al + 1) +
                                  " is not symmetric (residual " + format_g9(asym) + ")");
    }
  }

  ExtensionSpec spec{base, detect_soliton(base), DerivationSet{a_maps, true},
                     MatrixXd(), 0.0, MatrixXd()};
  if (!spec.base_report.is_soliton) {
    throw std::invalid_argument("make_extension_spec: base '" + base.label() +
                                "' is not a soliton (defect " +
                                format_g9(spec.base_report.defect) + ")");
  }
  const double lambda = spec.base_report.lambda;
  if (!(lambda < 0.0)) {
    throw std::invalid_argument("make_extension_spec: base soliton constant must be negative");
  }
  spec.predicted_lambda = lambda;

  const int m = static_cast<int>(a_maps.size());
  spec.gram_a = MatrixXd(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const double v = -(a_maps[a] * a_maps[b]).trace() / lambda;
      spec.gram_a(a, b) = v;
      spec.gram_a(b, a) = v;
    }
  }

  // Prediction: D vanishes on a and equals D_n − ad_H on n, with H the mean
  // curvature vector of the orthonormalized extension.
  const MetricLieAlgebra ext = semidirect_product(base, spec.a_maps, spec.gram_a);
  const VectorXd H = mean_curvature(ext);
  const MatrixXd ad_h = ext.ad(H);
  spec.predicted_D = MatrixXd::Zero(n + m, n + m);
  spec.predicted_D.topLeftCorner(n, n) = spec.base_report.D - ad_h.topLeftCorner(n, n);
  return spec;
}

MetricLieAlgebra lauret_extension(const ExtensionSpec& spec) {
  MetricLieAlgebra ext = semidirect_product(spec.base, spec.a_maps, spec.gram_a);
  ext.set_label(spec.base.label() + " x R^" + std::to_string(spec.a_maps.maps.size()));
  return ext;
}

MetricLieAlgebra einstein_rank_one_extension(const MetricLieAlgebra& base) {
  const SolitonReport report = detect_soliton(base);
  if (!report.is_soliton) {
    throw std::invalid_argument("einstein_rank_one_extension: base '" + base.label() +
                                "' is not a soliton");
  }
  if (!(report.trace_D > 0.0)) {
    throw std::invalid_argument("einstein_rank_one_extension: tr D = " +
                                format_g9(report.trace_D) + " must be positive");
  }
  const MatrixXd ad_a = report.D / std::sqrt(report.trace_D);
  MetricLieAlgebra ext = lauret_extension(make_extension_spec(base, {ad_a}));
  ext.set_label(base.label() + " einstein_ext");
  return ext;
}

MetricLieAlgebra diagonal_abelian_solvsoliton(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  if (n < 1 || m < 1) {
    throw std::invalid_argument("diagonal_abelian_solvsoliton: matrix must be nonempty");
  }
  const double ortho = (A.transpose() * A - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (ortho > 1e-10) {
    throw std::invalid_argument("diagonal_abelian_solvsoliton: columns are not orthonormal "
                                "(residual " + format_g9(ortho) + ")");
  }
  DerivationSet maps;
  maps.symmetric_flag = true;
  maps.maps.reserve(m);
  for (int al = 0; al < m; ++al) {
    maps.maps.push_back(MatrixXd(A.col(al).asDiagonal()));
  }
  MetricLieAlgebra base(n, {}, "abelian(" + std::to_string(n) + ")");
  MetricLieAlgebra ext = semidirect_product(base, maps, MatrixXd::Identity(m, m));
  ext.set_label("diagonal_abelian(" + std::to_string(n) + "x" + std::to_string(m) + ")");
  return ext;
}

double abelian_sectional_oracle(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  if (u.size() != n + m || v.size() != n + m) {
    throw std::invalid_argument("abelian_sectional_oracle: vectors must have dimension n + m");
  }
  const double u2 = u.squaredNorm();
  const double v2 = v.squaredNorm();
  const double uv = u.dot(v);
  const double area = u2 * v2 - uv * uv;
  if (area <= 1e-14 * std::max(1.0, u2 * v2)) {
    throw std::invalid_argument("abelian_sectional_oracle: degenerate plane");
  }

  double acc = 0.0;
  for (int al = 0; al < m; ++al) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double w = u(i) * v(j) - u(j) * v(i);
        acc -= A(i, al) * A(j, al) * w * w;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double cu = 0.0;
    double cv = 0.0;
    for (int al = 0; al < m; ++al) {
      cu += A(i, al) * u(n + al);
      cv += A(i, al) * v(n + al);
    }
    const double w = cv * u(i) - cu * v(i);
    acc -= w * w;
  }
  return acc / area;
}

MetricLieAlgebra catalog(const std::string& name, const std::map<std::string, double>& params) {
  const ParsedName parsed = parse_catalog_name(name);

  if (parsed.base == "nil3") return build_nil3();
  if (parsed.base == "abelian") {
    return abelian(as_int(require_param(parsed, params, "n", 0), "n"));
  }
  if (parsed.base == "mu11_raw") return build_mu11_raw();
  if (parsed.base == "mu11_diagonalized") return build_mu11_diagonalized();
  if (parsed.base == "lauret_curve") {
    return build_lauret_curve(require_param(parsed, params, "t", 0));
  }
  if (parsed.base == "nil3_family") {
    return build_nil3_family(require_param(parsed, params, "t", 0));
  }
  if (parsed.base == "abelian_ex1") {
    MetricLieAlgebra alg = diagonal_abelian_solvsoliton(abelian_ex1_matrix());
    alg.set_label("abelian_ex1");
    return alg;
  }
  if (parsed.base == "abelian_ex2") {
    MetricLieAlgebra alg = diagonal_abelian_solvsoliton(abelian_ex2_matrix());
    alg.set_label("abelian_ex2");
    return alg;
  }
  if (parsed.base == "free2") {
    return free_two_step(as_int(require_param(parsed, params, "q", 0), "q"));
  }
  if (parsed.base == "heis") {
    const int p = as_int(require_param(parsed, params, "p", 0), "p");
    const int q = as_int(require_param(parsed, params, "q", 1), "q");
    const int d = (p == 1) ? 2 : 4;
    if (p < 1 || p > 3 || q < d || q % d != 0) {
      throw std::invalid_argument("catalog: heis(p,q) needs p in {1,2,3} and q a positive "
                                  "multiple of " + std::to_string(d));
    }
    return heisenberg_like(p, q / d);
  }
  throw std::invalid_argument("catalog: unknown name '" + parsed.base + "'");
}

std::vector<std::string> catalog_names() {
  return {"nil3",           "abelian(n)",     "mu11_raw",  "mu11_diagonalized",
          "lauret_curve(t)", "nil3_family(t)", "abelian_ex1", "abelian_ex2",
          "free2(q)",       "heis(p,q)"};
}

} // namespace ricci
