#include "ricci/algebra_io.hpp"

#include "ricci/sym_eigen.hpp"
#include "ricci/tolerances.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ricci {

namespace {

using nlohmann::json;

[[noreturn]] void fail_parse(const std::string& msg) {
  throw std::runtime_error("algebra document: " + msg);
}

[[noreturn]] void fail_invariant(const std::string& msg) {
  throw std::invalid_argument("algebra document: " + msg);
}

double finite_number(const json& j, const std::string& what) {
  if (!j.is_number()) fail_parse(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail_invariant(what + " is not finite");
  return v;
}

Eigen::MatrixXd read_gram(const json& j, int n) {
  Eigen::MatrixXd g(n, n);
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    if (static_cast<int>(j.size()) != n) fail_parse("gram must be n x n");
    for (int r = 0; r < n; ++r) {
      const json& row = j.at(r);
      if (!row.is_array() || static_cast<int>(row.size()) != n) fail_parse("gram must be n x n");
      for (int c = 0; c < n; ++c) g(r, c) = finite_number(row.at(c), "gram entry");
    }
    return g;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n * n) {
    fail_parse("gram must be a flat row-major array of n*n numbers or n nested rows");
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = finite_number(j.at(r * n + c), "gram entry");
  }
  return g;
}

} // namespace

MetricLieAlgebra algebra_from_json(const json& doc) {
  if (!doc.is_object()) fail_parse("top level must be an object");
  if (!doc.contains("dim")) fail_parse("missing \"dim\"");
  if (!doc.at("dim").is_number_integer()) fail_parse("\"dim\" must be an integer");
  const int n = doc.at("dim").get<int>();
  if (n < 1) fail_invariant("\"dim\" must be >= 1");

  std::vector<Bracket> brackets;
  if (doc.contains("brackets")) {
    const json& arr = doc.at("brackets");
    if (!arr.is_array()) fail_parse("\"brackets\" must be an array");
    brackets.reserve(arr.size());
    for (const json& e : arr) {
      if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("coeffs")) {
        fail_parse("bracket entries need \"i\", \"j\", \"coeffs\"");
      }
      if (!e.at("i").is_number_integer() || !e.at("j").is_number_integer()) {
        fail_parse("bracket indices must be integers");
      }
      const int i = e.at("i").get<int>();
      const int j = e.at("j").get<int>();
      if (i < 1 || i > n || j < 1 || j > n) {
        fail_invariant("bracket index out of range in [" + std::to_string(i) + "," +
                       std::to_string(j) + "]");
      }
      if (i >= j) {
        fail_invariant("bracket entries require i < j, got [" + std::to_string(i) + "," +
                       std::to_string(j) + "]");
      }
      Bracket b;
      b.i = i - 1;
      b.j = j - 1;
      b.coeffs = Eigen::VectorXd::Zero(n);
      const json& coeffs = e.at("coeffs");
      if (!coeffs.is_object()) fail_parse("\"coeffs\" must be an object keyed by target index");
      for (const auto& [key, value] : coeffs.items()) {
        int k = 0;
        try {
          size_t pos = 0;
          k = std::stoi(key, &pos);
          if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          fail_parse("coefficient key '" + key + "' is not an index");
        }
        if (k < 1 || k > n) fail_invariant("coefficient target " + key + " out of range");
        b.coeffs(k - 1) = finite_number(value, "coefficient c_{" + std::to_string(i) + "," +
                                                   std::to_string(j) + "}^" + key);
      }
      brackets.push_back(std::move(b));
    }
  }

  std::string label = doc.value("label", std::string{});
  MetricLieAlgebra alg(n, std::move(brackets), label);

  if (doc.contains("gram")) {
    const Eigen::MatrixXd gram = read_gram(doc.at("gram"), n);
    if ((gram - gram.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + gram.cwiseAbs().maxCoeff())) {
      fail_invariant("gram matrix is not symmetric");
    }
    if (!gram.isIdentity(1e-14)) {
      Eigen::LLT<Eigen::MatrixXd> llt(gram);
      if (llt.info() != Eigen::Success) fail_invariant("gram matrix is not positive-definite");
      const Eigen::MatrixXd lt = llt.matrixL().transpose();
      alg = change_basis(alg, lt);
      alg.set_label(label.empty() ? "[gram-normalized]" : label + " [gram-normalized]");
    }
  }

  const double defect = jacobi_defect(alg);
  if (defect > tol_structure) {
    double worst = 0.0;
    const std::array<int, 3> triple = worst_jacobi_triple(alg, worst);
    fail_invariant("Jacobi identity violated: defect " + std::to_string(defect) +
                   " at triple (" + std::to_string(triple[0]) + "," +
                   std::to_string(triple[1]) + "," + std::to_string(triple[2]) + ")");
  }
  return alg;
}

json algebra_to_json(const MetricLieAlgebra& alg) {
  json doc;
  doc["dim"] = alg.dim();
  if (!alg.label().empty()) doc["label"] = alg.label();
  json arr = json::array();
  for (const Bracket& b : alg.brackets()) {
    json entry;
    entry["i"] = b.i + 1;
    entry["j"] = b.j + 1;
    json coeffs = json::object();
    for (int k = 0; k < b.coeffs.size(); ++k) {
      if (b.coeffs(k) != 0.0) coeffs[std::to_string(k + 1)] = b.coeffs(k);
    }
    entry["coeffs"] = std::move(coeffs);
    arr.push_back(std::move(entry));
  }
  doc["brackets"] = std::move(arr);
  return doc;
}

MetricLieAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
  return algebra_from_json(doc);
}

void save_algebra(const MetricLieAlgebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << algebra_to_json(alg).dump(2) << "\n";
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

json curvature_to_json(const CurvaturePackage& pkg) {
  json doc;
  doc["dim"] = pkg.n;
  doc["source_label"] = pkg.source_label;
  doc["scal"] = pkg.scal;
  doc["ric"] = matrix_to_json(pkg.ric);
  json nabla = json::array();
  for (const Eigen::MatrixXd& m : pkg.nabla) nabla.push_back(matrix_to_json(m));
  doc["nabla"] = std::move(nabla);
  doc["riem"] = pkg.riem;
  return doc;
}

json soliton_to_json(const SolitonReport& report) {
  json doc;
  doc["lambda"] = report.lambda;
  doc["trace_D"] = report.trace_D;
  doc["D"] = matrix_to_json(report.D);
  doc["defect"] = report.defect;
  doc["is_soliton"] = report.is_soliton;
  doc["is_einstein"] = report.is_einstein;
  return doc;
}

json certificate_to_json(const StabilityCertificate& cert) {
  json doc;
  doc["criterion"] = cert.criterion;
  doc["lhs"] = cert.lhs;
  doc["rhs"] = cert.rhs;
  doc["verdict"] = verdict_name(cert.verdict);
  doc["notes"] = cert.notes;
  return doc;
}

json operator_to_json(const SymOperator& op) {
  json doc;
  doc["kind"] = sym_kind_name(op.kind);
  doc["size"] = op.mat.rows();
  doc["matrix"] = matrix_to_json(op.mat);
  const SymEigenResult eig = sym_spectrum(op);
  json values = json::array();
  for (int i = 0; i < eig.values.size(); ++i) values.push_back(eig.values(i));
  doc["eigenvalues"] = std::move(values);
  return doc;
}

} // namespace ricci
