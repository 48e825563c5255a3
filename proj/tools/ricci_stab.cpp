/// ricci-stab: validation, soliton detection, stability certification,
/// extension building, parameter sweeps, and table reproduction for
/// left-invariant metric Lie algebras.

#include "ricci/algebra_io.hpp"
#include "ricci/construct.hpp"
#include "ricci/curvature.hpp"
#include "ricci/soliton.hpp"
#include "ricci/sym_eigen.hpp"
#include "ricci/symtensor.hpp"
#include "ricci/tolerances.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace ricci;

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline
/// (doubling embedded quotes); plain fields pass through unchanged.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::runtime_error("--param expects key=value, got '" + kv + "'");
    }
    size_t pos = 0;
    double v = 0.0;
    const std::string value = kv.substr(eq + 1);
    try {
      v = std::stod(value, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("--param value '" + value + "' is not a number");
    }
    if (pos != value.size()) {
      throw std::runtime_error("--param value '" + value + "' is not a number");
    }
    out[kv.substr(0, eq)] = v;
  }
  return out;
}

MetricLieAlgebra resolve_source(const std::string& source,
                                const std::map<std::string, double>& params) {
  constexpr const char* prefix = "catalog:";
  if (source.rfind(prefix, 0) == 0) {
    return catalog(source.substr(std::string(prefix).size()), params);
  }
  return load_algebra(source);
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << doc.dump(2) << "\n";
}

double max_operator_eig(const SymOperator& op) {
  const SymEigenResult eig = sym_spectrum(op);
  return eig.values(eig.values.size() - 1);
}

StabilityCertificate not_applicable_certificate(const std::string& criterion,
                                                const std::string& why) {
  StabilityCertificate cert;
  cert.criterion = criterion;
  cert.verdict = Verdict::not_applicable;
  cert.notes = why;
  return cert;
}

/// One certificate per requested criterion; prerequisites that fail are
/// reported as not_applicable instead of erroring out.
std::vector<StabilityCertificate> run_criteria(const MetricLieAlgebra& alg,
                                               const SolitonReport& report,
                                               const std::string& which) {
  std::vector<std::string> names;
  if (which == "all") {
    names = {"q", "einstein", "sectional", "two-step", "ext-heuristic"};
  } else {
    names = {which};
  }

  std::vector<StabilityCertificate> certs;
  const std::string non_soliton = "algebra is not an algebraic soliton (defect " +
                                  fmt9(report.defect) + ")";
  for (const std::string& name : names) {
    if (!report.is_soliton) {
      certs.push_back(not_applicable_certificate(name, non_soliton));
      continue;
    }
    try {
      if (name == "q") {
        const CurvaturePackage pkg = curvature(alg);
        StabilityCertificate cert;
        cert.criterion = "q";
        cert.lhs = max_operator_eig(q_operator(pkg));
        cert.rhs = 0.5 * report.trace_D;
        cert.verdict = classify_verdict(cert.lhs, cert.rhs);
        const double rho_max = max_operator_eig(rho_operator(pkg));
        cert.notes = "secondary criterion max eig rho = " + fmt9(rho_max) + " vs trace_D/4 = " +
                     fmt9(0.25 * report.trace_D) + " (" +
                     verdict_name(classify_verdict(rho_max, 0.25 * report.trace_D)) + ")";
        certs.push_back(std::move(cert));
      } else if (name == "einstein") {
        if (!report.is_einstein) {
          certs.push_back(not_applicable_certificate(name, "metric is not Einstein"));
        } else {
          certs.push_back(stability_certificate(alg, report));
        }
      } else if (name == "sectional") {
        certs.push_back(sectional_certificate(alg, report));
      } else if (name == "two-step") {
        certs.push_back(two_step_certificate(alg, report));
      } else if (name == "ext-heuristic") {
        certs.push_back(extension_heuristic_certificate(report));
      } else {
        throw std::runtime_error("unknown criterion '" + name + "'");
      }
    } catch (const std::invalid_argument& e) {
      certs.push_back(not_applicable_certificate(name, e.what()));
    }
  }
  return certs;
}

int cmd_validate(const std::string& source, const std::map<std::string, double>& params) {
  const MetricLieAlgebra alg = resolve_source(source, params);
  const StructureReport sr = structure_report(alg);
  std::cout << "label: " << (alg.label().empty() ? "(none)" : alg.label()) << "\n";
  std::cout << "dim: " << alg.dim() << "\n";
  std::cout << "jacobi defect: " << fmt9(jacobi_defect(alg)) << "\n";
  if (sr.is_nilpotent) {
    std::cout << "structure: nilpotent, step " << sr.step << "\n";
  } else if (sr.is_solvable) {
    std::cout << "structure: solvable, not nilpotent\n";
  } else {
    std::cout << "structure: not solvable\n";
  }
  std::cout << "unimodular: " << (sr.is_unimodular ? "yes" : "no") << "\n";
  std::cout << "lower central series dims:";
  for (int d : sr.lower_central_dims) std::cout << " " << d;
  std::cout << "\nderived series dims:";
  for (int d : sr.derived_dims) std::cout << " " << d;
  std::cout << "\n";
  return 0;
}

int cmd_stability(const std::string& source, const std::map<std::string, double>& params,
                  const std::string& criterion, const std::string& out_path) {
  const MetricLieAlgebra alg = resolve_source(source, params);
  const SolitonReport report = detect_soliton(alg);
  const std::vector<StabilityCertificate> certs = run_criteria(alg, report, criterion);

  json doc;
  doc["label"] = alg.label();
  doc["dim"] = alg.dim();
  doc["soliton"] = soliton_to_json(report);
  json arr = json::array();
  for (const StabilityCertificate& c : certs) arr.push_back(certificate_to_json(c));
  doc["certificates"] = std::move(arr);
  emit(doc, out_path);
  return 0;
}

std::vector<Eigen::MatrixXd> load_maps(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("maps") || !doc.at("maps").is_array()) {
    throw std::runtime_error("derivation file must be {\"maps\": [matrix, ...]}");
  }
  std::vector<Eigen::MatrixXd> maps;
  for (const json& jm : doc.at("maps")) {
    Eigen::MatrixXd m(n, n);
    if (jm.is_array() && !jm.empty() && jm.front().is_array()) {
      if (static_cast<int>(jm.size()) != n) {
        throw std::runtime_error("derivation matrices must be n x n");
      }
      for (int r = 0; r < n; ++r) {
        const json& row = jm.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
          throw std::runtime_error("derivation matrices must be n x n");
        }
        for (int c = 0; c < n; ++c) m(r, c) = row.at(c).get<double>();
      }
    } else if (jm.is_array() && static_cast<int>(jm.size()) == n * n) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m(r, c) = jm.at(r * n + c).get<double>();
      }
    } else {
      throw std::runtime_error("derivation matrices must be nested rows or flat row-major");
    }
    maps.push_back(std::move(m));
  }
  if (maps.empty()) throw std::runtime_error("derivation file contains no maps");
  return maps;
}

int cmd_extend(const std::string& source, const std::map<std::string, double>& params,
               bool einstein, const std::string& derivations_path, const std::string& out_path) {
  const MetricLieAlgebra base = resolve_source(source, params);
  MetricLieAlgebra ext = einstein
                             ? einstein_rank_one_extension(base)
                             : lauret_extension(make_extension_spec(
                                   base, load_maps(derivations_path, base.dim())));
  const SolitonReport report = detect_soliton(ext);
  StabilityCertificate cert;
  if (report.is_soliton) {
    cert = stability_certificate(ext, report);
  } else {
    cert = not_applicable_certificate("q", "extension did not verify as a soliton");
  }

  json doc;
  doc["algebra"] = algebra_to_json(ext);
  doc["soliton"] = soliton_to_json(report);
  doc["certificate"] = certificate_to_json(cert);
  emit(doc, out_path);
  return 0;
}

struct SweepRow {
  double t;
  double max_eig;
  double threshold;
  Verdict verdict;
};

void write_csv(const std::vector<SweepRow>& rows, const std::string& out_path) {
  std::ostringstream os;
  os << "t,max_eig,threshold,verdict\n";
  for (const SweepRow& r : rows) {
    os << fmt9(r.t) << "," << fmt9(r.max_eig) << "," << fmt9(r.threshold) << ","
       << verdict_name(r.verdict) << "\n";
  }
  if (out_path.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << os.str();
}

std::vector<double> parse_range(const std::string& range) {
  double a = 0.0;
  double b = 0.0;
  int steps = 0;
  char colon1 = 0;
  char colon2 = 0;
  std::istringstream is(range);
  if (!(is >> a >> colon1 >> b >> colon2 >> steps) || colon1 != ':' || colon2 != ':' ||
      !is.eof() || steps < 1) {
    throw std::runtime_error("--range expects a:b:steps with steps >= 1, got '" + range + "'");
  }
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(a);
    return grid;
  }
  for (int k = 0; k < steps; ++k) grid.push_back(a + k * (b - a) / (steps - 1));
  return grid;
}

/// lauret_curve tracks the Einstein criterion of the rank-one extension
/// (max eig R̊ against −λ); the solvsoliton families track max eig Q
/// against ½·tr D.
int cmd_sweep(const std::string& family, const std::string& range, const std::string& out_path,
              const std::string& matrices_path) {
  std::vector<SweepRow> rows;
  if (family == "lauret_curve" || family == "nil3_family") {
    if (range.empty()) throw std::runtime_error("--range is required for " + family);
    for (const double t : parse_range(range)) {
      const MetricLieAlgebra alg = catalog(family, {{"t", t}});
      SweepRow row{t, 0.0, 0.0, Verdict::inconclusive};
      if (family == "lauret_curve") {
        const MetricLieAlgebra ext = einstein_rank_one_extension(alg);
        const SolitonReport erep = detect_soliton(ext);
        row.max_eig = max_operator_eig(rho_operator(curvature(ext)));
        row.threshold = -erep.lambda;
      } else {
        const SolitonReport rep = detect_soliton(alg);
        row.max_eig = max_operator_eig(q_operator(curvature(alg)));
        row.threshold = 0.5 * rep.trace_D;
      }
      row.verdict = classify_verdict(row.max_eig, row.threshold);
      rows.push_back(row);
    }
  } else if (family == "diagonal_abelian") {
    if (matrices_path.empty()) {
      throw std::runtime_error("family diagonal_abelian requires --matrices <file>");
    }
    std::ifstream in(matrices_path);
    if (!in) throw std::runtime_error("cannot open '" + matrices_path + "'");
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw std::runtime_error("cannot parse '" + matrices_path + "': " + e.what());
    }
    if (!doc.is_object() || !doc.contains("matrices") || !doc.at("matrices").is_array()) {
      throw std::runtime_error("matrices file must be {\"matrices\": [rows, ...]}");
    }
    int index = 0;
    for (const json& jm : doc.at("matrices")) {
      ++index;
      if (!jm.is_array() || jm.empty() || !jm.front().is_array()) {
        throw std::runtime_error("each matrix must be a nested array of rows");
      }
      const int n = static_cast<int>(jm.size());
      const int m = static_cast<int>(jm.front().size());
      Eigen::MatrixXd A(n, m);
      for (int r = 0; r < n; ++r) {
        const json& row = jm.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != m) {
          throw std::runtime_error("ragged matrix in '" + matrices_path + "'");
        }
        for (int c = 0; c < m; ++c) A(r, c) = row.at(c).get<double>();
      }
      const MetricLieAlgebra alg = diagonal_abelian_solvsoliton(A);
      const SolitonReport rep = detect_soliton(alg);
      SweepRow row{static_cast<double>(index), 0.0, 0.0, Verdict::inconclusive};
      row.max_eig = max_operator_eig(q_operator(curvature(alg)));
      row.threshold = 0.5 * rep.trace_D;
      row.verdict = classify_verdict(row.max_eig, row.threshold);
      rows.push_back(row);
    }
  } else {
    throw std::runtime_error("unknown family '" + family +
                             "' (expected lauret_curve, nil3_family, diagonal_abelian)");
  }
  write_csv(rows, out_path);
  return 0;
}

struct ReportRow {
  std::string label;
  int dim = 0;
  int step = 0;
  double lambda = 0.0;
  double trace_D = 0.0;
  double max_q = 0.0;
  Verdict q_verdict = Verdict::inconclusive;
  int ext_dim = 0;
  double ext_max_rho = 0.0;
  Verdict ext_verdict = Verdict::inconclusive;
  std::string paper_cell;
  double paper_lambda = 0.0;
  double paper_trace_d = 0.0;
  double paper_max_q = 0.0;
  double paper_ext_max_rho = 0.0;
  double deviation = 0.0;
};

ReportRow make_report_row(const MetricLieAlgebra& alg, const std::string& cell, double p_lambda,
                          double p_trd, double p_maxq, double p_ext) {
  ReportRow row;
  row.label = alg.label();
  row.dim = alg.dim();
  row.step = structure_report(alg).step;
  const SolitonReport rep = detect_soliton(alg);
  row.lambda = rep.lambda;
  row.trace_D = rep.trace_D;
  row.max_q = max_operator_eig(q_operator(curvature(alg)));
  row.q_verdict = classify_verdict(row.max_q, 0.5 * rep.trace_D);
  const MetricLieAlgebra ext = einstein_rank_one_extension(alg);
  row.ext_dim = ext.dim();
  row.ext_max_rho = max_operator_eig(rho_operator(curvature(ext)));
  row.ext_verdict = classify_verdict(row.ext_max_rho, -detect_soliton(ext).lambda);
  row.paper_cell = cell;
  row.paper_lambda = p_lambda;
  row.paper_trace_d = p_trd;
  row.paper_max_q = p_maxq;
  row.paper_ext_max_rho = p_ext;
  row.deviation = std::max({std::abs(row.lambda - p_lambda), std::abs(row.trace_D - p_trd),
                            std::abs(row.max_q - p_maxq), std::abs(row.ext_max_rho - p_ext)});
  return row;
}

int cmd_report(bool tables, const std::string& out_path) {
  std::vector<ReportRow> rows;
  rows.push_back(make_report_row(catalog("nil3"), "(3,#1)", -1.5, 4.0, 0.569, 1.000));
  const double ext_rho[6] = {1.0, 0.5, 1.0 / 3.0, 0.25, 0.2, 1.0 / 6.0};
  for (int n = 1; n <= 6; ++n) {
    rows.push_back(make_report_row(catalog("abelian(" + std::to_string(n) + ")"),
                                   "(" + std::to_string(n) + ",abelian)", -1.0,
                                   static_cast<double>(n), 0.0, ext_rho[n - 1]));
  }
  {
    Bracket b;
    b.i = 0;
    b.j = 1;
    b.coeffs = Eigen::VectorXd::Zero(4);
    b.coeffs(2) = 1.0;
    MetricLieAlgebra h3_plus_r(4, {b}, "nil3+R");
    rows.push_back(make_report_row(h3_plus_r, "(4,#2)", -1.5, 5.5, 0.569, 0.932));
  }
  rows.push_back(
      make_report_row(catalog("mu11_diagonalized"), "(6,#11)", -1.44, 7.29, 0.732, 1.166));
  rows.push_back(make_report_row(catalog("free2(3)"), "(6,#24)", -2.5, 13.5, 0.581, 1.071));

  if (tables) {
    std::printf("%-20s %4s %4s %9s %9s %8s %-7s %7s %8s %-7s %-10s %10s\n", "label", "dim",
                "step", "lambda", "trace_D", "max_Q", "q", "ext_dim", "ext_rho", "ext",
                "cell", "deviation");
    for (const ReportRow& r : rows) {
      std::printf("%-20s %4d %4d %9s %9s %8s %-7s %7d %8s %-7s %-10s %10s\n", r.label.c_str(),
                  r.dim, r.step, fmt3(r.lambda).c_str(), fmt3(r.trace_D).c_str(),
                  fmt3(r.max_q).c_str(), verdict_name(r.q_verdict), r.ext_dim,
                  fmt3(r.ext_max_rho).c_str(), verdict_name(r.ext_verdict), r.paper_cell.c_str(),
                  fmt9(r.deviation).c_str());
    }
  }

  std::ostringstream csv;
  csv << "label,dim,step,lambda,trace_D,max_Q,q_verdict,ext_dim,ext_max_rho,ext_verdict,"
         "lambda_3dp,trace_D_3dp,max_Q_3dp,ext_max_rho_3dp,paper_cell,deviation\n";
  for (const ReportRow& r : rows) {
    csv << csv_field(r.label) << "," << r.dim << "," << r.step << "," << fmt9(r.lambda) << ","
        << fmt9(r.trace_D) << "," << fmt9(r.max_q) << "," << verdict_name(r.q_verdict) << ","
        << r.ext_dim << "," << fmt9(r.ext_max_rho) << "," << verdict_name(r.ext_verdict) << ","
        << fmt3(r.lambda) << "," << fmt3(r.trace_D) << "," << fmt3(r.max_q) << ","
        << fmt3(r.ext_max_rho) << "," << csv_field(r.paper_cell) << "," << fmt9(r.deviation)
        << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << csv.str();
  } else if (!tables) {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_catalog_emit(const std::string& name, const std::map<std::string, double>& params,
                     const std::string& out_path) {
  emit(algebra_to_json(catalog(name, params)), out_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability toolkit for left-invariant Ricci solitons"};
  app.require_subcommand(1);

  std::string source;
  std::string criterion = "all";
  std::string out_path;
  std::string derivations_path;
  std::string family;
  std::string range;
  std::string matrices_path;
  std::string emit_name;
  std::vector<std::string> param_kvs;
  bool einstein = false;
  bool tables = true;

  CLI::App* validate = app.add_subcommand("validate", "check an algebra document");
  validate->add_option("source", source, "path or catalog:<name>")->required();
  validate->add_option("--param", param_kvs, "catalog parameter key=value");

  CLI::App* stability = app.add_subcommand("stability", "detect soliton and certify stability");
  stability->add_option("source", source, "path or catalog:<name>")->required();
  stability->add_option("--criterion", criterion, "q|einstein|sectional|two-step|ext-heuristic|all")
      ->check(CLI::IsMember({"q", "einstein", "sectional", "two-step", "ext-heuristic", "all"}));
  stability->add_option("--param", param_kvs, "catalog parameter key=value");
  stability->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* extend = app.add_subcommand("extend", "build a solvable extension");
  extend->add_option("source", source, "path or catalog:<name>")->required();
  extend->add_flag("--einstein", einstein, "rank-one Einstein extension");
  extend->add_option("--derivations", derivations_path, "JSON file {\"maps\": [...]}");
  extend->add_option("--param", param_kvs, "catalog parameter key=value");
  extend->add_option("--out", out_path, "write JSON here instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a family over a parameter grid");
  sweep->add_option("family", family, "lauret_curve|nil3_family|diagonal_abelian")->required();
  sweep->add_option("--range", range, "a:b:steps");
  sweep->add_option("--matrices", matrices_path, "JSON file {\"matrices\": [...]}");
  sweep->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  CLI::App* report = app.add_subcommand("report", "reproduce the catalog stability table");
  report->add_flag("--tables,!--no-tables", tables, "print the formatted table");
  report->add_option("--out", out_path, "also write CSV here");

  CLI::App* cat = app.add_subcommand("catalog", "catalog access");
  CLI::App* cat_emit = cat->add_subcommand("emit", "write a catalog algebra document");
  cat_emit->add_option("name", emit_name, "catalog entry name")->required();
  cat_emit->add_option("--param", param_kvs, "catalog parameter key=value");
  cat_emit->add_option("--out", out_path, "write JSON here instead of stdout");
  CLI::App* cat_list = cat->add_subcommand("list", "list catalog entry names");
  cat->require_subcommand(1);

  try {
    app.parse(argc, argv);
    const std::map<std::string, double> params = parse_params(param_kvs);
    if (validate->parsed()) return cmd_validate(source, params);
    if (stability->parsed()) return cmd_stability(source, params, criterion, out_path);
    if (extend->parsed()) {
      if (einstein == !derivations_path.empty()) {
        throw std::runtime_error("extend needs exactly one of --einstein or --derivations");
      }
      return cmd_extend(source, params, einstein, derivations_path, out_path);
    }
    if (sweep->parsed()) return cmd_sweep(family, range, out_path, matrices_path);
    if (report->parsed()) return cmd_report(tables, out_path);
    if (cat->parsed()) {
      if (cat_list->parsed()) {
        for (const std::string& name : catalog_names()) std::cout << name << "\n";
        return 0;
      }
      return cmd_catalog_emit(emit_name, params, out_path);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
