#pragma once

#include "ricci/curvature.hpp"
#include "ricci/soliton.hpp"
#include "ricci/symtensor.hpp"

#include <nlohmann/json.hpp>

namespace ricci {

/// Algebra document: {"dim": n, "brackets": [{"i": 1, "j": 2, "coeffs":
/// {"3": 1.0}}, ...], "gram": optional n×n (row-major flat or nested),
/// "label": optional}.  Indices are 1-based and require i < j.
///
/// Structural problems (bad indices, non-SPD Gram, Jacobi failure) throw
/// std::invalid_argument; malformed JSON throws std::runtime_error.
MetricLieAlgebra algebra_from_json(const nlohmann::json& doc);
nlohmann::json algebra_to_json(const MetricLieAlgebra& alg);

MetricLieAlgebra load_algebra(const std::string& path);
void save_algebra(const MetricLieAlgebra& alg, const std::string& path);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m); ///< row-major flat

nlohmann::json curvature_to_json(const CurvaturePackage& pkg);
nlohmann::json soliton_to_json(const SolitonReport& report);
nlohmann::json certificate_to_json(const StabilityCertificate& cert);
nlohmann::json operator_to_json(const SymOperator& op); ///< matrix + ascending spectrum

} // namespace ricci
