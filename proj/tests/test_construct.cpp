#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ricci/construct.hpp"

using namespace ricci;

namespace {

double constant_distance(const MetricLieAlgebra& a, const MetricLieAlgebra& b) {
  REQUIRE(a.dim() == b.dim());
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j)
      worst = std::max(worst,
                       (a.bracket(i, j) - b.bracket(i, j)).cwiseAbs().maxCoeff());
  return worst;
}

} // namespace

TEST_CASE("every catalog entry builds a valid algebra") {
  const std::map<std::string, double> params = {{"n", 4.0}, {"t", 0.3},
                                                {"q", 4.0}, {"p", 2.0}};
  for (const std::string& tmpl : catalog_names()) {
    const std::string base = tmpl.substr(0, tmpl.find('('));
    CAPTURE(base);
    MetricLieAlgebra alg = catalog(base, params);
    CHECK(jacobi_defect(alg) <= 1e-10);
    CHECK(alg.dim() >= 1);
    // Everything in the catalog except the raw-basis example carries the
    // distinguished metric.
    if (base != "mu11_raw") {
      CHECK(detect_soliton(alg).is_soliton);
    }
  }
}

TEST_CASE("catalog parameter handling") {
  CHECK(catalog("abelian(3)").dim() == 3);
  // Inline arguments win over the params map.
  CHECK(catalog("abelian(3)", {{"n", 5.0}}).dim() == 3);
  CHECK(catalog("heis(1,2)").dim() == 3);
  CHECK(catalog("free2(4)").dim() == 10);

  CHECK_THROWS_AS(catalog("no_such_algebra"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("abelian"), std::invalid_argument);      // n missing
  CHECK_THROWS_AS(catalog("abelian(0)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("abelian(2.5)"), std::invalid_argument); // not integral
  CHECK_THROWS_AS(catalog("lauret_curve(0)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("lauret_curve(1)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("nil3_family(0.8)"), std::invalid_argument); // |t| < 1/sqrt 2
  CHECK_THROWS_AS(catalog("heis(4,4)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("heis(2,3)"), std::invalid_argument); // q % 4 != 0
  CHECK_THROWS_AS(catalog("abelian(x)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("abelian(3"), std::invalid_argument); // unbalanced
}

TEST_CASE("two_step_from_jmaps reproduces nil3 from one rotation") {
  JMapSet jm;
  jm.p = 1;
  jm.q = 2;
  Eigen::MatrixXd J(2, 2);
  J << 0.0, 1.0, -1.0, 0.0;
  jm.J = {J};
  validate_jmaps(jm);
  CHECK(clifford_residual(jm) == 0.0);

  MetricLieAlgebra alg = two_step_from_jmaps(jm);
  CHECK(alg.dim() == 3);
  CHECK(std::abs(alg.bracket(0, 1)[2]) == doctest::Approx(1.0));
  CHECK(jacobi_defect(alg) == 0.0);

  jm.J[0](0, 1) = 2.0; // no longer skew
  CHECK_THROWS_AS(validate_jmaps(jm), std::invalid_argument);
  CHECK_THROWS_AS(two_step_from_jmaps(jm), std::invalid_argument);
}

TEST_CASE("heisenberg-like families are nice bases of Clifford type") {
  const std::vector<std::pair<int, int>> shapes = {{1, 2}, {1, 6}, {2, 4}, {3, 4}, {3, 8}};
  for (auto [p, q] : shapes) {
    CAPTURE(p);
    CAPTURE(q);
    MetricLieAlgebra alg = catalog("heis", {{"p", double(p)}, {"q", double(q)}});
    CHECK(alg.dim() == p + q);
    CHECK(is_nice_basis(alg));
    for (const Bracket& b : alg.brackets())
      for (int k = 0; k < alg.dim(); ++k)
        if (b.coeffs[k] != 0.0) CHECK(std::abs(b.coeffs[k]) == doctest::Approx(1.0));
    StructureReport rep = structure_report(alg);
    CHECK(rep.is_nilpotent);
    CHECK(rep.step == 2);
  }

  // mu11 needs two targets in one bracket, which a nice basis forbids.
  CHECK_FALSE(is_nice_basis(catalog("mu11_diagonalized")));
  CHECK(is_nice_basis(catalog("nil3")));
}

TEST_CASE("heis(3,4) carries the quaternionic soliton metric") {
  MetricLieAlgebra alg = catalog("heis(3,4)");
  SolitonReport rep = detect_soliton(alg);
  CHECK(rep.is_soliton);
  CHECK(rep.lambda == doctest::Approx(-4.0).epsilon(1e-12));
  Eigen::MatrixXd ric = curvature(alg).ric;
  Eigen::VectorXd expect(7);
  expect << -1.5, -1.5, -1.5, -1.5, 1.0, 1.0, 1.0;
  CHECK((ric - Eigen::MatrixXd(expect.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("free two-step algebras") {
  MetricLieAlgebra f22 = free_two_step(2);
  CHECK(constant_distance(f22, catalog("nil3")) == 0.0);

  MetricLieAlgebra f23 = free_two_step(3);
  CHECK(f23.dim() == 6);
  StructureReport rep = structure_report(f23);
  CHECK(rep.step == 2);
  CHECK(rep.derived_subalgebra_basis.cols() == 3);
  SolitonReport srep = detect_soliton(f23);
  CHECK(srep.is_soliton);
  CHECK(srep.lambda == doctest::Approx(-2.5).epsilon(1e-12));

  CHECK_THROWS_AS(free_two_step(1), std::invalid_argument);
}

TEST_CASE("extension specs predict the extension's soliton data") {
  MetricLieAlgebra base = catalog("nil3");
  Eigen::Vector3d d(0.0, 1.0, 1.0); // the t = 0 member of the derivation family
  ExtensionSpec spec = make_extension_spec(base, {Eigen::MatrixXd(d.asDiagonal())});

  CHECK(spec.base_report.is_soliton);
  CHECK(spec.gram_a(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(spec.predicted_lambda == doctest::Approx(-1.5).epsilon(1e-12));

  MetricLieAlgebra ext = lauret_extension(spec);
  CHECK(ext.dim() == 4);
  CHECK(ext.a_dim() == 1);
  SolitonReport rep = detect_soliton(ext);
  CHECK(rep.is_soliton);
  CHECK(rep.lambda == doctest::Approx(spec.predicted_lambda).epsilon(1e-9));
  CHECK((rep.D - spec.predicted_D).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK_FALSE(rep.is_einstein); // predicted_D is visibly nonzero here
  CHECK(spec.predicted_D.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("the nil3 derivation family matches its closed-form Gram") {
  for (double t : {-0.5, 0.0, 0.3, 0.6}) {
    CAPTURE(t);
    Eigen::Vector3d d(t, std::sqrt(1.0 - t * t), t + std::sqrt(1.0 - t * t));
    ExtensionSpec spec =
        make_extension_spec(catalog("nil3"), {Eigen::MatrixXd(d.asDiagonal())});
    const double expect = (4.0 / 3.0) * (1.0 + t * std::sqrt(1.0 - t * t));
    CHECK(spec.gram_a(0, 0) == doctest::Approx(expect).epsilon(1e-12));

    MetricLieAlgebra viacat = catalog("nil3_family", {{"t", t}});
    CHECK(constant_distance(viacat, lauret_extension(spec)) <= 1e-12);
  }
}

TEST_CASE("extension spec validation") {
  MetricLieAlgebra base = catalog("nil3");
  Eigen::MatrixXd skew(3, 3);
  skew << 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(make_extension_spec(base, {skew}), std::invalid_argument);

  Eigen::Vector3d nd(1.0, 0.0, 0.0); // not a derivation
  CHECK_THROWS_AS(make_extension_spec(base, {Eigen::MatrixXd(nd.asDiagonal())}),
                  std::invalid_argument);

  // The base must carry its soliton metric.
  CHECK_THROWS_AS(make_extension_spec(catalog("mu11_raw"),
                                      {Eigen::MatrixXd::Identity(6, 6)}),
                  std::invalid_argument);
}

TEST_CASE("rank-one Einstein extensions") {
  MetricLieAlgebra ext = einstein_rank_one_extension(catalog("nil3"));
  CHECK(ext.dim() == 4);
  SolitonReport rep = detect_soliton(ext);
  CHECK(rep.is_einstein);
  CHECK(rep.lambda == doctest::Approx(-1.5).epsilon(1e-10));

  // Hyperbolic space out of a flat base.
  MetricLieAlgebra h4 = einstein_rank_one_extension(abelian(3));
  SolitonReport hrep = detect_soliton(h4);
  CHECK(hrep.is_einstein);
  CHECK(hrep.lambda == doctest::Approx(-1.0).epsilon(1e-12));

  // An Einstein base has trace_D = 0 and admits no such extension.
  CHECK_THROWS_AS(einstein_rank_one_extension(ext), std::invalid_argument);
}

TEST_CASE("diagonal abelian solvsolitons") {
  Eigen::MatrixXd bad(3, 1);
  bad << 1.0, 1.0, 0.0; // column not unit length
  CHECK_THROWS_AS(diagonal_abelian_solvsoliton(bad), std::invalid_argument);

  MetricLieAlgebra ex1 = catalog("abelian_ex1");
  CHECK(ex1.dim() == 7);
  CHECK(ex1.a_dim() == 3);
  SolitonReport rep1 = detect_soliton(ex1);
  CHECK(rep1.is_soliton);
  CHECK(rep1.is_einstein);
  CHECK(mean_curvature(ex1).squaredNorm() == doctest::Approx(4.0).epsilon(1e-12));

  MetricLieAlgebra ex2 = catalog("abelian_ex2");
  SolitonReport rep2 = detect_soliton(ex2);
  CHECK(rep2.is_soliton);
  CHECK_FALSE(rep2.is_einstein);
  // |H|^2 = 11/3 < n = 4: the mean-curvature defect away from Einstein.
  CHECK(mean_curvature(ex2).squaredNorm() == doctest::Approx(11.0 / 3.0).epsilon(1e-12));
  Eigen::VectorXd ric_expect(7);
  ric_expect << -2.0 / 3.0, -4.0 / 3.0, -2.0 / 3.0, -1.0, -1.0, -1.0, -1.0;
  CHECK((curvature(ex2).ric - Eigen::MatrixXd(ric_expect.asDiagonal()))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("closed-form sectional oracle for diagonal abelian extensions") {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (const char* name : {"abelian_ex1", "abelian_ex2"}) {
    CAPTURE(name);
    MetricLieAlgebra alg = catalog(name);
    // Recover A from the stored ad maps of the a-block.
    const int m = alg.a_dim();
    const int n = alg.dim() - m;
    Eigen::MatrixXd A(n, m);
    for (int al = 0; al < m; ++al)
      A.col(al) = alg.ad(n + al).diagonal().head(n); // ad_{A_al} = diag(A.col(al))
    CurvaturePackage pkg = curvature(alg);
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::VectorXd u(n + m), v(n + m);
      for (int i = 0; i < n + m; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
      }
      const double direct = sectional(pkg, u, v);
      const double oracle = abelian_sectional_oracle(A, u, v);
      CHECK(direct == doctest::Approx(oracle).epsilon(1e-11));
    }
  }
}

TEST_CASE("one-column nonnegative data gives nonpositive curvature") {
  Eigen::MatrixXd A(3, 1);
  A << 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0);
  MetricLieAlgebra alg = diagonal_abelian_solvsoliton(A);
  SectionalScan scan = sectional_scan(curvature(alg), 512);
  CHECK(scan.sampled_max <= 1e-12);
  CHECK_FALSE(scan.positive_plane_detected);

  // Degenerate-plane guard on the oracle.
  Eigen::VectorXd u = Eigen::VectorXd::Unit(4, 0);
  CHECK_THROWS_AS(abelian_sectional_oracle(A, u, 3.0 * u), std::invalid_argument);
}

TEST_CASE("restriction identities between base and extension operators") {
  for (const char* name : {"nil3", "free2(3)"}) {
    CAPTURE(name);
    MetricLieAlgebra base = catalog(name);
    SolitonReport brep = detect_soliton(base);
    MetricLieAlgebra ext = einstein_rank_one_extension(base);

    CurvaturePackage pkg_n = curvature(base);
    CurvaturePackage pkg_s = curvature(ext);
    SymOperator rho_n = rho_operator(pkg_n);
    SymOperator rho_s = rho_operator(pkg_s);
    SymOperator rc_n = ric_compose_operator(pkg_n);
    SymOperator rc_s = ric_compose_operator(pkg_s);

    const int n = base.dim();
    std::mt19937_64 rng(55);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd h(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = dist(rng);
      h = (0.5 * (h + h.transpose())).eval();
      Eigen::MatrixXd hs = Eigen::MatrixXd::Zero(n + 1, n + 1);
      hs.topLeftCorner(n, n) = h;

      // rho on the extension picks up the derivation correction.
      const double lhs_rho = evaluate_form(rho_s, hs);
      const double corr = (1.0 / brep.trace_D) *
                          ((brep.D * h * brep.D * h).trace() -
                           std::pow((brep.D.cwiseProduct(h)).sum(), 2));
      const double rhs_rho = evaluate_form(rho_n, h) + corr;
      CHECK(lhs_rho == doctest::Approx(rhs_rho).epsilon(1e-10));

      // Ric-composition restricts with a minus sign on the D term.
      const double lhs_rc = evaluate_form(rc_s, hs);
      const double rhs_rc =
          evaluate_form(rc_n, h) - (brep.D * h * h).trace();
      CHECK(lhs_rc == doctest::Approx(rhs_rc).epsilon(1e-10));
    }
  }
}
