#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/harness.hpp"
#include "sgnpoly/json_io.hpp"

using namespace sgnpoly;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig config = preset("exp1a", 120);
  config.reps_null = 20;
  config.reps_alt = 20;
  config.sweep = {{6.0, 1.0 - 3.2 / 6.0}};
  config.tests = {"SgnT", "SgnQ"};
  config.master_seed = 42;
  return config;
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

}  // namespace

TEST_CASE("presets carry the expected parameterizations") {
  const ExperimentConfig exp1a = preset("exp1a");
  CHECK(exp1a.n == 2000);
  CHECK(exp1a.K == 2);
  CHECK(exp1a.theta_law.kind == ThetaLaw::Kind::Uniform);
  CHECK(exp1a.theta_law.a == 2.0);
  CHECK(exp1a.theta_law.b == 3.0);
  for (auto [beta, b] : exp1a.sweep)
    CHECK(beta * (1.0 - b) == doctest::Approx(3.2).epsilon(1e-12));

  const ExperimentConfig exp2b = preset("exp2b");
  CHECK(exp2b.n == 3000);
  CHECK(exp2b.K == 10);
  CHECK(exp2b.theta_law.kind == ThetaLaw::Kind::TwoPoint);
  CHECK(exp2b.mem_law.point_weights[0] == doctest::Approx(0.1));
  CHECK(exp2b.mem_law.point_weights[2] == doctest::Approx(0.15));
  CHECK(exp2b.mem_law.point_weights[9] == doctest::Approx(0.05));
  for (auto [beta, b] : exp2b.sweep)
    CHECK(beta * (1.0 - b) == doctest::Approx(5.2).epsilon(1e-12));

  const ExperimentConfig fig2 = preset("fig2-null");
  CHECK(fig2.theta_law.kind == ThetaLaw::Kind::Pareto);
  CHECK(fig2.theta_law.shape == 12.0);
  CHECK(fig2.theta_law.scale == 0.375);
  CHECK(fig2.null_beta == 8.0);
  CHECK(fig2.sweep.size() == 1);
  CHECK(fig2.sweep[0].first == 9.0);
  CHECK(fig2.sweep[0].second == 0.6);

  const ExperimentConfig scaled = preset("exp3c", 250);
  CHECK(scaled.n == 250);
  CHECK(scaled.mem_law.dirichlet_weight == doctest::Approx(0.25));

  CHECK_THROWS_AS(preset("exp9z"), UnknownPreset);
}

TEST_CASE("run_experiment: tiny run has sane rates and row shape") {
  const std::vector<ResultRow> rows = run_experiment(tiny_config());
  REQUIRE(rows.size() == 2);  // one sweep point x two tests
  for (const auto& row : rows) {
    CHECK(row.sum == doctest::Approx(row.type1 + row.type2));
    CHECK(row.type1 >= 0.0);
    CHECK(row.type1 <= 1.0);
    CHECK(row.type2 >= 0.0);
    CHECK(row.type2 <= 1.0);
    CHECK(row.reps + row.skipped == 40);
    CHECK(row.valid);
  }
}

TEST_CASE("run_experiment: deterministic regardless of thread count") {
  const ExperimentConfig config = tiny_config();
#ifdef _WIN32
  const auto set_threads = [](const char*) {};
#else
  const auto set_threads = [](const char* v) {
    setenv("SGNPOLY_THREADS", v, 1);
  };
#endif
  set_threads("1");
  const std::string serial = csv_of(run_experiment(config));
  set_threads("4");
  const std::string parallel = csv_of(run_experiment(config));
  set_threads("2");
  const std::string two = csv_of(run_experiment(config));
#ifndef _WIN32
  unsetenv("SGNPOLY_THREADS");
#endif
  CHECK(serial == parallel);
  CHECK(serial == two);
  CHECK(serial ==
        csv_of(run_experiment(config)));  // and across repeat runs
}

TEST_CASE("run_experiment: null-only configuration is calibrated") {
  // Alternative equal to the null in distribution: b -> 1 gives a flat P,
  // so the 'alternative' is a plain null and type1 should be near alpha.
  ExperimentConfig config = preset("exp1a", 150);
  config.reps_null = 60;
  config.reps_alt = 1;
  config.tests = {"SgnT"};
  config.sweep = {{5.0, 0.999999}};
  config.master_seed = 7;
  const std::vector<ResultRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 1);
  // 4-sigma binomial band around alpha = 0.05 at 60 reps.
  CHECK(rows[0].type1 <= 0.05 + 4.0 * std::sqrt(0.05 * 0.95 / 60.0));
}

TEST_CASE("run_experiment: degenerate sweep point marks the row invalid") {
  ExperimentConfig config = preset("exp1a", 60);
  config.reps_null = 10;
  config.reps_alt = 10;
  config.tests = {"SgnT"};
  // beta tiny: the sampled graphs are almost surely empty or too sparse,
  // so every rep is skipped as DegenerateGraph / NonpositiveNuisance.
  config.sweep = {{0.01, 0.5}};
  config.master_seed = 3;
  const std::vector<ResultRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].valid);
  CHECK(rows[0].skipped > 0);
}

TEST_CASE("write_csv: header and formatting are fixed") {
  ResultRow row;
  row.sweep_beta = 6.0;
  row.sweep_b = 0.4666666666666667;
  row.test = "SgnQ";
  row.type1 = 0.05;
  row.type2 = 0.2;
  row.sum = 0.25;
  row.reps = 400;
  row.skipped = 0;
  std::ostringstream out;
  write_csv(out, {row});
  CHECK(out.str() ==
        "sweep_beta,sweep_b,test,type1,type2,sum,reps,skipped\n"
        "6,0.466666666667,SgnQ,0.05,0.2,0.25,400,0\n");
}

TEST_CASE("json round trips for laws and reports") {
  const ThetaLaw law = ThetaLaw::pareto(12.0, 0.375, 8.0);
  const ThetaLaw back = theta_law_from_json(theta_law_to_json(law));
  CHECK(back.kind == law.kind);
  CHECK(back.shape == law.shape);
  CHECK(back.scale == law.scale);
  CHECK(back.beta == law.beta);

  const MembershipLaw mem = MembershipLaw::with_dirichlet(
      Eigen::VectorXd::Constant(3, 0.25), 0.25);
  const MembershipLaw mem_back = mem_law_from_json(mem_law_to_json(mem));
  CHECK(mem_back.point_weights == mem.point_weights);
  CHECK(mem_back.dirichlet_weight == mem.dirichlet_weight);

  json doc = {
      {"n", 4},
      {"K", 1},
      {"theta", {0.2, 0.3, 0.25, 0.4}},
      {"P", {{1.0}}},
      {"Pi", {{1.0}, {1.0}, {1.0}, {1.0}}},
  };
  const DcmmParams params = params_from_json(doc);
  CHECK(params.n() == 4);
  CHECK(params.theta[3] == 0.4);
  const json round = params_to_json(params);
  CHECK(round.at("n") == 4);
  CHECK(round.at("theta").size() == 4);
}

TEST_CASE("json serialization of scaling and phase results") {
  ScalingResult scaling;
  scaling.d = Eigen::Vector2d(1.5, 2.0);
  scaling.residual = 1e-13;
  scaling.iterations = 12;
  scaling.converged = true;
  const json sj = scaling_result_to_json(scaling);
  CHECK(sj.at("d").size() == 2);
  CHECK(sj.at("converged") == true);

  PhasePoint point;
  point.x = 3.0;
  point.y = 0.2;
  point.snr = 0.6;
  point.region = PhaseRegion::Boundary;
  const json pj = phase_point_to_json(point);
  CHECK(pj.at("region") == "boundary");

  TestReport report;
  report.test = "SgnQ";
  report.statistic = 1.25;
  report.nuisance = 3.0;
  report.z = -0.4;
  report.p_value = 0.65;
  report.alpha = 0.05;
  report.reject = false;
  const json rj = test_report_to_json(report);
  CHECK(rj.at("test") == "SgnQ");
  CHECK(rj.at("p_value") == doctest::Approx(0.65));
  // Schema keys are fixed.
  for (const char* key :
       {"test", "statistic", "nuisance", "z", "p_value", "alpha", "reject"})
    CHECK(rj.contains(key));
}

TEST_CASE("every preset runs end to end at a tiny scale") {
  for (const char* name : {"exp1a", "exp1b", "exp1c", "exp2a", "exp2b",
                           "exp3a", "exp3b", "exp3c", "fig2-null"}) {
    CAPTURE(name);
    ExperimentConfig config = preset(name, 80);
    config.reps_null = 4;
    config.reps_alt = 4;
    config.sweep.resize(1);
    config.master_seed = 99;
    const std::vector<ResultRow> rows = run_experiment(config);
    CHECK(rows.size() == config.tests.size());
    for (const auto& row : rows) {
      CHECK(row.reps + row.skipped ==
            config.reps_null + config.reps_alt);
    }
  }
}
