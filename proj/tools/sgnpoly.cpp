// Command-line front end: global testing statistics for undirected networks
// under degree-corrected mixed membership models, plus the simulation,
// scaling and phase-diagram machinery behind them.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/graph.hpp"
#include "sgnpoly/harness.hpp"
#include "sgnpoly/inference.hpp"
#include "sgnpoly/json_io.hpp"
#include "sgnpoly/model.hpp"
#include "sgnpoly/rng.hpp"
#include "sgnpoly/scaling.hpp"
#include "sgnpoly/spectral.hpp"
#include "sgnpoly/stats.hpp"

namespace {

using sgnpoly::json;

json load_json(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw sgnpoly::ParseError("cannot open '" + path + "'");
  return json::parse(in);
}

int run_test(const std::string& edges_path, double alpha,
             const std::string& tests_csv, int index_base, int n_hint) {
  sgnpoly::EdgeListSummary summary;
  std::ifstream file;
  std::istream* in = &std::cin;
  if (edges_path != "-") {
    file.open(edges_path);
    if (!file) throw sgnpoly::ParseError("cannot open '" + edges_path + "'");
    in = &file;
  }
  const sgnpoly::AdjacencyMatrix graph =
      sgnpoly::read_edge_list(*in, index_base, n_hint, &summary);
  if (summary.duplicate_edges > 0 || summary.self_loops > 0)
    std::cerr << "dropped " << summary.duplicate_edges << " duplicate edges, "
              << summary.self_loops << " self-loops\n";

  json reports = json::array();
  std::stringstream names(tests_csv);
  std::string name;
  while (std::getline(names, name, ',')) {
    sgnpoly::TestReport report;
    if (name == "sgnt")
      report = sgnpoly::sgn_t_test(graph, alpha);
    else if (name == "sgnq")
      report = sgnpoly::sgn_q_test(graph, alpha);
    else if (name == "signedcycle3")
      report = sgnpoly::signed_cycle3_test(graph, alpha);
    else
      throw CLI::ValidationError("--tests", "unknown test '" + name + "'");
    reports.push_back(sgnpoly::test_report_to_json(report));
  }
  std::cout << reports.dump(2) << '\n';
  return 0;
}

int run_simulate(const std::string& preset_name, int n_override,
                 std::uint64_t seed, int reps_override,
                 const std::string& out_path) {
  sgnpoly::ExperimentConfig config =
      sgnpoly::preset(preset_name, n_override);
  config.master_seed = seed;
  if (reps_override > 0) {
    config.reps_null = reps_override;
    config.reps_alt = reps_override;
  }
  const std::vector<sgnpoly::ResultRow> rows = sgnpoly::run_experiment(config);
  if (out_path == "-") {
    sgnpoly::write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw sgnpoly::ParseError("cannot open '" + out_path + "'");
    sgnpoly::write_csv(out, rows);
  }
  return 0;
}

int run_scale(const std::string& config_path) {
  const json config = load_json(config_path);
  const std::string op = config.at("op").get<std::string>();
  json out;
  if (op == "sinkhorn") {
    Eigen::MatrixXd a(config.at("A").size(), config.at("A").at(0).size());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        a(r, c) = config.at("A").at(r).at(c).get<double>();
    Eigen::VectorXd h(config.at("h").size());
    for (int i = 0; i < h.size(); ++i)
      h[i] = config.at("h").at(i).get<double>();
    out = sgnpoly::scaling_result_to_json(sgnpoly::sinkhorn_dad(a, h));
  } else if (op == "least-favorable") {
    const sgnpoly::DcmmParams params = sgnpoly::params_from_json(config);
    const sgnpoly::LfConstruction tag = sgnpoly::lf_construction_from_string(
        config.at("construction").get<std::string>());
    out = sgnpoly::lf_pair_to_json(
        sgnpoly::least_favorable(params.theta, params.p, params.pi, tag));
  } else if (op == "dirichlet-p") {
    Eigen::VectorXd alpha(config.at("alpha").size());
    for (int i = 0; i < alpha.size(); ++i)
      alpha[i] = config.at("alpha").at(i).get<double>();
    const Eigen::MatrixXd p = sgnpoly::dirichlet_p_construct(
        alpha, config.at("q_n").get<double>(),
        config.value("seed", std::uint64_t{0}));
    out = json::array();
    for (int r = 0; r < p.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < p.cols(); ++c) row.push_back(p(r, c));
      out.push_back(std::move(row));
    }
  } else if (op == "chi-square") {
    const sgnpoly::DcmmParams params = sgnpoly::params_from_json(config);
    const sgnpoly::MembershipLaw law =
        sgnpoly::mem_law_from_json(config.at("mem_law"));
    out = sgnpoly::mc_estimate_to_json(sgnpoly::chi_square_mc(
        params.theta, params.p, law, config.at("reps").get<int>(),
        config.value("seed", std::uint64_t{0})));
  } else {
    throw sgnpoly::InvalidInput("unknown scale op '" + op + "'");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_phase(const std::string& config_path, bool with_spectrum) {
  const sgnpoly::DcmmParams params =
      sgnpoly::params_from_json(load_json(config_path));
  const Eigen::MatrixXd omega = sgnpoly::build_omega(params);
  json out = sgnpoly::phase_point_to_json(sgnpoly::phase_classify(omega));
  if (with_spectrum)
    out["spectrum"] = sgnpoly::spectrum_to_json(sgnpoly::spectrum(omega));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_oracle_check(int trials) {
  double worst3 = 0.0, worst4 = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    sgnpoly::Prng rng(sgnpoly::hash_combine(0x0badc0deULL, trial));
    const int n = 5 + static_cast<int>(rng.uniform01() * 8);  // 5..12
    const double p = rng.uniform(0.2, 0.7);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < p) edges.emplace_back(i, j);
    const sgnpoly::AdjacencyMatrix graph(n, std::move(edges));

    Eigen::VectorXd center(n);
    if (trial % 3 == 0) {
      center.setZero();
    } else if (trial % 3 == 1 && graph.total_degree() > 0) {
      center = sgnpoly::eta_hat(graph).eta;
    } else {
      for (int i = 0; i < n; ++i) center[i] = rng.uniform(0.0, 0.6);
    }

    for (int m : {3, 4}) {
      const double fast = sgnpoly::distinct_cycle_sum(graph, center, m);
      const double slow = sgnpoly::brute_force_polygon(graph, center, m);
      const double scale = std::max({std::abs(fast), std::abs(slow), 1.0});
      const double rel = std::abs(fast - slow) / scale;
      (m == 3 ? worst3 : worst4) = std::max(m == 3 ? worst3 : worst4, rel);
    }
  }
  const bool pass = worst3 < 1e-8 && worst4 < 1e-8;
  json out{{"trials", trials},
           {"max_relative_error_m3", worst3},
           {"max_relative_error_m4", worst4},
           {"pass", pass}};
  std::cout << out.dump(2) << '\n';
  return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed Polygon network tests (SgnT / SgnQ)"};
  app.require_subcommand(1);

  auto* test_cmd = app.add_subcommand("test", "run tests on an edge list");
  std::string edges_path;
  double alpha = 0.05;
  std::string tests_csv = "sgnt,sgnq";
  int index_base = 0;
  int n_hint = -1;
  test_cmd->add_option("--edges", edges_path, "edge list file ('-' = stdin)")
      ->required();
  test_cmd->add_option("--alpha", alpha, "test level");
  test_cmd->add_option("--tests", tests_csv,
                       "comma list: sgnt,sgnq,signedcycle3");
  test_cmd->add_option("--index", index_base, "edge list index base (0 or 1)")
      ->check(CLI::IsMember({0, 1}));
  test_cmd->add_option("--n", n_hint, "node count (default: max index + 1)");

  auto* sim_cmd = app.add_subcommand("simulate", "run an experiment preset");
  std::string preset_name;
  int n_override = 0;
  std::uint64_t seed = 0;
  int reps_override = 0;
  std::string out_path;
  sim_cmd->add_option("--preset", preset_name,
                      "exp1a..exp3c or fig2-null")
      ->required();
  sim_cmd->add_option("--n", n_override, "override node count");
  sim_cmd->add_option("--seed", seed, "master seed");
  sim_cmd->add_option("--reps", reps_override, "override reps per hypothesis");
  sim_cmd->add_option("--out", out_path, "output CSV ('-' = stdout)")
      ->required();

  auto* scale_cmd =
      app.add_subcommand("scale", "matrix scaling / least-favorable pairs");
  std::string scale_config;
  scale_cmd->add_option("--config", scale_config, "JSON config ('-' = stdin)")
      ->required();

  auto* phase_cmd = app.add_subcommand("phase", "phase-diagram diagnostics");
  std::string phase_config;
  bool with_spectrum = false;
  phase_cmd
      ->add_option("--config", phase_config, "model JSON ('-' = stdin)")
      ->required();
  phase_cmd->add_flag("--spectrum", with_spectrum, "include spectrum");

  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "matrix form vs brute force equivalence");
  int trials = 300;
  oracle_cmd->add_option("--trials", trials, "number of random graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*test_cmd)
      return run_test(edges_path, alpha, tests_csv, index_base, n_hint);
    if (*sim_cmd)
      return run_simulate(preset_name, n_override, seed, reps_override,
                          out_path);
    if (*scale_cmd) return run_scale(scale_config);
    if (*phase_cmd) return run_phase(phase_config, with_spectrum);
    if (*oracle_cmd) return run_oracle_check(trials);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const sgnpoly::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
