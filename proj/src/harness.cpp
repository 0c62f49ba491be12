#include "sgnpoly/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/graph.hpp"
#include "sgnpoly/inference.hpp"

namespace sgnpoly {

namespace {

constexpr std::uint64_t kPTag = 0x5053u;      // community matrix draw
constexpr std::uint64_t kAltTag = 1u;
constexpr std::uint64_t kNullTag = 0u;
constexpr std::uint64_t kGraphTag = 0xADu;

int thread_budget() {
  if (const char* env = std::getenv("SGNPOLY_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

TestReport run_named_test(const std::string& name,
                          const AdjacencyMatrix& graph, double alpha) {
  if (name == "SgnT") return sgn_t_test(graph, alpha);
  if (name == "SgnQ") return sgn_q_test(graph, alpha);
  if (name == "SignedCycle3") return signed_cycle3_test(graph, alpha);
  throw InvalidInput("unknown test '" + name + "'");
}

enum class RepOutcome : char { Accept = 0, Reject = 1, Skipped = 2 };

}  // namespace

Eigen::MatrixXd PSpec::materialize(int K, double b, std::uint64_t seed) const {
  switch (kind) {
    case Kind::Explicit: {
      if (explicit_p.rows() != K || explicit_p.cols() != K)
        throw InvalidInput("explicit P has wrong dimensions");
      return explicit_p;
    }
    case Kind::Example1:
      if (!(b > 0.0 && b < 1.0)) throw InvalidInput("need b in (0,1)");
      return example1_p(K, b);
    case Kind::RandomOffdiag: {
      if (!(b > 0.0 && b < 1.0)) throw InvalidInput("need b in (0,1)");
      const double eps = std::min(1.0 - b, b) / 6.0;
      Prng rng(hash_combine(seed, kPTag));
      Eigen::MatrixXd p = Eigen::MatrixXd::Identity(K, K);
      for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
          const double value = rng.uniform(b - eps, b + eps);
          p(i, j) = value;
          p(j, i) = value;
        }
      return p;
    }
  }
  throw InvalidInput("unknown P specification");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw InvalidInput("config: n must be >= 2");
  if (K < 1) throw InvalidInput("config: K must be >= 1");
  if (reps_null <= 0 || reps_alt <= 0)
    throw InvalidInput("config: reps must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidInput("config: alpha must be in (0,1)");
  if (sweep.empty()) throw InvalidInput("config: empty sweep");
  if (tests.empty()) throw InvalidInput("config: no tests requested");
  for (const auto& name : tests)
    if (name != "SgnT" && name != "SgnQ" && name != "SignedCycle3")
      throw InvalidInput("config: unknown test '" + name + "'");
  ThetaLaw shape_check = theta_law;
  shape_check.beta = 1.0;
  shape_check.validate();
  mem_law.validate();
  if (mem_law.K() != K) throw InvalidInput("config: membership law K mismatch");
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int test_count = static_cast<int>(config.tests.size());
  std::vector<ResultRow> rows;

  for (std::size_t point = 0; point < config.sweep.size(); ++point) {
    const auto [beta, b] = config.sweep[point];
    const Eigen::MatrixXd p = config.p_spec.materialize(
        config.K, b, hash_combine(config.master_seed, kPTag, point));

    ThetaLaw alt_law = config.theta_law;
    alt_law.beta = beta;
    ThetaLaw null_law = config.theta_law;
    null_law.beta = config.null_beta;  // used only when null_beta > 0

    const int reps = std::max(config.reps_null, config.reps_alt);
    // outcome[test][side * reps + r]; side 0 = null, 1 = alt.
    std::vector<std::vector<RepOutcome>> outcome(
        test_count, std::vector<RepOutcome>(2 * reps, RepOutcome::Skipped));

    auto run_rep = [&](int r) {
      const std::uint64_t alt_seed =
          hash_combine(config.master_seed, point, r, kAltTag);
      const std::uint64_t null_seed =
          hash_combine(config.master_seed, point, r, kNullTag);

      DcmmParams alt_params;
      bool alt_ok = true;
      try {
        alt_params = sample_params(config.n, config.K, alt_law,
                                   config.mem_law, p, alt_seed);
      } catch (const Error&) {
        alt_ok = false;
      }

      if (alt_ok && r < config.reps_alt) {
        try {
          const AdjacencyMatrix graph = sample_adjacency(
              build_omega(alt_params), hash_combine(alt_seed, kGraphTag));
          for (int t = 0; t < test_count; ++t) {
            try {
              const TestReport report =
                  run_named_test(config.tests[t], graph, config.alpha);
              outcome[t][reps + r] =
                  report.reject ? RepOutcome::Reject : RepOutcome::Accept;
            } catch (const Error&) {
            }
          }
        } catch (const Error&) {
        }
      }

      if (r < config.reps_null) {
        try {
          DcmmParams null_params;
          if (config.null_beta > 0.0) {
            null_params =
                sample_params(config.n, 1, null_law,
                              MembershipLaw::uniform_points(1),
                              Eigen::MatrixXd::Identity(1, 1), null_seed);
          } else {
            if (!alt_ok) throw InvalidInput("alternative draw failed");
            null_params = matched_null(alt_params, config.mem_law);
          }
          const AdjacencyMatrix graph = sample_adjacency(
              build_omega(null_params), hash_combine(null_seed, kGraphTag));
          for (int t = 0; t < test_count; ++t) {
            try {
              const TestReport report =
                  run_named_test(config.tests[t], graph, config.alpha);
              outcome[t][r] =
                  report.reject ? RepOutcome::Reject : RepOutcome::Accept;
            } catch (const Error&) {
            }
          }
        } catch (const Error&) {
        }
      }
    };

    const int workers = std::min(thread_budget(), reps);
    if (workers <= 1) {
      for (int r = 0; r < reps; ++r) run_rep(r);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1))
            run_rep(r);
        });
      for (auto& worker : pool) worker.join();
    }

    for (int t = 0; t < test_count; ++t) {
      ResultRow row;
      row.sweep_beta = beta;
      row.sweep_b = b;
      row.test = config.tests[t];
      int null_used = 0, null_rejects = 0;
      int alt_used = 0, alt_accepts = 0;
      int skipped = 0;
      for (int r = 0; r < config.reps_null; ++r) {
        switch (outcome[t][r]) {
          case RepOutcome::Reject:
            ++null_used;
            ++null_rejects;
            break;
          case RepOutcome::Accept:
            ++null_used;
            break;
          case RepOutcome::Skipped:
            ++skipped;
            break;
        }
      }
      for (int r = 0; r < config.reps_alt; ++r) {
        switch (outcome[t][reps + r]) {
          case RepOutcome::Reject:
            ++alt_used;
            break;
          case RepOutcome::Accept:
            ++alt_used;
            ++alt_accepts;
            break;
          case RepOutcome::Skipped:
            ++skipped;
            break;
        }
      }
      row.type1 = null_used > 0
                      ? static_cast<double>(null_rejects) / null_used
                      : 0.0;
      row.type2 =
          alt_used > 0 ? static_cast<double>(alt_accepts) / alt_used : 0.0;
      row.sum = row.type1 + row.type2;
      row.reps = null_used + alt_used;
      row.skipped = skipped;
      row.valid =
          skipped * 20 <= config.reps_null + config.reps_alt;  // <= 5%
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ExperimentConfig preset(const std::string& name, int n_override) {
  ExperimentConfig config;
  config.tests = {"SgnT", "SgnQ", "SignedCycle3"};

  auto sweep_for = [](double snr, double beta_lo, double beta_step,
                      int points) {
    std::vector<std::pair<double, double>> sweep;
    for (int i = 0; i < points; ++i) {
      const double beta = beta_lo + beta_step * i;
      sweep.emplace_back(beta, 1.0 - snr / beta);
    }
    return sweep;
  };

  if (name == "exp1a" || name == "exp1b" || name == "exp1c") {
    config.n = 2000;
    config.K = 2;
    config.mem_law = MembershipLaw::uniform_points(2);
    config.p_spec.kind = PSpec::Kind::Example1;
    config.sweep = sweep_for(3.2, 5.0, 2.0, 6);
    if (name == "exp1a") config.theta_law = ThetaLaw::uniform(2.0, 3.0, 0.0);
    if (name == "exp1b")
      config.theta_law = ThetaLaw::two_point(0.95, 1.0, 3.0, 0.0);
    if (name == "exp1c")
      config.theta_law = ThetaLaw::pareto(10.0, 0.375, 0.0);
  } else if (name == "exp2a") {
    config.n = 1000;
    config.K = 5;
    config.theta_law = ThetaLaw::pareto(10.0, 0.375, 0.0);
    config.mem_law = MembershipLaw::uniform_points(5);
    config.p_spec.kind = PSpec::Kind::RandomOffdiag;
    config.sweep = sweep_for(4.5, 6.0, 2.0, 6);
  } else if (name == "exp2b") {
    config.n = 3000;
    config.K = 10;
    config.theta_law = ThetaLaw::two_point(0.95, 1.0, 3.0, 0.0);
    Eigen::VectorXd weights(10);
    weights << 0.1, 0.1, 0.15, 0.15, 0.15, 0.15, 0.05, 0.05, 0.05, 0.05;
    config.mem_law = MembershipLaw::points(weights);
    config.p_spec.kind = PSpec::Kind::RandomOffdiag;
    config.sweep = sweep_for(5.2, 7.0, 2.0, 6);
  } else if (name == "exp3a" || name == "exp3b" || name == "exp3c") {
    config.n = 2000;
    config.K = 3;
    config.theta_law = ThetaLaw::uniform(2.0, 3.0, 0.0);
    config.p_spec.kind = PSpec::Kind::Example1;
    if (name == "exp3a") {
      Eigen::VectorXd weights(3);
      weights << 0.4, 0.3, 0.3;
      config.mem_law = MembershipLaw::points(weights);
      config.sweep = sweep_for(4.2, 6.0, 2.0, 6);
    } else if (name == "exp3b") {
      config.mem_law = MembershipLaw::with_dirichlet(
          Eigen::VectorXd::Constant(3, 0.3), 0.1);
      config.sweep = sweep_for(4.2, 6.0, 2.0, 6);
    } else {
      config.mem_law = MembershipLaw::with_dirichlet(
          Eigen::VectorXd::Constant(3, 0.25), 0.25);
      config.sweep = sweep_for(4.5, 6.0, 2.0, 6);
    }
  } else if (name == "fig2-null") {
    config.n = 2000;
    config.K = 2;
    config.reps_null = 1000;
    config.reps_alt = 1000;
    config.theta_law = ThetaLaw::pareto(12.0, 0.375, 0.0);
    config.mem_law = MembershipLaw::uniform_points(2);
    config.p_spec.kind = PSpec::Kind::Example1;
    config.sweep = {{9.0, 0.6}};
    config.null_beta = 8.0;
    config.tests = {"SgnT", "SgnQ"};
  } else {
    throw UnknownPreset("unknown preset '" + name + "'");
  }

  if (n_override > 0) config.n = n_override;
  return config;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "sweep_beta,sweep_b,test,type1,type2,sum,reps,skipped\n";
  char buffer[64];
  auto format = [&buffer](double x) {
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return std::string(buffer);
  };
  for (const auto& row : rows) {
    out << format(row.sweep_beta) << ',' << format(row.sweep_b) << ','
        << row.test << ',' << format(row.type1) << ',' << format(row.type2)
        << ',' << format(row.sum) << ',' << row.reps << ',' << row.skipped
        << '\n';
  }
}

}  // namespace sgnpoly
