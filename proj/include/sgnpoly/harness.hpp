#ifndef SGNPOLY_HARNESS_HPP_
#define SGNPOLY_HARNESS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sgnpoly/model.hpp"

namespace sgnpoly {

// How the community matrix is produced for each run.
struct PSpec {
  enum class Kind { Explicit, Example1, RandomOffdiag };
  Kind kind = Kind::Example1;
  Eigen::MatrixXd explicit_p;  // Kind::Explicit
  // Example1 / RandomOffdiag take b from the sweep point. RandomOffdiag
  // draws off-diagonals iid Unif(b - eps, b + eps), eps = min(1-b, b)/6,
  // once per sweep point (keyed by master seed), then holds them fixed.
  Eigen::MatrixXd materialize(int K, double b, std::uint64_t seed) const;
};

struct ExperimentConfig {
  int n = 0;
  int K = 1;
  int reps_null = 200;
  int reps_alt = 200;
  double alpha = 0.05;
  ThetaLaw theta_law;      // per-point beta comes from the sweep
  MembershipLaw mem_law;
  PSpec p_spec;
  std::vector<std::pair<double, double>> sweep;  // (beta_n, b)
  std::vector<std::string> tests;  // subset of {SgnT, SgnQ, SignedCycle3}
  std::uint64_t master_seed = 0;
  // > 0: the null resamples its own theta at this norm instead of reusing
  // the (scaled) alternative draw. Used by the fig2-null preset.
  double null_beta = 0.0;

  void validate() const;
};

struct ResultRow {
  double sweep_beta = 0.0;
  double sweep_b = 0.0;
  std::string test;
  double type1 = 0.0;
  double type2 = 0.0;
  double sum = 0.0;
  int reps = 0;     // reps actually used (null + alt)
  int skipped = 0;  // reps skipped due to data errors
  bool valid = true;  // false when > 5% of reps were skipped
};

// Runs the full protocol: per sweep point and rep, sample alternative
// params, build the degree-matched null, sample both adjacency matrices,
// apply every requested test, tabulate rejection frequencies. Reps run in
// parallel (capped by SGNPOLY_THREADS); results are bit-identical for a
// given master seed regardless of thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Paper parameterizations: exp1a exp1b exp1c exp2a exp2b exp3a exp3b exp3c
// fig2-null. n_override > 0 rescales to desk size. Throws UnknownPreset.
ExperimentConfig preset(const std::string& name, int n_override = 0);

// CSV with header sweep_beta,sweep_b,test,type1,type2,sum,reps,skipped.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace sgnpoly

#endif  // SGNPOLY_HARNESS_HPP_
