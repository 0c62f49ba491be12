#ifndef SGNPOLY_INFERENCE_HPP_
#define SGNPOLY_INFERENCE_HPP_

#include <string>

#include "sgnpoly/graph.hpp"

namespace sgnpoly {

struct TestReport {
  std::string test;        // "SgnT", "SgnQ", "SignedCycle3"
  double statistic = 0.0;  // raw statistic
  double nuisance = 0.0;   // ||eta_hat||^2 - 1
  double z = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
};

// ||eta_hat||^2 - 1 = (1' A^2 1)/(1' A 1) - 1, the plug-in estimate of
// ||theta||^2 under the null. Throws DegenerateGraph when V = 0.
double estimate_theta_norm_sq(const AdjacencyMatrix& graph);

// Standard normal CDF (double precision via erfc).
double normal_cdf(double x);

// Inverse standard normal CDF, accurate to well below 1e-9.
// Throws DomainError unless 0 < q < 1.
double normal_quantile(double q);

// z = T / sqrt(6 nu^3); two-sided.
double sgn_t_zscore(double t, double nuisance);
// z = (Q - 2 nu^2) / sqrt(8 nu^4); one-sided.
double sgn_q_zscore(double q, double nuisance);

// Level-alpha tests. Throw DegenerateGraph when V = 0 and
// NonpositiveNuisance when ||eta_hat||^2 <= 1.
TestReport sgn_t_test(const AdjacencyMatrix& graph, double alpha);
TestReport sgn_q_test(const AdjacencyMatrix& graph, double alpha);

// Baseline: Signed Cycle (m = 3) normalized against its Erdos-Renyi null
// variance 6 (n alpha_hat (1 - alpha_hat))^3; two-sided.
TestReport signed_cycle3_test(const AdjacencyMatrix& graph, double alpha);

}  // namespace sgnpoly

#endif  // SGNPOLY_INFERENCE_HPP_
