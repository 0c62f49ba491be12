#include "sgnpoly/inference.hpp"

#include <cmath>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/stats.hpp"

namespace sgnpoly {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// Wichura's algorithm AS 241 (PPND16 variant); relative error well below
// 1e-15 across (0,1).
double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("normal_quantile needs 0 < q < 1");
  const double p = q - 0.5;
  if (std::abs(p) <= 0.425) {
    const double r = 0.180625 - p * p;
    return p *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = p < 0.0 ? q : 1.0 - q;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return p < 0.0 ? -x : x;
}

double estimate_theta_norm_sq(const AdjacencyMatrix& graph) {
  const double v = graph.total_degree();
  if (v <= 0.0) throw DegenerateGraph("V = 0: estimator undefined");
  double degree_sq = 0.0;  // 1' A^2 1 = sum of squared degrees
  for (int i = 0; i < graph.node_count(); ++i) {
    const double d = graph.degree(i);
    degree_sq += d * d;
  }
  return degree_sq / v - 1.0;
}

double sgn_t_zscore(double t, double nuisance) {
  return t / std::sqrt(6.0 * nuisance * nuisance * nuisance);
}

double sgn_q_zscore(double q, double nuisance) {
  const double nu2 = nuisance * nuisance;
  return (q - 2.0 * nu2) / std::sqrt(8.0 * nu2 * nu2);
}

TestReport sgn_t_test(const AdjacencyMatrix& graph, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie in (0,1)");
  const double nuisance = estimate_theta_norm_sq(graph);
  if (!(nuisance > 0.0))
    throw NonpositiveNuisance("||eta_hat||^2 <= 1: SgnT test undefined");
  TestReport report;
  report.test = "SgnT";
  report.statistic = sgn_t(graph).value;
  report.nuisance = nuisance;
  report.z = sgn_t_zscore(report.statistic, nuisance);
  report.p_value = 2.0 * (1.0 - normal_cdf(std::abs(report.z)));
  report.alpha = alpha;
  report.reject = std::abs(report.z) >= normal_quantile(1.0 - alpha / 2.0);
  return report;
}

TestReport sgn_q_test(const AdjacencyMatrix& graph, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie in (0,1)");
  const double nuisance = estimate_theta_norm_sq(graph);
  if (!(nuisance > 0.0))
    throw NonpositiveNuisance("||eta_hat||^2 <= 1: SgnQ test undefined");
  TestReport report;
  report.test = "SgnQ";
  report.statistic = sgn_q(graph).value;
  report.nuisance = nuisance;
  report.z = sgn_q_zscore(report.statistic, nuisance);
  report.p_value = 1.0 - normal_cdf(report.z);
  report.alpha = alpha;
  report.reject = report.z >= normal_quantile(1.0 - alpha);
  return report;
}

TestReport signed_cycle3_test(const AdjacencyMatrix& graph, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie in (0,1)");
  const double v = graph.total_degree();
  if (v <= 0.0) throw DegenerateGraph("V = 0: signed cycle test undefined");
  const int n = graph.node_count();
  const double alpha_hat = v / (static_cast<double>(n) * (n - 1));
  const double per_node = n * alpha_hat * (1.0 - alpha_hat);
  if (!(per_node > 0.0))
    throw NonpositiveNuisance("Erdos-Renyi variance proxy is zero");
  TestReport report;
  report.test = "SignedCycle3";
  report.statistic = signed_cycle(graph, 3);
  report.nuisance = per_node;
  report.z = report.statistic /
             std::sqrt(6.0 * per_node * per_node * per_node);
  report.p_value = 2.0 * (1.0 - normal_cdf(std::abs(report.z)));
  report.alpha = alpha;
  report.reject = std::abs(report.z) >= normal_quantile(1.0 - alpha / 2.0);
  return report;
}

}  // namespace sgnpoly
