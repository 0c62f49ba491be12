#ifndef SGNPOLY_STATS_HPP_
#define SGNPOLY_STATS_HPP_

#include <Eigen/Dense>
#include <string>

#include "sgnpoly/graph.hpp"

namespace sgnpoly {

// eta_hat = A 1 / sqrt(V) with V = 1' A 1.
struct CenterVector {
  Eigen::VectorXd eta;
  double v = 0.0;  // V = 1' A 1
};

// Throws DegenerateGraph when V = 0.
CenterVector eta_hat(const AdjacencyMatrix& graph);

// Node-count ceiling for dense n x n intermediates (default 20000).
int dense_intermediate_cap();
void set_dense_intermediate_cap(int cap);

enum class PolygonMethod { MatrixForm, BruteForce, Ideal };

struct PolygonStatistic {
  int order = 0;
  double value = 0.0;
  PolygonMethod method = PolygonMethod::MatrixForm;
};

// Sum over ordered distinct m-tuples of prod_t M_{i_t i_{t+1}} with
// M = A - c c', evaluated through the trace identities (never the m-fold
// loop). Cost O(n^2 dbar); supports m in {3,4} only.
double distinct_cycle_sum(const AdjacencyMatrix& graph,
                          const Eigen::VectorXd& center, int m);

// Signed-Triangle statistic: distinct_cycle_sum with center eta_hat, m = 3.
PolygonStatistic sgn_t(const AdjacencyMatrix& graph);

// Signed-Quadrilateral statistic: same with m = 4.
PolygonStatistic sgn_q(const AdjacencyMatrix& graph);

// Literal sum over all ordered distinct m-tuples. Guard: n <= 30 for m = 3,
// n <= 14 for m >= 4 (throws TooLarge beyond).
double brute_force_polygon(const AdjacencyMatrix& graph,
                           const Eigen::VectorXd& center, int m);

// Signed Cycle: factors (A_{ij} - alpha_hat) with alpha_hat = V / (n(n-1)),
// realized as distinct_cycle_sum with the constant center sqrt(alpha_hat) 1.
double signed_cycle(const AdjacencyMatrix& graph, int m);

// Distinct-cycle count N (center 0): 6 x #triangles for m = 3, etc.
double raw_cycle_count(const AdjacencyMatrix& graph, int m);

}  // namespace sgnpoly

#endif  // SGNPOLY_STATS_HPP_
