#include "sgnpoly/stats.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sgnpoly/errors.hpp"

namespace sgnpoly {

namespace {

// Kahan-compensated accumulator; the order-4 identity subtracts large
// near-equal traces, so plain summation is not enough at scale.
class Kahan {
 public:
  void add(double x) {
    double y = x - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

std::atomic<int> g_dense_cap{20000};

}  // namespace

int dense_intermediate_cap() { return g_dense_cap.load(); }

void set_dense_intermediate_cap(int cap) {
  if (cap < 1) throw InvalidInput("dense cap must be positive");
  g_dense_cap.store(cap);
}

CenterVector eta_hat(const AdjacencyMatrix& graph) {
  const double v = graph.total_degree();
  if (v <= 0.0) throw DegenerateGraph("V = 0: eta_hat undefined");
  CenterVector center;
  center.v = v;
  center.eta.resize(graph.node_count());
  const double inv_sqrt_v = 1.0 / std::sqrt(v);
  for (int i = 0; i < graph.node_count(); ++i)
    center.eta[i] = graph.degree(i) * inv_sqrt_v;
  return center;
}

double distinct_cycle_sum(const AdjacencyMatrix& graph,
                          const Eigen::VectorXd& center, int m) {
  if (m != 3 && m != 4)
    throw UnsupportedOrder("matrix form exists only for m in {3,4}");
  const int n = graph.node_count();
  if (center.size() != n)
    throw InvalidInput("center length does not match node count");
  if (n > g_dense_cap.load())
    throw TooLarge("node count exceeds the dense-intermediate cap");
  if (n < m) return 0.0;

  const Eigen::VectorXd& c = center;

  // B = M^2 with M = A - c c', assembled as
  //   A^2 - (A c) c' - c (A c)' + (c' c) c c'.
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    auto nbrs = graph.neighbors(k);
    for (int j : nbrs) {
      double* col = b.col(j).data();
      for (int i : nbrs) col[i] += 1.0;
    }
  }
  Eigen::VectorXd ac = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j : graph.neighbors(i)) acc += c[j];
    ac[i] = acc;
  }
  const double cc = c.squaredNorm();
  b.noalias() -= ac * c.transpose();
  b.noalias() -= c * ac.transpose();
  b.noalias() += cc * (c * c.transpose());

  // Sums over the sparse support of A (ordered pairs, both directions).
  Kahan b_on_edges;   // sum_{A_ij = 1} B_ij
  Kahan edge_quad;    // sum_{A_ij = 1} c_i^2 c_j^2 (1 - 2 c_i c_j)
  Kahan edge_quart;   // sum_{A_ij = 1} [(1 - c_i c_j)^4 - (c_i c_j)^4]
  for (int i = 0; i < n; ++i) {
    const double ci = c[i];
    for (int j : graph.neighbors(i)) {
      b_on_edges.add(b(i, j));
      if (m == 4) {
        const double x = ci * c[j];
        edge_quad.add(ci * ci * c[j] * c[j] * (1.0 - 2.0 * x));
        const double x2 = x * x;
        edge_quart.add((1.0 - x) * (1.0 - x) * (1.0 - x) * (1.0 - x) -
                       x2 * x2);
      }
    }
  }

  // c' B c and per-row diagnostics.
  Eigen::VectorXd bc = b * c;
  Kahan cbc;
  for (int i = 0; i < n; ++i) cbc.add(c[i] * bc[i]);

  const double tr_m3_total = b_on_edges.value() - cbc.value();  // tr(M^3)

  if (m == 3) {
    // T = tr(M^3) - 3 tr(M o M^2) + 2 tr(M o M o M), diag(M) = -c_i^2.
    Kahan corr;
    for (int i = 0; i < n; ++i) {
      const double c2 = c[i] * c[i];
      corr.add(3.0 * c2 * b(i, i) - 2.0 * c2 * c2 * c2);
    }
    return tr_m3_total + corr.value();
  }

  // m == 4.
  Kahan frob;  // tr(M^4) = ||M^2||_F^2
  for (int j = 0; j < n; ++j) {
    const double* col = b.col(j).data();
    for (int i = 0; i < n; ++i) frob.add(col[i] * col[i]);
  }

  // diag(M^3)_i = sum_{j in N(i)} B_ij - c_i (B c)_i.
  Kahan t1;  // tr(M o M^3)
  Kahan t2;  // tr(M o M o M^2)
  Kahan t3;  // tr(M o M o M o M) = sum c_i^8
  Kahan t4;  // tr(M^2 o M^2)
  Kahan c4_sum;
  for (int i = 0; i < n; ++i) {
    double row_edge = 0.0;
    for (int j : graph.neighbors(i)) row_edge += b(i, j);
    const double diag_m3 = row_edge - c[i] * bc[i];
    const double c2 = c[i] * c[i];
    const double c4 = c2 * c2;
    t1.add(-c2 * diag_m3);
    t2.add(c4 * b(i, i));
    t3.add(c4 * c4);
    t4.add(b(i, i) * b(i, i));
    c4_sum.add(c4);
  }
  const double base = c4_sum.value() * c4_sum.value();  // sum_ij (c_i c_j)^4
  const double t5 = base + edge_quad.value();
  const double t6 = base + edge_quart.value();

  return frob.value() - 4.0 * t1.value() + 8.0 * t2.value() -
         6.0 * t3.value() - 2.0 * t4.value() + 2.0 * t5 + t6;
}

PolygonStatistic sgn_t(const AdjacencyMatrix& graph) {
  const CenterVector center = eta_hat(graph);
  return {3, distinct_cycle_sum(graph, center.eta, 3),
          PolygonMethod::MatrixForm};
}

PolygonStatistic sgn_q(const AdjacencyMatrix& graph) {
  const CenterVector center = eta_hat(graph);
  return {4, distinct_cycle_sum(graph, center.eta, 4),
          PolygonMethod::MatrixForm};
}

namespace {

double brute_force_recurse(const AdjacencyMatrix& graph,
                           const Eigen::VectorXd& c, int m, int first,
                           int prev, int depth, double product,
                           std::vector<char>& used) {
  const int n = graph.node_count();
  double total = 0.0;
  for (int next = 0; next < n; ++next) {
    if (used[next]) continue;
    const double entry =
        (graph.has_edge(prev, next) ? 1.0 : 0.0) - c[prev] * c[next];
    if (depth == m - 1) {
      const double closing =
          (graph.has_edge(next, first) ? 1.0 : 0.0) - c[next] * c[first];
      total += product * entry * closing;
    } else {
      used[next] = 1;
      total += brute_force_recurse(graph, c, m, first, next, depth + 1,
                                   product * entry, used);
      used[next] = 0;
    }
  }
  return total;
}

}  // namespace

double brute_force_polygon(const AdjacencyMatrix& graph,
                           const Eigen::VectorXd& center, int m) {
  const int n = graph.node_count();
  if (m < 3) throw UnsupportedOrder("polygon order must be >= 3");
  if (center.size() != n)
    throw InvalidInput("center length does not match node count");
  const bool affordable =
      (m == 3 && n <= 30) || (m == 4 && n <= 14) ||
      (m >= 5 && std::pow(static_cast<double>(n), m) <= 4.0e7);
  if (!affordable) throw TooLarge("brute-force polygon guard exceeded");
  if (n < m) return 0.0;

  std::vector<char> used(n, 0);
  double total = 0.0;
  for (int first = 0; first < n; ++first) {
    used[first] = 1;
    total += brute_force_recurse(graph, center, m, first, first, 1, 1.0, used);
    used[first] = 0;
  }
  return total;
}

double signed_cycle(const AdjacencyMatrix& graph, int m) {
  const double v = graph.total_degree();
  if (v <= 0.0) throw DegenerateGraph("V = 0: signed cycle undefined");
  const int n = graph.node_count();
  const double alpha_hat = v / (static_cast<double>(n) * (n - 1));
  const Eigen::VectorXd c =
      Eigen::VectorXd::Constant(n, std::sqrt(alpha_hat));
  return distinct_cycle_sum(graph, c, m);
}

double raw_cycle_count(const AdjacencyMatrix& graph, int m) {
  return distinct_cycle_sum(graph, Eigen::VectorXd::Zero(graph.node_count()),
                            m);
}

}  // namespace sgnpoly
