#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/graph.hpp"
#include "sgnpoly/rng.hpp"
#include "sgnpoly/stats.hpp"
#include "test_util.hpp"

using namespace sgnpoly;

TEST_CASE("eta_hat: symmetric and sparse cases") {
  const AdjacencyMatrix k3 = test::complete_graph(3);
  const CenterVector c3 = eta_hat(k3);
  for (int i = 0; i < 3; ++i)
    CHECK(c3.eta[i] == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-15));

  const AdjacencyMatrix single(4, {{1, 2}});
  const CenterVector c = eta_hat(single);
  CHECK(c.eta[0] == 0.0);
  CHECK(c.eta[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c.eta[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c.eta[3] == 0.0);
  CHECK(c.eta.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));

  const AdjacencyMatrix empty(3, {});
  CHECK_THROWS_AS(eta_hat(empty), DegenerateGraph);
}

TEST_CASE("eta_hat norm identity ||eta||^2 = 1'A^2 1 / 1'A 1") {
  const AdjacencyMatrix g = test::er_graph(50, 0.2, 11);
  const CenterVector c = eta_hat(g);
  double degree_sq = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    degree_sq += static_cast<double>(g.degree(i)) * g.degree(i);
  CHECK(c.eta.squaredNorm() ==
        doctest::Approx(degree_sq / g.total_degree()).epsilon(1e-12));
}

TEST_CASE("distinct_cycle_sum: K3 with zero and eta-hat centers") {
  const AdjacencyMatrix k3 = test::complete_graph(3);
  CHECK(distinct_cycle_sum(k3, Eigen::VectorXd::Zero(3), 3) ==
        doctest::Approx(6.0).epsilon(1e-14));
  const CenterVector c = eta_hat(k3);
  CHECK(distinct_cycle_sum(k3, c.eta, 3) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("distinct_cycle_sum: order guard and center length guard") {
  const AdjacencyMatrix g = test::er_graph(8, 0.4, 2);
  CHECK_THROWS_AS(distinct_cycle_sum(g, Eigen::VectorXd::Zero(8), 5),
                  UnsupportedOrder);
  CHECK_THROWS_AS(distinct_cycle_sum(g, Eigen::VectorXd::Zero(7), 3),
                  InvalidInput);
}

TEST_CASE("distinct_cycle_sum: dense cap is enforced and configurable") {
  const int old_cap = dense_intermediate_cap();
  set_dense_intermediate_cap(10);
  const AdjacencyMatrix g = test::er_graph(11, 0.4, 3);
  CHECK_THROWS_AS(distinct_cycle_sum(g, Eigen::VectorXd::Zero(11), 3),
                  TooLarge);
  set_dense_intermediate_cap(old_cap);
  CHECK_NOTHROW(distinct_cycle_sum(g, Eigen::VectorXd::Zero(11), 3));
}

TEST_CASE("oracle equivalence: matrix form vs brute force") {
  // Frozen-oracle sweep: random graphs, zero / eta-hat / random centers.
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Prng rng(hash_combine(0xfeedULL, trial));
    const int n = 5 + static_cast<int>(rng.uniform01() * 8);
    const AdjacencyMatrix g =
        test::er_graph(n, rng.uniform(0.2, 0.7), 1000 + trial);
    Eigen::VectorXd center(n);
    if (trial % 3 == 0) {
      center.setZero();
    } else if (trial % 3 == 1 && g.total_degree() > 0) {
      center = eta_hat(g).eta;
    } else {
      for (int i = 0; i < n; ++i) center[i] = rng.uniform(0.0, 0.6);
    }
    for (int m : {3, 4}) {
      const double fast = distinct_cycle_sum(g, center, m);
      const double slow = brute_force_polygon(g, center, m);
      const double scale = std::max({std::abs(fast), std::abs(slow), 1.0});
      CHECK(std::abs(fast - slow) / scale < 1e-8);
      ++checked;
    }
  }
  CHECK(checked == 240);
}

TEST_CASE("sgn_t: K3 value, path graph vs brute force, isolated nodes") {
  CHECK(sgn_t(test::complete_graph(3)).value ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-12));

  const AdjacencyMatrix path(3, {{0, 1}, {1, 2}});
  const CenterVector c = eta_hat(path);
  CHECK(sgn_t(path).value ==
        doctest::Approx(brute_force_polygon(path, c.eta, 3)).epsilon(1e-10));

  const AdjacencyMatrix g = test::er_graph(9, 0.5, 21);
  AdjacencyMatrix padded(g.node_count() + 1, g.edges());
  CHECK(sgn_t(padded).value ==
        doctest::Approx(sgn_t(g).value).epsilon(1e-12));
  CHECK(sgn_q(padded).value ==
        doctest::Approx(sgn_q(g).value).epsilon(1e-12));
}

TEST_CASE("sgn_q: K4 value and degenerate input") {
  CHECK(sgn_q(test::complete_graph(4)).value ==
        doctest::Approx(3.0 / 32.0).epsilon(1e-12));
  const AdjacencyMatrix empty(5, {});
  CHECK_THROWS_AS(sgn_q(empty), DegenerateGraph);
}

TEST_CASE("brute_force_polygon: zero center counts ordered cycles") {
  const AdjacencyMatrix g = test::er_graph(10, 0.5, 31);
  CHECK(brute_force_polygon(g, Eigen::VectorXd::Zero(10), 3) ==
        doctest::Approx(6.0 * test::count_triangles(g)).epsilon(1e-12));
}

TEST_CASE("brute_force_polygon: general order on complete graphs") {
  // Every ordered distinct m-tuple closes a cycle in K_n, so the count is
  // n (n-1) ... (n-m+1).
  const AdjacencyMatrix k6 = test::complete_graph(6);
  CHECK(brute_force_polygon(k6, Eigen::VectorXd::Zero(6), 5) ==
        doctest::Approx(6.0 * 5 * 4 * 3 * 2).epsilon(1e-12));
}

TEST_CASE("brute_force_polygon: guards") {
  const AdjacencyMatrix g31 = test::er_graph(31, 0.2, 8);
  CHECK_THROWS_AS(brute_force_polygon(g31, Eigen::VectorXd::Zero(31), 3),
                  TooLarge);
  const AdjacencyMatrix g15 = test::er_graph(15, 0.2, 8);
  CHECK_THROWS_AS(brute_force_polygon(g15, Eigen::VectorXd::Zero(15), 4),
                  TooLarge);
  CHECK_THROWS_AS(brute_force_polygon(g15, Eigen::VectorXd::Zero(15), 2),
                  UnsupportedOrder);
}

TEST_CASE("ideal statistic: zero mean under the null") {
  // Omega = theta theta' known, eta* = theta; the ideal polygon has exact
  // zero null mean, so the empirical mean over reps stays within 4 SE.
  const int n = 10, reps = 600;
  Eigen::VectorXd theta(n);
  Prng rng(77);
  for (int i = 0; i < n; ++i) theta[i] = rng.uniform(0.3, 0.5);
  const Eigen::MatrixXd omega = theta * theta.transpose();
  for (int m : {3, 4}) {
    double mean = 0.0, m2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const AdjacencyMatrix a = sample_adjacency(omega, 5000 + r);
      const double value = brute_force_polygon(a, theta, m);
      const double delta = value - mean;
      mean += delta / (r + 1);
      m2 += delta * (value - mean);
    }
    const double se = std::sqrt(m2 / (reps - 1) / reps);
    CHECK(std::abs(mean) <= 4.0 * se);
  }
}

TEST_CASE("signed_cycle: complete graph vanishes, brute force matches") {
  CHECK(signed_cycle(test::complete_graph(3), 3) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Regular graph: the centering constant is exactly d / (n-1), the
  // Erdos-Renyi MLE. 2-regular 6-cycle: alpha_hat = 2/5.
  const AdjacencyMatrix ring(
      6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  const double alpha_hat = ring.total_degree() / (6.0 * 5.0);
  CHECK(alpha_hat == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(6, std::sqrt(alpha_hat));
  CHECK(signed_cycle(ring, 3) ==
        doctest::Approx(brute_force_polygon(ring, c, 3)).epsilon(1e-12));

  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 6;
    const AdjacencyMatrix g = test::er_graph(n, 0.5, 600 + trial);
    if (g.total_degree() == 0) continue;
    const double alpha_hat =
        g.total_degree() / (static_cast<double>(n) * (n - 1));
    const Eigen::VectorXd c =
        Eigen::VectorXd::Constant(n, std::sqrt(alpha_hat));
    for (int m : {3, 4}) {
      const double fast = signed_cycle(g, m);
      const double slow = brute_force_polygon(g, c, m);
      const double scale = std::max({std::abs(fast), std::abs(slow), 1.0});
      CHECK(std::abs(fast - slow) / scale < 1e-10);
    }
  }
}

TEST_CASE("raw_cycle_count: trivial counts and triangle oracle") {
  CHECK(raw_cycle_count(test::complete_graph(3), 3) == doctest::Approx(6.0));
  CHECK(raw_cycle_count(test::complete_graph(4), 4) == doctest::Approx(24.0));
  const AdjacencyMatrix g = test::er_graph(10, 0.45, 77);
  CHECK(raw_cycle_count(g, 3) ==
        doctest::Approx(6.0 * test::count_triangles(g)).epsilon(1e-12));
}

TEST_CASE("permutation invariance") {
  const AdjacencyMatrix g = test::er_graph(40, 0.2, 123);
  std::vector<int> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  Prng rng(5);
  for (int i = 39; i > 0; --i)
    std::swap(perm[i], perm[static_cast<int>(rng.uniform01() * (i + 1))]);
  std::vector<std::pair<int, int>> relabeled;
  for (auto [i, j] : g.edges()) relabeled.emplace_back(perm[i], perm[j]);
  const AdjacencyMatrix h(40, std::move(relabeled));

  // Integer arithmetic path: exact equality.
  CHECK(raw_cycle_count(g, 3) == raw_cycle_count(h, 3));
  CHECK(raw_cycle_count(g, 4) == raw_cycle_count(h, 4));
  // eta-hat centered: equal up to reduction-order roundoff.
  CHECK(sgn_t(g).value == doctest::Approx(sgn_t(h).value).epsilon(1e-12));
  CHECK(sgn_q(g).value == doctest::Approx(sgn_q(h).value).epsilon(1e-12));
}

TEST_CASE("sampled means match exhaustive-enumeration expectations") {
  // n = 5 has 10 pairs; enumerate all 1024 graphs to get E[T] and E[Q]
  // exactly, then check the sampler + statistic pipeline against them.
  const int n = 5;
  Eigen::VectorXd theta(n);
  theta << 0.4, 0.5, 0.45, 0.55, 0.35;
  const Eigen::MatrixXd omega = theta * theta.transpose();

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  double exact_t = 0.0, exact_q = 0.0;
  for (int mask = 0; mask < (1 << pairs.size()); ++mask) {
    double probability = 1.0;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const double p = omega(pairs[b].first, pairs[b].second);
      if (mask & (1 << b)) {
        probability *= p;
        edges.push_back(pairs[b]);
      } else {
        probability *= 1.0 - p;
      }
    }
    const AdjacencyMatrix g(n, std::move(edges));
    if (g.total_degree() == 0) continue;  // T/Q undefined; sampler skips too
    exact_t += probability * sgn_t(g).value;
    exact_q += probability * sgn_q(g).value;
  }

  const int reps = 20000;
  double mean_t = 0.0, mean_q = 0.0, m2_t = 0.0, m2_q = 0.0;
  int used = 0;
  for (int r = 0; r < reps; ++r) {
    const AdjacencyMatrix g = sample_adjacency(omega, 77000 + r);
    if (g.total_degree() == 0) continue;
    ++used;
    const double t = sgn_t(g).value;
    const double q = sgn_q(g).value;
    const double dt = t - mean_t;
    mean_t += dt / used;
    m2_t += dt * (t - mean_t);
    const double dq = q - mean_q;
    mean_q += dq / used;
    m2_q += dq * (q - mean_q);
  }
  const double se_t = std::sqrt(m2_t / (used - 1) / used);
  const double se_q = std::sqrt(m2_q / (used - 1) / used);
  // Conditional-on-nonempty expectations: rescale the enumeration by the
  // total mass of nonempty graphs (the same conditioning the sampler sees).
  double nonempty_mass = 0.0;
  for (int mask = 1; mask < (1 << pairs.size()); ++mask) {
    double probability = 1.0;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const double p = omega(pairs[b].first, pairs[b].second);
      probability *= (mask & (1 << b)) ? p : 1.0 - p;
    }
    nonempty_mass += probability;
  }
  CHECK(std::abs(mean_t - exact_t / nonempty_mass) <= 4.0 * se_t);
  CHECK(std::abs(mean_q - exact_q / nonempty_mass) <= 4.0 * se_q);
}

TEST_CASE("polygon statistics carry order and method tags") {
  const AdjacencyMatrix g = test::complete_graph(4);
  const PolygonStatistic t = sgn_t(g);
  CHECK(t.order == 3);
  CHECK(t.method == PolygonMethod::MatrixForm);
  const PolygonStatistic q = sgn_q(g);
  CHECK(q.order == 4);
}
