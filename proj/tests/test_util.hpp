#ifndef SGNPOLY_TEST_UTIL_HPP_
#define SGNPOLY_TEST_UTIL_HPP_

#include <utility>
#include <vector>

#include "sgnpoly/graph.hpp"
#include "sgnpoly/rng.hpp"

namespace sgnpoly::test {

inline AdjacencyMatrix complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return AdjacencyMatrix(n, std::move(edges));
}

inline AdjacencyMatrix er_graph(int n, double p, std::uint64_t seed) {
  Prng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) edges.emplace_back(i, j);
  return AdjacencyMatrix(n, std::move(edges));
}

// Combinatorial triangle counter, independent of the trace machinery.
inline long long count_triangles(const AdjacencyMatrix& g) {
  long long total = 0;
  const int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      for (int k = j + 1; k < n; ++k)
        if (g.has_edge(j, k) && g.has_edge(k, i)) ++total;
    }
  return total;
}

}  // namespace sgnpoly::test

#endif  // SGNPOLY_TEST_UTIL_HPP_
