#include "sgnpoly/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sgnpoly/errors.hpp"
#include "sgnpoly/rng.hpp"

namespace sgnpoly {

AdjacencyMatrix::AdjacencyMatrix(int n, std::vector<std::pair<int, int>> edges)
    : n_(n) {
  if (n < 0) throw InvalidInput("node count must be nonnegative");
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw InvalidInput("edge endpoint out of range");
    if (i == j) throw InvalidInput("self-loop passed to AdjacencyMatrix");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edge_count_ = static_cast<std::int64_t>(edges.size());

  offsets_.assign(n + 1, 0);
  for (const auto& [i, j] : edges) {
    ++offsets_[i + 1];
    ++offsets_[j + 1];
  }
  for (int i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges.size());
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [i, j] : edges) {
    adjacency_[cursor[i]++] = j;
    adjacency_[cursor[j]++] = i;
  }
  for (int i = 0; i < n; ++i)
    std::sort(adjacency_.begin() + offsets_[i],
              adjacency_.begin() + offsets_[i + 1]);
}

bool AdjacencyMatrix::has_edge(int i, int j) const {
  auto nbrs = neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<std::pair<int, int>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int i = 0; i < n_; ++i)
    for (int j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

AdjacencyMatrix sample_adjacency(const Eigen::MatrixXd& omega,
                                 std::uint64_t seed) {
  const int n = static_cast<int>(omega.rows());
  if (omega.cols() != n) throw InvalidInput("omega must be square");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = omega(i, j);
      if (!(p >= 0.0) || !(p < 1.0)) {
        std::ostringstream msg;
        msg << "omega(" << i << "," << j << ") = " << p << " outside [0,1)";
        throw InvalidProbability(msg.str());
      }
      if (pair_uniform(seed, i, j) < p) edges.emplace_back(i, j);
    }
  }
  return AdjacencyMatrix(n, std::move(edges));
}

AdjacencyMatrix read_edge_list(std::istream& in, int index_base, int n_hint,
                               EdgeListSummary* summary) {
  if (index_base != 0 && index_base != 1)
    throw InvalidInput("index base must be 0 or 1");
  std::vector<std::pair<int, int>> edges;
  EdgeListSummary counts;
  std::string line;
  int max_index = -1;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long i = 0, j = 0;
    if (!(fields >> i >> j)) {
      std::ostringstream msg;
      msg << "line " << line_number << ": expected two integers";
      throw ParseError(msg.str());
    }
    std::string extra;
    if (fields >> extra) {
      std::ostringstream msg;
      msg << "line " << line_number << ": trailing token '" << extra << "'";
      throw ParseError(msg.str());
    }
    i -= index_base;
    j -= index_base;
    if (i < 0 || j < 0) {
      std::ostringstream msg;
      msg << "line " << line_number << ": index below base";
      throw ParseError(msg.str());
    }
    if (n_hint >= 0 && (i >= n_hint || j >= n_hint)) {
      std::ostringstream msg;
      msg << "line " << line_number << ": index out of range for n = "
          << n_hint;
      throw ParseError(msg.str());
    }
    if (i == j) {
      ++counts.self_loops;
      continue;
    }
    max_index = std::max(max_index, static_cast<int>(std::max(i, j)));
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  const int n = n_hint >= 0 ? n_hint : max_index + 1;

  // Count duplicates before the constructor silently merges them.
  auto canonical = edges;
  for (auto& [i, j] : canonical)
    if (i > j) std::swap(i, j);
  std::sort(canonical.begin(), canonical.end());
  counts.duplicate_edges =
      static_cast<std::int64_t>(canonical.size()) -
      std::distance(canonical.begin(),
                    std::unique(canonical.begin(), canonical.end()));
  if (summary) *summary = counts;
  return AdjacencyMatrix(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& graph,
                     int index_base) {
  if (index_base != 0 && index_base != 1)
    throw InvalidInput("index base must be 0 or 1");
  for (const auto& [i, j] : graph.edges())
    out << (i + index_base) << ' ' << (j + index_base) << '\n';
}

}  // namespace sgnpoly
