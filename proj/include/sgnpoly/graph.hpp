#ifndef SGNPOLY_GRAPH_HPP_
#define SGNPOLY_GRAPH_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace sgnpoly {

// Undirected simple graph stored as sorted adjacency lists (CSR layout).
// Immutable after construction; self-loops are rejected by the constructor.
class AdjacencyMatrix {
 public:
  // `edges` may contain duplicates and (i,j)/(j,i) pairs; they are merged.
  AdjacencyMatrix(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  std::int64_t edge_count() const { return edge_count_; }

  // V = 1' A 1 = sum of degrees = 2 * edge_count.
  double total_degree() const { return 2.0 * static_cast<double>(edge_count_); }
  double average_degree() const {
    return n_ > 0 ? total_degree() / n_ : 0.0;
  }

  int degree(int i) const {
    return static_cast<int>(offsets_[i + 1] - offsets_[i]);
  }
  std::span<const int> neighbors(int i) const {
    return {adjacency_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }
  bool has_edge(int i, int j) const;

  std::vector<std::pair<int, int>> edges() const;  // each once, i < j, sorted

 private:
  int n_ = 0;
  std::int64_t edge_count_ = 0;
  std::vector<std::int64_t> offsets_;  // n + 1
  std::vector<int> adjacency_;         // 2 * edge_count, sorted per node
};

// Independent Bernoulli(omega_ij) draw per unordered pair, keyed by
// (seed, min(i,j), max(i,j)); the diagonal is ignored.
// Throws InvalidProbability if an off-diagonal entry is outside [0,1).
AdjacencyMatrix sample_adjacency(const Eigen::MatrixXd& omega,
                                 std::uint64_t seed);

struct EdgeListSummary {
  std::int64_t duplicate_edges = 0;
  std::int64_t self_loops = 0;
};

// Whitespace-separated "i j" pairs, one per line; '#' starts a comment line.
// Duplicates and self-loops are dropped (counted in `summary`).
// n is max index + 1 unless a larger n_hint is given.
AdjacencyMatrix read_edge_list(std::istream& in, int index_base,
                               int n_hint = -1,
                               EdgeListSummary* summary = nullptr);

// Emits each edge once as "i j" with i < j, ascending lexicographic order.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& graph,
                     int index_base);

}  // namespace sgnpoly

#endif  // SGNPOLY_GRAPH_HPP_
