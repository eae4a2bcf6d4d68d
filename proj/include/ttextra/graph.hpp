#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ttextra {

/// Undirected connected communication topology over n agents.
/// Edges are stored as sorted (i, j) pairs with i < j; neighbor lists are
/// derived at construction. Immutable after construction.
class Graph {
 public:
  Graph() : Graph(1, {}) {}
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return adjacency_.at(i); }
  bool has_edge(int i, int j) const;

  std::string to_json() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

Graph ring(int n);

/// Seeded connected Erdos-Renyi graph: a uniform random spanning tree is
/// sampled first, then each remaining pair is added with probability
/// edge_prob. Pure function of (n, edge_prob, seed).
Graph erdos_renyi_connected(int n, double edge_prob, std::uint64_t seed);

bool is_connected(const Graph& g);

std::vector<int> degrees(const Graph& g);

}  // namespace ttextra
