#include "ttextra/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ttextra {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("Graph: vertex count must be positive");
  for (auto& [i, j] : edges_) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("Graph: self-loop rejected");
    if (i < 0 || j >= n_) throw std::invalid_argument("Graph: vertex id out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(n_, {});
  for (const auto& [i, j] : edges_) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

std::string Graph::to_json() const {
  std::ostringstream os;
  os << "{\"n\": " << n_ << ", \"edges\": [";
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (k > 0) os << ", ";
    os << "[" << edges_[k].first << ", " << edges_[k].second << "]";
  }
  os << "]}";
  return os.str();
}

Graph ring(int n) {
  if (n < 2) throw std::invalid_argument("ring: need at least 2 vertices");
  if (n == 2) return Graph(2, {{0, 1}});
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n - 1; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

namespace {

// Uniform random labeled tree via a Prufer sequence of n-2 seeded draws.
std::vector<std::pair<int, int>> random_spanning_tree(int n, std::mt19937_64& rng) {
  if (n == 2) return {{0, 1}};
  std::vector<int> prufer(n - 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (auto& v : prufer) v = pick(rng);

  std::vector<int> degree(n, 1);
  for (int v : prufer) ++degree[v];

  std::vector<std::pair<int, int>> edges;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int v : prufer) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1) leaves.insert(v);
  }
  int u = *leaves.begin();
  int w = *std::next(leaves.begin());
  edges.emplace_back(std::min(u, w), std::max(u, w));
  return edges;
}

}  // namespace

Graph erdos_renyi_connected(int n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi_connected: need at least 2 vertices");
  if (edge_prob <= 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("erdos_renyi_connected: edge_prob must be in (0, 1]");

  std::mt19937_64 rng(seed);
  auto edges = random_spanning_tree(n, rng);
  std::set<std::pair<int, int>> present(edges.begin(), edges.end());

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double u = coin(rng);
      if (present.count({i, j})) continue;
      if (u < edge_prob) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

bool is_connected(const Graph& g) {
  std::vector<char> seen(g.n(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == g.n();
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.n());
  for (int i = 0; i < g.n(); ++i) d[i] = static_cast<int>(g.neighbors(i).size());
  return d;
}

}  // namespace ttextra
