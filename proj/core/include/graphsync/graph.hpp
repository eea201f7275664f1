#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace graphsync {

// Edge as given by users and files: 1-based vertex labels.
struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double omega = 1.0;
};

// Internal unordered edge, 0-based, stored with i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double omega = 1.0;
};

struct Neighbor {
  std::size_t vertex = 0;
  double omega = 1.0;
};

/// Finite undirected graph with symmetric nonnegative edge weights.
///
/// Each unordered pair is stored once, so omega(i, j) == omega(j, i) holds by
/// construction. Vertices are 0-based internally; the builders accept the
/// 1-based labels used in configuration files. Immutable once built.
class Graph {
 public:
  std::size_t size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t vertex) const;
  std::size_t degree(std::size_t vertex) const { return neighbors(vertex).size(); }
  bool adjacent(std::size_t a, std::size_t b) const;
  // 0 when the pair is not an edge.
  double weight(std::size_t a, std::size_t b) const;

  friend Graph build_graph(std::size_t n, std::span<const WeightedEdge> edges);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

Graph build_graph(std::size_t n, std::span<const WeightedEdge> edges);
Graph complete_graph(std::size_t n);

// cycle6, lattice6, ribbon6, square4, complete(n) / complete:n.
// Letters A..F map to vertices 1..6 in order.
Graph named_graph(std::string_view name);

// {"n": int, "edges": [[i, j, omega], ...]} with 1-based indices.
Graph graph_from_json(const nlohmann::json& doc);
Graph load_graph(const std::filesystem::path& path);
nlohmann::json graph_to_json(const Graph& graph);

// Accepts a named graph or a path to a JSON graph file.
Graph resolve_graph(std::string_view name_or_path);

}  // namespace graphsync
