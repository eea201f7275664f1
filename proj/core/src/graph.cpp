#include "graphsync/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "graphsync/errors.hpp"

namespace graphsync {

std::span<const Neighbor> Graph::neighbors(std::size_t vertex) const {
  if (vertex >= n_) {
    throw Error(ErrorKind::kIndexOutOfRange, "vertex " + std::to_string(vertex) + " not in graph");
  }
  return adjacency_[vertex];
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
  const auto nb = neighbors(a);
  return std::any_of(nb.begin(), nb.end(), [b](const Neighbor& x) { return x.vertex == b; });
}

double Graph::weight(std::size_t a, std::size_t b) const {
  for (const auto& x : neighbors(a)) {
    if (x.vertex == b) return x.omega;
  }
  return 0.0;
}

Graph build_graph(std::size_t n, std::span<const WeightedEdge> edges) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "graph needs at least 2 vertices");
  Graph g;
  g.n_ = n;
  g.adjacency_.resize(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n) {
      throw Error(ErrorKind::kIndexOutOfRange, "edge (" + std::to_string(e.i) + ", " +
                                                   std::to_string(e.j) + ") outside [1, " +
                                                   std::to_string(n) + "]");
    }
    if (e.i == e.j) throw Error(ErrorKind::kSelfLoop, "self-loop at vertex " + std::to_string(e.i));
    if (!(e.omega >= 0.0)) {
      throw Error(ErrorKind::kNegativeWeight, "edge weight must be nonnegative");
    }
    const std::size_t a = std::min(e.i, e.j) - 1;
    const std::size_t b = std::max(e.i, e.j) - 1;
    if (!seen.emplace(a, b).second) {
      throw Error(ErrorKind::kDuplicateEdge, "duplicate edge (" + std::to_string(a + 1) + ", " +
                                                 std::to_string(b + 1) + ")");
    }
    g.edges_.push_back(Edge{a, b, e.omega});
    g.adjacency_[a].push_back(Neighbor{b, e.omega});
    g.adjacency_[b].push_back(Neighbor{a, e.omega});
  }
  return g;
}

Graph complete_graph(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "complete graph needs n >= 2");
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) edges.push_back({i, j, 1.0});
  }
  return build_graph(n, edges);
}

namespace {

std::optional<std::size_t> parse_complete(std::string_view name) {
  std::string_view digits;
  if (name.starts_with("complete(") && name.ends_with(")")) {
    digits = name.substr(9, name.size() - 10);
  } else if (name.starts_with("complete:")) {
    digits = name.substr(9);
  } else {
    return std::nullopt;
  }
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::kUnknownName, "bad complete-graph size in '" + std::string(name) + "'");
  }
  return n;
}

}  // namespace

Graph named_graph(std::string_view name) {
  // A=1 B=2 C=3 D=4 E=5 F=6
  if (name == "cycle6") {
    const WeightedEdge e[] = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}};
    return build_graph(6, e);
  }
  if (name == "lattice6") {
    const WeightedEdge e[] = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
    return build_graph(6, e);
  }
  if (name == "ribbon6") {
    const WeightedEdge e[] = {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}, {3, 4}};
    return build_graph(6, e);
  }
  if (name == "square4") {
    const WeightedEdge e[] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}};
    return build_graph(4, e);
  }
  if (auto n = parse_complete(name)) return complete_graph(*n);
  throw Error(ErrorKind::kUnknownName, "unknown graph '" + std::string(name) + "'");
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorKind::kConfigError, "graph document needs \"n\" and \"edges\"");
  }
  const auto n = doc.at("n").get<long long>();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "graph needs at least 2 vertices");
  std::vector<WeightedEdge> edges;
  for (const auto& item : doc.at("edges")) {
    if (!item.is_array() || item.size() < 2 || item.size() > 3) {
      throw Error(ErrorKind::kConfigError, "edge entries must be [i, j] or [i, j, omega]");
    }
    const auto i = item[0].get<long long>();
    const auto j = item[1].get<long long>();
    if (i < 1 || j < 1) throw Error(ErrorKind::kIndexOutOfRange, "edge indices are 1-based");
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                     item.size() == 3 ? item[2].get<double>() : 1.0});
  }
  return build_graph(static_cast<std::size_t>(n), edges);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open graph file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfigError, path.string() + ": " + e.what());
  }
  return graph_from_json(doc);
}

nlohmann::json graph_to_json(const Graph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.i + 1, e.j + 1, e.omega});
  return {{"n", graph.size()}, {"edges", std::move(edges)}};
}

Graph resolve_graph(std::string_view name_or_path) {
  const std::filesystem::path path{std::string(name_or_path)};
  if (path.extension() == ".json" || std::filesystem::is_regular_file(path)) return load_graph(path);
  return named_graph(name_or_path);
}

}  // namespace graphsync
