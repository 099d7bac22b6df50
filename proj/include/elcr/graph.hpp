#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace elcr {

/// Index of a vertex in its graph's declaration order.
using Vertex = std::uint32_t;

/// Finite directed graph with named vertices: the arena of a game.
///
/// Construction rejects duplicate ids and edges with undeclared endpoints.
/// Seriality is not enforced here so that model validation can report it;
/// every move operation assumes it.
class GameGraph {
 public:
  GameGraph() = default;
  GameGraph(std::vector<std::string> vertices,
            const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Vertex v) const { return names_.at(v); }

  std::optional<Vertex> find(std::string_view name) const;
  /// Like find, but throws InputError for an unknown id.
  Vertex index(std::string_view name) const;

  bool has_edge(Vertex s, Vertex t) const { return adjacency_[s * size() + t] != 0; }
  std::span<const Vertex> successors(Vertex s) const { return successors_[s]; }
  std::span<const Vertex> predecessors(Vertex s) const { return predecessors_[s]; }
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  std::size_t edge_count() const;

  bool is_serial() const;
  std::vector<Vertex> sinks() const;

  /// Shortest path length in the symmetric closure; nullopt if disconnected.
  std::optional<unsigned> distance(Vertex s, Vertex t) const;
  /// t is reachable from s within k steps of the symmetric closure.
  bool within(Vertex s, Vertex t, unsigned k) const {
    const unsigned d = distances_[s * size() + t];
    return d != kUnreachable && d <= k;
  }

 private:
  static constexpr unsigned kUnreachable = ~0u;

  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> ids_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<Vertex>> successors_;
  std::vector<std::vector<Vertex>> predecessors_;
  std::vector<unsigned> distances_;
};

/// The vertices within k steps of s over the symmetric closure of the edge
/// relation, in ascending index order. Computed by bounded breadth-first
/// expansion.
std::vector<Vertex> sight_set(const GameGraph& graph, Vertex s, unsigned k);
std::vector<Vertex> sight_set(const GameGraph& graph, std::string_view s, unsigned k);

}  // namespace elcr
