#include "elcr/graph.hpp"

#include <algorithm>
#include <deque>

#include "elcr/error.hpp"

namespace elcr {

GameGraph::GameGraph(std::vector<std::string> vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(vertices)) {
  if (names_.empty()) throw InputError("graph has no vertices");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("empty vertex id");
    if (!ids_.emplace(names_[i], static_cast<Vertex>(i)).second)
      throw InputError("duplicate vertex id '" + names_[i] + "'");
  }
  const std::size_t n = names_.size();
  adjacency_.assign(n * n, 0);
  for (const auto& [from, to] : edges) {
    const Vertex s = index(from);
    const Vertex t = index(to);
    adjacency_[s * n + t] = 1;
  }
  successors_.resize(n);
  predecessors_.resize(n);
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = 0; t < n; ++t)
      if (has_edge(s, t)) {
        successors_[s].push_back(t);
        predecessors_[t].push_back(s);
      }

  distances_.assign(n * n, kUnreachable);
  for (Vertex s = 0; s < n; ++s) {
    unsigned* row = &distances_[s * n];
    std::deque<Vertex> queue{s};
    row[s] = 0;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      auto visit = [&](Vertex t) {
        if (row[t] == kUnreachable) {
          row[t] = row[u] + 1;
          queue.push_back(t);
        }
      };
      for (Vertex t : successors_[u]) visit(t);
      for (Vertex t : predecessors_[u]) visit(t);
    }
  }
}

std::optional<Vertex> GameGraph::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

Vertex GameGraph::index(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

std::vector<std::pair<Vertex, Vertex>> GameGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex s = 0; s < size(); ++s)
    for (Vertex t : successors_[s]) out.emplace_back(s, t);
  return out;
}

std::size_t GameGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& row : successors_) count += row.size();
  return count;
}

bool GameGraph::is_serial() const {
  return std::ranges::none_of(successors_, [](const auto& row) { return row.empty(); });
}

std::vector<Vertex> GameGraph::sinks() const {
  std::vector<Vertex> out;
  for (Vertex s = 0; s < size(); ++s)
    if (successors_[s].empty()) out.push_back(s);
  return out;
}

std::optional<unsigned> GameGraph::distance(Vertex s, Vertex t) const {
  const unsigned d = distances_.at(s * size() + t);
  if (d == kUnreachable) return std::nullopt;
  return d;
}

std::vector<Vertex> sight_set(const GameGraph& graph, Vertex s, unsigned k) {
  if (s >= graph.size()) throw InputError("vertex index out of range");
  std::vector<bool> seen(graph.size(), false);
  std::vector<Vertex> frontier{s};
  seen[s] = true;
  for (unsigned step = 0; step < k && !frontier.empty(); ++step) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex t : graph.successors(u))
        if (!seen[t]) seen[t] = true, next.push_back(t);
      for (Vertex t : graph.predecessors(u))
        if (!seen[t]) seen[t] = true, next.push_back(t);
    }
    frontier = std::move(next);
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < graph.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

std::vector<Vertex> sight_set(const GameGraph& graph, std::string_view s, unsigned k) {
  return sight_set(graph, graph.index(s), k);
}

}  // namespace elcr
