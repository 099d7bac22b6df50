#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elcr/graph.hpp"
#include "elcr/term.hpp"

namespace elcr {

/// Predicate and constant symbols. R (binary) is always present.
struct Vocabulary {
  std::vector<Symbol> constants;             // sorted by spelling
  std::map<std::string, unsigned> predicates;  // symbol -> arity

  Vocabulary();
  explicit Vocabulary(std::vector<Symbol> cons, std::map<std::string, unsigned> preds = {});

  bool has_constant(Symbol c) const;
  std::optional<unsigned> arity(const std::string& pred) const;
  /// Every term usable in a formula: x, y, then the constants.
  std::vector<Term> terms() const;
};

inline const std::string kEdgePredicate = "R";

/// Denotation of a non-edge predicate.
struct Relation {
  unsigned arity = 0;
  std::set<std::vector<Vertex>> tuples;
};

/// A game graph together with the interpretation of every symbol.
class Arena {
 public:
  /// When constants is empty, each vertex v gets the constant "c_<v>".
  Arena(GameGraph graph, const std::vector<std::pair<std::string, std::string>>& constants = {},
        const std::map<std::string, Relation>& relations = {});

  const GameGraph& graph() const { return graph_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::map<std::string, Relation>& relations() const { return relations_; }

  /// Vertex named by c; throws InputError for constants outside the vocabulary.
  Vertex denotation(Symbol c) const {
    if (c.id() < const_table_.size() && const_table_[c.id()] != kNone) return const_table_[c.id()];
    return denotation_slow(c);
  }
  /// First constant (in sorted order) denoting v, if any.
  std::optional<Symbol> name_of(Vertex v) const;
  /// Constants denoting each vertex, indexed by vertex.
  const std::vector<std::vector<Symbol>>& names_by_vertex() const { return names_by_vertex_; }

  bool holds(const std::string& pred, const std::vector<Vertex>& args) const;

 private:
  static constexpr Vertex kNone = ~Vertex{0};
  Vertex denotation_slow(Symbol c) const;

  GameGraph graph_;
  Vocabulary vocab_;
  std::vector<Vertex> const_table_;  // symbol id -> vertex
  std::vector<std::vector<Symbol>> names_by_vertex_;
  std::map<std::string, Relation> relations_;
};

using ArenaPtr = std::shared_ptr<const Arena>;

}  // namespace elcr
