#include "elcr/structure.hpp"

#include <algorithm>

#include "elcr/error.hpp"

namespace elcr {
namespace {

bool reserved_name(const std::string& s) {
  return s == "x" || s == "y" || s == "true" || s == "false";
}

bool identifier(const std::string& s) {
  return !s.empty() && std::ranges::all_of(s, [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
  });
}

}  // namespace

Vocabulary::Vocabulary() { predicates[kEdgePredicate] = 2; }

Vocabulary::Vocabulary(std::vector<Symbol> cons, std::map<std::string, unsigned> preds)
    : constants(std::move(cons)), predicates(std::move(preds)) {
  std::ranges::sort(constants);
  constants.erase(std::unique(constants.begin(), constants.end()), constants.end());
  if (auto it = predicates.find(kEdgePredicate); it != predicates.end() && it->second != 2)
    throw InputError("predicate R must be binary");
  predicates[kEdgePredicate] = 2;
}

bool Vocabulary::has_constant(Symbol c) const { return std::ranges::binary_search(constants, c); }

std::optional<unsigned> Vocabulary::arity(const std::string& pred) const {
  if (auto it = predicates.find(pred); it != predicates.end()) return it->second;
  return std::nullopt;
}

std::vector<Term> Vocabulary::terms() const {
  std::vector<Term> out{Term::var(Player::X), Term::var(Player::Y)};
  for (Symbol c : constants) out.push_back(Term::constant(c));
  return out;
}

Arena::Arena(GameGraph graph, const std::vector<std::pair<std::string, std::string>>& constants,
             const std::map<std::string, Relation>& relations)
    : graph_(std::move(graph)), relations_(relations) {
  std::vector<std::pair<Symbol, Vertex>> bindings;
  if (constants.empty()) {
    for (Vertex v = 0; v < graph_.size(); ++v) bindings.emplace_back(Symbol("c_" + graph_.name(v)), v);
  } else {
    for (const auto& [name, vertex] : constants) {
      if (!identifier(name) || reserved_name(name)) throw InputError("invalid constant name '" + name + "'");
      bindings.emplace_back(Symbol(name), graph_.index(vertex));
    }
  }
  std::vector<Symbol> names;
  for (const auto& [c, v] : bindings) {
    if (!identifier(c.str())) throw InputError("invalid constant name '" + c.str() + "'");
    if (c.id() >= const_table_.size()) const_table_.resize(c.id() + 1, kNone);
    if (const_table_[c.id()] != kNone) throw InputError("duplicate constant '" + c.str() + "'");
    const_table_[c.id()] = v;
    names.push_back(c);
  }

  std::map<std::string, unsigned> arities;
  for (const auto& [pred, rel] : relations_) {
    if (pred == kEdgePredicate) throw InputError("predicate R is reserved for the edge relation");
    if (!identifier(pred) || reserved_name(pred)) throw InputError("invalid predicate name '" + pred + "'");
    for (const auto& tuple : rel.tuples) {
      if (tuple.size() != rel.arity) throw InputError("tuple arity mismatch in predicate '" + pred + "'");
      for (Vertex v : tuple)
        if (v >= graph_.size()) throw InputError("predicate '" + pred + "' mentions an unknown vertex");
    }
    arities[pred] = rel.arity;
  }
  vocab_ = Vocabulary(std::move(names), std::move(arities));

  names_by_vertex_.resize(graph_.size());
  for (Symbol c : vocab_.constants) names_by_vertex_[denotation(c)].push_back(c);
}

Vertex Arena::denotation_slow(Symbol c) const {
  throw InputError("unknown constant '" + c.str() + "'");
}

std::optional<Symbol> Arena::name_of(Vertex v) const {
  if (v >= names_by_vertex_.size() || names_by_vertex_[v].empty()) return std::nullopt;
  return names_by_vertex_[v].front();
}

bool Arena::holds(const std::string& pred, const std::vector<Vertex>& args) const {
  if (pred == kEdgePredicate) {
    if (args.size() != 2) throw InputError("R expects 2 arguments");
    return graph_.has_edge(args[0], args[1]);
  }
  auto it = relations_.find(pred);
  if (it == relations_.end()) throw InputError("unknown predicate '" + pred + "'");
  if (args.size() != it->second.arity)
    throw InputError("predicate '" + pred + "' expects " + std::to_string(it->second.arity) + " arguments");
  return it->second.tuples.contains(args);
}

}  // namespace elcr
