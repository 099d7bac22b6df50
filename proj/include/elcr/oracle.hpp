#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/model.hpp"

/// A deliberately naive second implementation of the semantics, written
/// straight from the definitions with sets of situations and explicit
/// relation pairs. Used only to cross-check the main evaluator.
namespace elcr::oracle {

struct World {
  ArenaPtr arena;
  std::set<Situation> sigma;
  std::set<std::pair<Situation, Situation>> related[2];  // per player, reflexive and symmetric
};

World from_model(const KSightModel& m);

/// Vertices within k steps over the symmetric closure, by repeated relaxation.
std::set<Vertex> sight(const GameGraph& g, Vertex s, unsigned k);

/// Every (landed, next world) after z moves from s; joint move when z is empty.
std::vector<std::pair<Situation, World>> branches(const World& w, const Situation& s, std::optional<Player> z,
                                                  unsigned k);

bool eval(const World& w, const Situation& s, const Formula& f, unsigned k);
inline bool eval(const KSightModel& m, const Situation& s, const Formula& f, unsigned k) {
  return eval(from_model(m), s, f, k);
}

}  // namespace elcr::oracle
