#pragma once

#include <utility>
#include <vector>

#include "elcr/model.hpp"

namespace elcr {

struct Event {
  Vertex from = 0;
  Vertex to = 0;
  friend auto operator<=>(const Event&, const Event&) = default;
};

/// Action structure for one move of `mover`, seen from the anchor
/// situation. Events are the graph's edges in index order.
struct EventModel {
  Player mover = Player::X;
  Situation anchor;
  unsigned k = 0;
  std::vector<Event> events;
  std::vector<std::vector<bool>> approx[2];  // [player][i][j]

  bool related(Player p, std::size_t i, std::size_t j) const { return approx[static_cast<int>(p)][i][j]; }
  /// Equivalence classes of events for p, each a sorted list of event indices.
  std::vector<std::vector<std::size_t>> classes(Player p) const;
};

EventModel build_event_model(const KSightModel& m, const Situation& sigma, Player z, unsigned k);

struct Provenance {
  Situation origin;
  Event event;
  friend auto operator<=>(const Provenance&, const Provenance&) = default;
};

/// Product of a model and an event model. Raw product situations landing
/// on the same positions are identified; provenance keeps every pair that
/// produced each one.
struct DelProduct {
  KSightModel model;
  std::vector<std::vector<Provenance>> provenance;  // per situation index of model
};

DelProduct product_update(const KSightModel& m, const Situation& sigma, const EventModel& e, unsigned k);

struct DelLayer {
  KSightModel model;
  Situation actual;
  std::vector<std::vector<Provenance>> provenance;  // empty for the first layer
  std::vector<Situation> elcr_sigma;                // ELCR situation set at the same stage
  std::vector<Situation> del_local;                 // local part of model around actual
};

/// Chains product updates along the actual moves, starting from (m, actual).
/// Each layer is the product of the previous layer, not of the ELCR state.
/// Moves alternate starting with `first`.
std::vector<DelLayer> del_layers(const KSightModel& m, const Situation& actual, const std::vector<Vertex>& moves,
                                 unsigned k, Player first = Player::X);

struct ComparisonEntry {
  Situation landed;
  std::vector<Situation> del_local;   // local part of the product around landed
  std::vector<Situation> elcr_sigma;  // situation set of the matching update branch
  std::vector<Situation> elcr_local;  // its local part around landed
  bool equal = false;                 // del_local == elcr_sigma
  std::size_t del_size = 0;           // situations in the whole product
  std::size_t elcr_size = 0;
};

/// For every legal move of z from sigma, checks whether the product's local
/// part around the new situation equals the update's situation set.
std::vector<ComparisonEntry> compare(const KSightModel& m, const Situation& sigma, Player z, unsigned k);

}  // namespace elcr
