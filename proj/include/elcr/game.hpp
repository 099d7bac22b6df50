#pragma once

#include <optional>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/model.hpp"

namespace elcr {

struct GameConfig {
  KSightModel initial;  // epistemic state before the first move
  Situation start;
  unsigned k = 1;
  unsigned rounds = 2;

  /// Initial state synthesized from the start positions.
  static GameConfig from_start(ArenaPtr arena, Situation start, unsigned k, unsigned rounds);
};

struct TraceState {
  unsigned half_move = 0;
  Player mover = Player::X;
  Situation actual;
  KSightModel model;
};

TraceState initial_state(const GameConfig& config);

/// The mover goes to target; throws InputError for a move along no edge.
TraceState step(const TraceState& state, Vertex target, unsigned k);
/// Same, but checks that the named player is the one to move.
TraceState step(const TraceState& state, Player who, Vertex target, unsigned k);

struct StageReport {
  TraceState state;
  bool cop_knows = false;     // K{x} y
  bool robber_knows = false;  // K{y} x
};

struct TraceResult {
  std::vector<StageReport> stages;
  /// First half-move index at which K{x} y holds within the round limit.
  std::optional<unsigned> cop_wins_at;
};

/// Replays alternating moves, Cop first.
TraceResult trace(const GameConfig& config, const std::vector<Vertex>& moves);

/// Disjunction over all alternating <x>, [y] prefixes of length at most 2n,
/// each ending in K{x} y. Shortest prefix first.
Formula winning_formula(unsigned n);

/// A conditional move tree for Cop.
struct Plan {
  enum class Kind { Win, Cop, Robber };
  Kind kind = Kind::Win;
  Situation at;                // situation before the move (or the winning one)
  Vertex move = 0;             // Cop: the chosen target
  std::vector<Plan> children;  // Cop: one child; Robber: one per reply, in vertex order
};

struct CopWinResult {
  bool wins = false;
  std::optional<Plan> plan;
};

/// Model checks winning_formula(rounds) at the initial pointed model and,
/// when it holds, extracts a plan. Throws ResourceError if rounds exceeds
/// max_rounds.
CopWinResult cop_wins(const GameConfig& config, unsigned max_rounds = 4);

/// Every Robber reply allowed by the plan ends in a stage where K{x} y
/// holds, no later than half-move 2 * rounds.
bool plan_is_sound(const GameConfig& config, const Plan& plan);

/// Every vertex Cop moves to anywhere in the plan.
std::vector<Vertex> cop_targets(const Plan& plan);

}  // namespace elcr
