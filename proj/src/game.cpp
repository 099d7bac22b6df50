#include "elcr/game.hpp"

#include <algorithm>

#include "elcr/error.hpp"
#include "elcr/semantics.hpp"

namespace elcr {
namespace {

Formula cop_knows() { return know_value(Player::X, Term::var(Player::Y)); }
Formula robber_knows() { return know_value(Player::Y, Term::var(Player::X)); }

// The alternating prefix of length len, ending in K{x} y.
Formula tail(unsigned len, Player turn) {
  if (len == 0) return cop_knows();
  Formula rest = tail(len - 1, other(turn));
  return turn == Player::X ? can_move(Player::X, rest) : move(Player::Y, rest);
}

struct Point {
  std::shared_ptr<const KSightModel> model;
  Situation at;
};

std::vector<Point> successors(const Point& p, Player z, unsigned k) {
  std::vector<Point> out;
  for (auto& b : update(*p.model, p.at, z, k))
    out.push_back({std::make_shared<const KSightModel>(std::move(b.model)), b.landed});
  return out;
}

Plan extract(const Point& p, unsigned len, Player turn, unsigned k) {
  Plan plan;
  plan.at = p.at;
  if (len == 0) return plan;
  if (turn == Player::X) {
    const Formula rest = tail(len - 1, Player::Y);
    for (const auto& next : successors(p, Player::X, k))
      if (eval(*next.model, next.at, rest, k)) {
        plan.kind = Plan::Kind::Cop;
        plan.move = next.at.x;
        plan.children.push_back(extract(next, len - 1, Player::Y, k));
        return plan;
      }
    throw InternalError("plan extraction lost its witness");
  }
  plan.kind = Plan::Kind::Robber;
  for (const auto& next : successors(p, Player::Y, k)) plan.children.push_back(extract(next, len - 1, Player::X, k));
  return plan;
}

bool sound_from(const TraceState& s, const Plan& plan, unsigned k, unsigned limit) {
  if (s.actual != plan.at) return false;
  switch (plan.kind) {
    case Plan::Kind::Win:
      return s.half_move <= limit && eval(s.model, s.actual, cop_knows(), k);
    case Plan::Kind::Cop:
      if (s.mover != Player::X || plan.children.size() != 1) return false;
      return sound_from(step(s, plan.move, k), plan.children.front(), k, limit);
    case Plan::Kind::Robber: {
      if (s.mover != Player::Y) return false;
      for (Vertex t : s.model.graph().successors(s.actual.y)) {
        const Situation landed = s.actual.with(Player::Y, t);
        auto it = std::ranges::find_if(plan.children, [&](const Plan& c) { return c.at == landed; });
        if (it == plan.children.end() || !sound_from(step(s, t, k), *it, k, limit)) return false;
      }
      return true;
    }
  }
  return false;
}

void collect_targets(const Plan& plan, std::vector<Vertex>& out) {
  if (plan.kind == Plan::Kind::Cop) out.push_back(plan.move);
  for (const auto& c : plan.children) collect_targets(c, out);
}

}  // namespace

GameConfig GameConfig::from_start(ArenaPtr arena, Situation start, unsigned k, unsigned rounds) {
  return {synthesize_initial(std::move(arena), start, SightConfig::uniform(k)), start, k, rounds};
}

TraceState initial_state(const GameConfig& config) {
  config.initial.index_of(config.start);
  return {0, Player::X, config.start, config.initial};
}

TraceState step(const TraceState& state, Vertex target, unsigned k) {
  const auto& g = state.model.graph();
  const Vertex from = state.actual.at(state.mover);
  if (target >= g.size() || !g.has_edge(from, target))
    throw InputError(std::string("illegal move: ") + player_char(state.mover) + " cannot go from " + g.name(from) +
                     " to " + (target < g.size() ? g.name(target) : std::to_string(target)));
  const Situation landed = state.actual.with(state.mover, target);
  for (auto& b : update(state.model, state.actual, state.mover, k))
    if (b.landed == landed) return {state.half_move + 1, other(state.mover), landed, std::move(b.model)};
  throw InternalError("update produced no branch for a legal move");
}

TraceState step(const TraceState& state, Player who, Vertex target, unsigned k) {
  if (who != state.mover)
    throw InputError(std::string("wrong mover: it is ") + player_char(state.mover) + "'s turn");
  return step(state, target, k);
}

TraceResult trace(const GameConfig& config, const std::vector<Vertex>& moves) {
  TraceResult result;
  auto report = [&](TraceState s) {
    StageReport r;
    r.cop_knows = eval(s.model, s.actual, cop_knows(), config.k);
    r.robber_knows = eval(s.model, s.actual, robber_knows(), config.k);
    if (r.cop_knows && !result.cop_wins_at && s.half_move <= 2 * config.rounds) result.cop_wins_at = s.half_move;
    r.state = std::move(s);
    result.stages.push_back(std::move(r));
  };
  report(initial_state(config));
  for (Vertex v : moves) report(step(result.stages.back().state, v, config.k));
  return result;
}

Formula winning_formula(unsigned n) {
  std::vector<Formula> parts;
  for (unsigned len = 0; len <= 2 * n; ++len) parts.push_back(tail(len, Player::X));
  return disj_all(parts);
}

CopWinResult cop_wins(const GameConfig& config, unsigned max_rounds) {
  if (config.rounds > max_rounds)
    throw ResourceError("round limit " + std::to_string(config.rounds) + " exceeds the search guard of " +
                        std::to_string(max_rounds));
  CopWinResult result;
  result.wins = eval(config.initial, config.start, winning_formula(config.rounds), config.k);
  if (!result.wins) return result;

  const Point root{std::make_shared<const KSightModel>(config.initial), config.start};
  if (eval(*root.model, root.at, cop_knows(), config.k)) {
    result.plan = Plan{Plan::Kind::Win, root.at, 0, {}};
    return result;
  }
  for (const auto& next : successors(root, Player::X, config.k))
    for (unsigned len = 0; len < 2 * config.rounds; ++len)
      if (eval(*next.model, next.at, tail(len, Player::Y), config.k)) {
        Plan plan{Plan::Kind::Cop, root.at, next.at.x, {}};
        plan.children.push_back(extract(next, len, Player::Y, config.k));
        result.plan = std::move(plan);
        return result;
      }
  throw InternalError("winning formula holds but no witness was found");
}

bool plan_is_sound(const GameConfig& config, const Plan& plan) {
  return sound_from(initial_state(config), plan, config.k, 2 * config.rounds);
}

std::vector<Vertex> cop_targets(const Plan& plan) {
  std::vector<Vertex> out;
  collect_targets(plan, out);
  return out;
}

}  // namespace elcr
