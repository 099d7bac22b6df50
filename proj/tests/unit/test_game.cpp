#include <doctest.h>

#include <algorithm>

#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/game.hpp"
#include "elcr/oracle.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

using namespace elcr;
using fixtures::at;

namespace {

GameConfig config(const fixtures::Pointed& p, unsigned rounds) { return {p.model, p.actual, p.k, rounds}; }

std::vector<Vertex> vs(const ArenaPtr& a, std::initializer_list<const char*> names) {
  std::vector<Vertex> out;
  for (const char* n : names) out.push_back(a->graph().index(n));
  return out;
}

}  // namespace

TEST_CASE("the pursuit trace") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();
  const auto r = trace(config(ex, 2), vs(a, {"1", "5", "2"}));
  REQUIRE(r.stages.size() == 4);
  CHECK(r.stages[1].state.actual == at(a, "1", "4"));
  CHECK(r.stages[2].state.actual == at(a, "1", "5"));
  CHECK(r.stages[3].state.model.sigma() == std::vector<Situation>{at(a, "2", "5")});
  CHECK(r.stages[1].robber_knows);
  for (int i = 0; i < 3; ++i) CHECK_FALSE(r.stages[i].cop_knows);
  CHECK(r.stages[3].cop_knows);
  CHECK(r.cop_wins_at == 3u);

  const auto idle = trace(config(ex, 2), {});
  CHECK(idle.stages.size() == 1);
  CHECK_FALSE(idle.cop_wins_at.has_value());
  CHECK_THROWS_AS(trace(config(ex, 2), vs(a, {"2"})), InputError);
}

TEST_CASE("steps check whose turn it is") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();
  const auto s0 = initial_state(config(ex, 2));
  CHECK_THROWS_AS(step(s0, Player::Y, a->graph().index("5"), 1), InputError);
  const auto s1 = step(s0, Player::X, a->graph().index("1"), 1);
  CHECK(s1.mover == Player::Y);
  CHECK(s1.half_move == 1);
}

TEST_CASE("staying at vertex 3") {
  const auto f = fixtures::stay_at_three();
  const auto a = f.model.arena_ptr();
  const auto r = trace(config(f, 2), vs(a, {"3", "0", "3", "1"}));
  REQUIRE(r.stages.size() == 5);
  CHECK_FALSE(r.stages[3].cop_knows);
  CHECK(r.stages[4].cop_knows);
  CHECK(r.cop_wins_at == 4u);
}

TEST_CASE("winning formulas") {
  CHECK(winning_formula(0) == parse("K{x} y"));
  CHECK(winning_formula(1) == parse("K{x} y | <x> K{x} y | <x> [y] K{x} y"));
  CHECK(winning_formula(2) ==
        parse("K{x} y | <x> K{x} y | <x> [y] K{x} y | <x> [y] <x> K{x} y | <x> [y] <x> [y] K{x} y"));
}

TEST_CASE("cop strategies") {
  const auto f = fixtures::stay_at_three();
  const auto cfg = config(f, 2);
  const auto r = cop_wins(cfg);
  CHECK(r.wins);
  REQUIRE(r.plan.has_value());
  CHECK(plan_is_sound(cfg, *r.plan));
  const auto targets = cop_targets(*r.plan);
  CHECK_FALSE(targets.empty());
  CHECK(std::ranges::all_of(targets, [&](Vertex v) { return f.model.graph().name(v) == "3"; }));

  const auto ex = fixtures::pursuit();
  const auto e = cop_wins(config(ex, 2));
  CHECK(e.wins == eval(ex.model, ex.actual, winning_formula(2), 1));
  CHECK(e.wins == oracle::eval(ex.model, ex.actual, winning_formula(2), 1));
  CHECK(e.wins);
  if (e.plan) CHECK(plan_is_sound(config(ex, 2), *e.plan));
  CHECK_FALSE(cop_wins(config(ex, 1)).wins);

  const auto a = fixtures::g1();
  const auto seen = GameConfig::from_start(a, at(a, "0", "1"), 1, 2);
  const auto w = cop_wins(seen);
  CHECK(w.wins);
  REQUIRE(w.plan.has_value());
  CHECK(w.plan->kind == Plan::Kind::Win);
  CHECK(w.plan->children.empty());

  CHECK_THROWS_AS(cop_wins(config(ex, 9)), ResourceError);
}
