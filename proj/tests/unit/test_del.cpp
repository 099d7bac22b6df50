#include <doctest.h>

#include <algorithm>

#include "elcr/del.hpp"
#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/harness.hpp"

using namespace elcr;
using fixtures::at;

namespace {

std::vector<Situation> sits(const ArenaPtr& a, std::initializer_list<std::pair<const char*, const char*>> ps) {
  std::vector<Situation> out;
  for (auto [x, y] : ps) out.push_back(at(a, x, y));
  std::ranges::sort(out);
  return out;
}

// Non-singleton blocks as sorted situation lists.
std::vector<std::vector<Situation>> links(const KSightModel& m, Player p) {
  std::vector<std::vector<Situation>> out;
  for (const auto& b : m.classes(p).blocks) {
    if (b.size() < 2) continue;
    std::vector<Situation> block;
    for (auto i : b) block.push_back(m[i]);
    std::ranges::sort(block);
    out.push_back(block);
  }
  return out;
}

std::vector<Vertex> vs(const ArenaPtr& a, std::initializer_list<const char*> names) {
  std::vector<Vertex> out;
  for (const char* n : names) out.push_back(a->graph().index(n));
  return out;
}

}  // namespace

TEST_CASE("event models") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();
  const auto e = build_event_model(ex.model, ex.actual, Player::X, 1);
  CHECK(e.events.size() == a->graph().edge_count());
  for (std::size_t i = 0; i < e.events.size(); ++i)
    for (std::size_t j = 0; j < e.events.size(); ++j) {
      CHECK(e.related(Player::X, i, j) == (i == j));
      CHECK(e.related(Player::Y, i, j) == e.related(Player::Y, j, i));
    }
  // Robber at 4 sees 3, 4, 5 and 2: moves among those are told apart.
  const auto& g = a->graph();
  auto idx = [&](const char* s, const char* t) {
    const Event ev{g.index(s), g.index(t)};
    return static_cast<std::size_t>(std::ranges::find(e.events, ev) - e.events.begin());
  };
  CHECK_FALSE(e.related(Player::Y, idx("2", "3"), idx("3", "4")));
  CHECK(e.related(Player::Y, idx("0", "1"), idx("1", "2")) == false);
  CHECK(e.related(Player::Y, idx("0", "1"), idx("0", "1")));
  CHECK_THROWS_AS(build_event_model(ex.model, at(a, "5", "5"), Player::X, 1), InputError);
}

TEST_CASE("the four layers of the pursuit trace") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();
  const auto layers = del_layers(ex.model, ex.actual, vs(a, {"1", "5", "2"}), 1);
  REQUIRE(layers.size() == 4);

  CHECK(layers[1].model.sigma() == sits(a, {{"1", "4"}, {"1", "3"}, {"1", "2"}, {"2", "4"}}));
  CHECK(links(layers[1].model, Player::X) == std::vector<std::vector<Situation>>{sits(a, {{"1", "4"}, {"1", "3"}})});
  CHECK(links(layers[1].model, Player::Y).empty());

  CHECK(layers[2].model.sigma() == sits(a, {{"1", "5"}, {"1", "2"}, {"1", "4"}, {"1", "3"}, {"2", "2"}, {"2", "5"}}));
  CHECK(links(layers[2].model, Player::X) == std::vector<std::vector<Situation>>{sits(a, {{"1", "5"}, {"1", "4"}, {"1", "3"}})});

  CHECK(layers[3].model.size() == 8);
  CHECK(layers[3].model.contains(at(a, "2", "5")));
  CHECK(layers[3].del_local == sits(a, {{"2", "5"}}));

  for (const auto& l : layers) CHECK(l.del_local == l.elcr_sigma);
  CHECK(layers[1].elcr_sigma.size() == 2);
  CHECK(layers[2].elcr_sigma.size() == 3);
  CHECK(layers[3].elcr_sigma.size() == 1);

  for (const auto& l : layers) CHECK(validate_model(l.model).ok());
  CHECK_FALSE(layers[1].provenance.empty());
  CHECK_THROWS_AS(del_layers(ex.model, ex.actual, vs(a, {"3"}), 1), InputError);
}

TEST_CASE("single-step comparison") {
  const auto ex = fixtures::pursuit();
  const auto entries = compare(ex.model, ex.actual, Player::X, 1);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].equal);
  CHECK(entries[0].del_size == 4);
  CHECK(entries[0].elcr_size == 2);
}

TEST_CASE("products keep the k-sight conditions on random models") {
  const auto models = harness::random_models({.max_vertices = 4, .max_k = 2, .count = 40, .seed = 3});
  for (const auto& sm : models)
    for (Player z : kPlayers) {
      const auto p = product_update(sm.model, sm.actual, build_event_model(sm.model, sm.actual, z, sm.k), sm.k);
      CHECK(validate_model(p.model).ok());
      for (const auto& entry : compare(sm.model, sm.actual, z, sm.k)) CHECK(p.model.contains(entry.landed));
    }
}
