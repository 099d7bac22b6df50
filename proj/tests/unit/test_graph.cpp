#include <doctest.h>

#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/oracle.hpp"

using namespace elcr;

namespace {

std::vector<std::string> names(const GameGraph& g, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(g.name(v));
  return out;
}

}  // namespace

TEST_CASE("sight sets on the fixture graphs") {
  const auto& g1 = fixtures::g1()->graph();
  CHECK(names(g1, sight_set(g1, "0", 1)) == std::vector<std::string>{"0", "1", "5"});
  const auto& g2 = fixtures::g2()->graph();
  CHECK(names(g2, sight_set(g2, "s6", 2)) == std::vector<std::string>{"s0", "s1", "s2", "s3", "s4", "s6"});
  for (Vertex v = 0; v < g1.size(); ++v) CHECK(sight_set(g1, v, 0) == std::vector<Vertex>{v});
}

TEST_CASE("sight sets agree with a relaxation oracle") {
  for (const auto& arena : {fixtures::g1(), fixtures::g2(), fixtures::path5(), fixtures::fork()}) {
    const auto& g = arena->graph();
    for (Vertex v = 0; v < g.size(); ++v)
      for (unsigned k = 0; k <= 4; ++k) {
        const auto naive = oracle::sight(g, v, k);
        CHECK(sight_set(g, v, k) == std::vector<Vertex>(naive.begin(), naive.end()));
        for (Vertex t = 0; t < g.size(); ++t) CHECK(g.within(v, t, k) == naive.contains(t));
      }
  }
}

TEST_CASE("graph construction and queries") {
  const auto& g1 = fixtures::g1()->graph();
  CHECK(g1.size() == 6);
  CHECK(g1.edge_count() == 9);
  CHECK(g1.is_serial());
  CHECK(g1.has_edge(g1.index("3"), g1.index("3")));
  CHECK_FALSE(g1.has_edge(g1.index("1"), g1.index("0")));
  CHECK(g1.distance(g1.index("0"), g1.index("3")) == 3u);
  CHECK_THROWS_AS(g1.index("9"), InputError);
  CHECK_THROWS_AS(sight_set(g1, "9", 1), InputError);

  const GameGraph sink({"a", "b"}, {{"a", "b"}});
  CHECK_FALSE(sink.is_serial());
  CHECK(sink.sinks() == std::vector<Vertex>{1});
  CHECK_FALSE(GameGraph({"a", "b"}, {}).distance(0, 1).has_value());
  CHECK_THROWS_AS(GameGraph({"a", "a"}, {}), InputError);
  CHECK_THROWS_AS(GameGraph({"a"}, {{"a", "b"}}), InputError);
}

TEST_CASE("arena constants and relations") {
  const auto arena = fixtures::g1();
  CHECK(arena->vocabulary().constants.size() == 6);
  CHECK(arena->denotation(Symbol("c_3")) == arena->graph().index("3"));
  CHECK(arena->name_of(arena->graph().index("4")) == Symbol("c_4"));
  CHECK(arena->holds("R", {0, 1}));
  CHECK_FALSE(arena->holds("R", {1, 0}));
  CHECK_THROWS_AS(arena->denotation(Symbol("nowhere")), InputError);

  const Arena named(GameGraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), {{"home", "a"}, {"away", "b"}, {"also", "b"}},
                    {{"P", Relation{1, {{0}}}}});
  CHECK(named.vocabulary().constants.size() == 3);
  CHECK(named.names_by_vertex()[1].size() == 2);
  CHECK(named.holds("P", {0}));
  CHECK_FALSE(named.holds("P", {1}));
  CHECK(named.vocabulary().arity("P") == 1u);
  CHECK(named.vocabulary().arity("R") == 2u);
}
