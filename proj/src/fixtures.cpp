#include "elcr/fixtures.hpp"

namespace elcr::fixtures {
namespace {

ArenaPtr make(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges) {
  return std::make_shared<const Arena>(GameGraph(std::move(vertices), edges));
}

Pointed synthesized(ArenaPtr arena, std::string_view x, std::string_view y, unsigned k) {
  const Situation s = at(arena, x, y);
  return {synthesize_initial(arena, s, SightConfig::uniform(k)), s, k};
}

}  // namespace

Situation at(const ArenaPtr& arena, std::string_view x, std::string_view y) {
  return {arena->graph().index(x), arena->graph().index(y)};
}

ArenaPtr g1() {
  static const ArenaPtr a = make({"0", "1", "2", "3", "4", "5"}, {{"0", "1"},
                                                                  {"1", "2"},
                                                                  {"2", "3"},
                                                                  {"3", "4"},
                                                                  {"4", "5"},
                                                                  {"5", "0"},
                                                                  {"2", "4"},
                                                                  {"4", "2"},
                                                                  {"3", "3"}});
  return a;
}

ArenaPtr g2() {
  static const ArenaPtr a = make({"s0", "s1", "s2", "s3", "s4", "s5", "s6"}, {{"s0", "s1"},
                                                                              {"s1", "s2"},
                                                                              {"s0", "s3"},
                                                                              {"s4", "s3"},
                                                                              {"s5", "s4"},
                                                                              {"s6", "s1"},
                                                                              {"s3", "s6"},
                                                                              {"s2", "s5"},
                                                                              {"s5", "s2"},
                                                                              {"s6", "s6"}});
  return a;
}

ArenaPtr path5() {
  static const ArenaPtr a = make({"s1", "s2", "s3", "s4", "s5"},
                                 {{"s1", "s2"}, {"s2", "s3"}, {"s3", "s4"}, {"s4", "s5"}, {"s5", "s5"}});
  return a;
}

ArenaPtr loop_path5() {
  static const ArenaPtr a = make({"s1", "s2", "s3", "s4", "s5"}, {{"s1", "s2"},
                                                                  {"s2", "s3"},
                                                                  {"s3", "s4"},
                                                                  {"s2", "s2"},
                                                                  {"s4", "s5"},
                                                                  {"s5", "s5"}});
  return a;
}

ArenaPtr fork() {
  static const ArenaPtr a = make({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "b"}, {"c", "c"}});
  return a;
}

Pointed pursuit() { return synthesized(g1(), "0", "4", 1); }
Pointed wide_sight() { return synthesized(g2(), "s5", "s6", 2); }
Pointed simultaneous() { return synthesized(path5(), "s1", "s3", 1); }
Pointed stay_at_three() { return synthesized(g1(), "3", "5", 1); }
Pointed fork_probe() { return synthesized(fork(), "a", "a", 0); }

Pointed stability() {
  const ArenaPtr a = loop_path5();
  const Situation actual = at(a, "s1", "s4");
  return {KSightModel::discrete(a, SightConfig::uniform(1), {actual, at(a, "s2", "s5")}), actual, 1};
}

}  // namespace elcr::fixtures
