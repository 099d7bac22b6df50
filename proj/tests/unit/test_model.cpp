#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/model_io.hpp"

using namespace elcr;
using fixtures::at;

namespace {

std::vector<Situation> sits(const ArenaPtr& a, std::initializer_list<std::pair<const char*, const char*>> ps) {
  std::vector<Situation> out;
  for (auto [x, y] : ps) out.push_back(at(a, x, y));
  std::ranges::sort(out);
  return out;
}

std::vector<Situation> sorted(std::vector<Situation> v) {
  std::ranges::sort(v);
  return v;
}

bool has_issue(const ValidationReport& r, ValidationIssue::Kind kind) {
  return std::ranges::any_of(r.issues, [&](const auto& i) { return i.kind == kind; });
}

}  // namespace

TEST_CASE("initial state of the pursuit example") {
  const auto a = fixtures::g1();
  const auto m = synthesize_initial(a, at(a, "0", "4"), SightConfig::uniform(1));
  const auto i = m.index_of(at(a, "0", "4"));
  CHECK(sorted(m.class_of(Player::X, i)) == sits(a, {{"0", "4"}, {"0", "2"}, {"0", "3"}}));
  CHECK(sorted(m.class_of(Player::Y, i)) == sits(a, {{"0", "4"}, {"1", "4"}}));
  CHECK(validate_model(m).ok());
  CHECK(local_part(m, at(a, "0", "4")) == sits(a, {{"0", "4"}, {"0", "2"}, {"0", "3"}, {"1", "4"}}));

  const auto seen = synthesize_initial(a, at(a, "0", "1"), SightConfig::uniform(1));
  CHECK(seen.sigma() == sits(a, {{"0", "1"}}));
  CHECK_THROWS_AS(synthesize_initial(a, Situation{9, 0}, SightConfig::uniform(1)), InputError);
}

TEST_CASE("initial state with sight two") {
  const auto a = fixtures::g2();
  const auto m = synthesize_initial(a, at(a, "s5", "s6"), SightConfig::uniform(2));
  const auto i = m.index_of(at(a, "s5", "s6"));
  CHECK(sorted(m.class_of(Player::X, i)) == sits(a, {{"s5", "s6"}, {"s5", "s0"}}));
  CHECK(sorted(m.class_of(Player::Y, i)) == sits(a, {{"s5", "s6"}}));
  CHECK(validate_model(m).ok());
}

TEST_CASE("successor sets") {
  const auto a = fixtures::g1();
  const auto& g = a->graph();
  CHECK(move_successors(at(a, "0", "4"), Player::X, g) == sits(a, {{"1", "4"}}));
  CHECK(move_successors(at(a, "1", "4"), Player::Y, g) == sits(a, {{"1", "5"}, {"1", "2"}}));
  CHECK(move_successors(at(a, "3", "5"), Player::X, g) == sits(a, {{"3", "5"}, {"4", "5"}}));
  CHECK(lift_successors(sits(a, {{"0", "4"}, {"1", "4"}}), Player::X, g) == sits(a, {{"1", "4"}, {"2", "4"}}));
  CHECK(lift_successors({}, Player::X, g).empty());
  CHECK(lift_successors(sits(a, {{"0", "4"}}), Player::X, g) == move_successors(at(a, "0", "4"), Player::X, g));
  CHECK(joint_successors(at(a, "0", "4"), g) == sits(a, {{"1", "5"}, {"1", "2"}}));
}

TEST_CASE("validation reports every defect") {
  const auto a = fixtures::loop_path5();
  const auto stable = fixtures::stability();
  CHECK(validate_model(stable.model).ok());
  CHECK(local_part(stable.model, stable.actual) == std::vector<Situation>{stable.actual});

  // Cop confuses two different own positions.
  const auto bad = KSightModel::make(a, SightConfig::uniform(1), sits(a, {{"s1", "s4"}, {"s2", "s5"}}), {{0, 1}},
                                     {{0}, {1}});
  for (unsigned k : {0u, 1u, 3u}) {
    const auto r = validate_model(bad, SightConfig::uniform(k));
    CHECK(has_issue(r, ValidationIssue::Kind::SightViolation));
  }

  const auto partial = KSightModel::make(a, SightConfig::uniform(1), sits(a, {{"s1", "s4"}, {"s2", "s5"}}), {{0}},
                                         {{0}, {1}});
  CHECK(has_issue(validate_model(partial), ValidationIssue::Kind::NotAPartition));

  const auto empty = KSightModel::make(a, SightConfig::uniform(1), {}, {}, {});
  CHECK(has_issue(validate_model(empty), ValidationIssue::Kind::EmptySigma));

  const auto sinky = std::make_shared<const Arena>(GameGraph({"a", "b"}, {{"a", "b"}}));
  const auto m = KSightModel::discrete(sinky, SightConfig::uniform(0), {Situation{0, 1}});
  CHECK(has_issue(validate_model(m), ValidationIssue::Kind::NonSerial));

  const auto near = KSightModel::by_position(a, SightConfig::uniform(1), sits(a, {{"s1", "s2"}, {"s1", "s4"}}));
  CHECK(has_issue(validate_model(near), ValidationIssue::Kind::SightViolation));
  CHECK(validate_model(near, SightConfig::uniform(0)).ok());
  CHECK(has_issue(validate_model(near, SightConfig{1, 0}), ValidationIssue::Kind::SightViolation));
  CHECK(validate_model(near, SightConfig{0, 1}).ok());
}

TEST_CASE("local part needs a member situation") {
  const auto ex = fixtures::pursuit();
  CHECK_THROWS_AS(local_part(ex.model, at(ex.model.arena_ptr(), "5", "5")), InputError);
}

TEST_CASE("model files") {
  const auto pm = load_model(ELCR_MODELS_DIR "/ex1.json");
  const auto ex = fixtures::pursuit();
  CHECK(pm.model.sigma() == ex.model.sigma());
  CHECK(pm.model.classes(Player::X) == ex.model.classes(Player::X));
  CHECK(pm.model.arena().vocabulary().constants.size() == 6);
  CHECK(pm.model.arena().denotation(Symbol("c4")) == pm.model.graph().index("4"));

  const auto back = model_from_json(model_to_json(pm));
  CHECK(back == pm);
  CHECK(model_to_json(back) == model_to_json(pm));

  const auto path = std::filesystem::temp_directory_path() / "elcr_unit_model.json";
  save_model(pm, path);
  CHECK(load_model(path) == pm);
  std::filesystem::remove(path);

  const auto r37 = load_model(ELCR_MODELS_DIR "/stability.json");
  CHECK(r37.model.sigma() == fixtures::stability().model.sigma());
  CHECK(validate_model(r37.model).ok());

  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), InputError);
  CHECK_THROWS_AS(parse_model("{"), InputError);
  CHECK_THROWS_AS(parse_model(R"({"vertices":["a"],"edges":[["a","a"]],"sight":{"x":0,"y":0},"actual":{"x":"a","y":"q"}})"),
                  InputError);
  CHECK_THROWS_AS(parse_model(R"({"vertices":["a"],"edges":[["a","a"]],"sight":{"x":0,"y":0}})"), InputError);
}

TEST_CASE("situations outside sigma are rejected") {
  const auto ex = fixtures::pursuit();
  CHECK_THROWS_AS(ex.model.index_of(at(ex.model.arena_ptr(), "3", "3")), InputError);
  CHECK_FALSE(ex.model.contains(at(ex.model.arena_ptr(), "3", "3")));
}
