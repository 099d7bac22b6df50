#include <doctest.h>

#include <algorithm>

#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/harness.hpp"
#include "elcr/oracle.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

using namespace elcr;
using fixtures::at;

namespace {

std::vector<Situation> sits(const ArenaPtr& a, std::initializer_list<std::pair<const char*, const char*>> ps) {
  std::vector<Situation> out;
  for (auto [x, y] : ps) out.push_back(at(a, x, y));
  std::ranges::sort(out);
  return out;
}

const UpdateBranch& branch(const std::vector<UpdateBranch>& bs, const Situation& landed) {
  for (const auto& b : bs)
    if (b.landed == landed) return b;
  throw std::runtime_error("no such branch");
}

}  // namespace

TEST_CASE("updates along the pursuit trace") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();

  const auto b1 = update(ex.model, at(a, "0", "4"), Player::X, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].landed == at(a, "1", "4"));
  const auto& m1 = b1[0].model;
  CHECK(m1.sigma() == sits(a, {{"1", "4"}, {"1", "3"}}));

  const auto b2 = update(m1, at(a, "1", "4"), Player::Y, 1);
  REQUIRE(b2.size() == 2);
  const auto& m2 = branch(b2, at(a, "1", "5")).model;
  CHECK(m2.sigma() == sits(a, {{"1", "5"}, {"1", "3"}, {"1", "4"}}));
  CHECK(branch(b2, at(a, "1", "2")).model.sigma() == sits(a, {{"1", "2"}}));

  const auto b3 = update(m2, at(a, "1", "5"), Player::X, 1);
  REQUIRE(b3.size() == 1);
  CHECK(b3[0].landed == at(a, "2", "5"));
  CHECK(b3[0].model.sigma() == sits(a, {{"2", "5"}}));

  for (const auto* bs : {&b1, &b2, &b3})
    for (const auto& b : *bs) CHECK(validate_model(b.model).ok());

  CHECK_THROWS_AS(update(ex.model, at(a, "5", "5"), Player::X, 1), InputError);
}

TEST_CASE("knowledge along the pursuit trace") {
  const auto ex = fixtures::pursuit();
  const auto a = ex.model.arena_ptr();
  CHECK_FALSE(eval(ex.model, ex.actual, parse("K{x} y")));
  CHECK_FALSE(eval(ex.model, ex.actual, parse("K{y} x")));
  const auto m1 = update(ex.model, ex.actual, Player::X, 1)[0].model;
  CHECK(eval(m1, at(a, "1", "4"), parse("K{y} x")));
  CHECK(eval(ex.model, ex.actual, parse("c_3 = c_3")));
  CHECK_FALSE(eval(ex.model, ex.actual, parse("[x] K{x} y")));
  const Formula three = parse("[x][y][x] K{x} y");
  CHECK(eval(ex.model, ex.actual, three) == oracle::eval(ex.model, ex.actual, three, 1));
  CHECK(eval(ex.model, ex.actual, parse("[x] <y> [x] K{x} y")));
}

TEST_CASE("simultaneous moves") {
  const auto f = fixtures::simultaneous();
  CHECK(eval(f.model, f.actual, parse("[x][y] K{x} y"), f.k));
  CHECK_FALSE(eval(f.model, f.actual, parse("[*] K{x} y"), f.k));
  CHECK(oracle::eval(f.model, f.actual, parse("[x][y] K{x} y"), f.k));
  CHECK_FALSE(oracle::eval(f.model, f.actual, parse("[*] K{x} y"), f.k));

  const auto loop = std::make_shared<const Arena>(GameGraph({"a"}, {{"a", "a"}}));
  const auto m = synthesize_initial(loop, Situation{0, 0}, SightConfig::uniform(0));
  const auto bs = update_sim(m, Situation{0, 0}, 0);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].model.size() == 1);
}

TEST_CASE("players that tell situations apart") {
  const auto f = fixtures::stability();
  const auto bs = update(f.model, f.actual, Player::X, f.k);
  REQUIRE(bs.size() == 1);
  const auto& next = bs[0].model;
  CHECK(validate_model(next).ok());
  CHECK(next.contains(bs[0].landed));
  CHECK(local_part(next, bs[0].landed) == next.sigma());
}

TEST_CASE("updates need not leave the local part equal to the whole state") {
  std::size_t violations = 0;
  for (const auto& sm : harness::exhaustive_models({0})) {
    for (Player z : kPlayers)
      for (const auto& b : update(sm.model, sm.actual, z, sm.k)) {
        CHECK(b.model.contains(b.landed));
        if (local_part(b.model, b.landed) != b.model.sigma()) ++violations;
      }
  }
  CHECK(violations > 0);
}

TEST_CASE("main evaluator agrees with the naive oracle on the fixtures") {
  const auto corpus = harness::rewrite_corpus();
  std::vector<Formula> extra = parse_lines(R"(
K{x} y
K{y} x
<K{x}> [y] x = y
[y] K{x} y
[x] <y> [x] K{x} y
[*] K{x} y
<*> <K{y}> x = y
K{x} (R(x, y) | x = y)
[y] [x] [y] !K{y} x
)");
  for (const auto& p : {fixtures::pursuit(), fixtures::simultaneous(), fixtures::stability(), fixtures::stay_at_three()}) {
    for (const auto& s : p.model.sigma()) {
      for (const auto& f : extra) CHECK(eval(p.model, s, f, p.k) == oracle::eval(p.model, s, f, p.k));
    }
  }
  const auto models = harness::exhaustive_models({0, 1});
  for (std::size_t i = 0; i < models.size(); i += 97)
    for (const auto& f : corpus) {
      const auto& sm = models[i];
      CHECK(eval(sm.model, sm.actual, f, sm.k) == oracle::eval(sm.model, sm.actual, f, sm.k));
    }
}

TEST_CASE("knowing a value is knowing which constant names it") {
  const auto models = harness::random_models({.max_vertices = 4, .max_k = 2, .count = 60, .seed = 7});
  for (const auto& sm : models) {
    const auto& vocab = sm.model.arena().vocabulary();
    for (Player z : kPlayers) {
      const Term t = Term::var(other(z));
      std::vector<Formula> parts;
      for (Symbol c : vocab.constants)
        parts.push_back(implies(possible(z, eq(t, Term::constant(c))), know(z, eq(t, Term::constant(c)))));
      const Formula expanded = conj_all(parts);
      for (const auto& s : sm.model.sigma()) CHECK(eval(sm.model, s, know_value(z, t)) == eval(sm.model, s, expanded));
    }
  }
}

TEST_CASE("unequal sights are rejected for moves") {
  const auto a = fixtures::g1();
  const auto m = KSightModel::by_position(a, SightConfig{1, 2}, {at(a, "0", "4"), at(a, "0", "3")});
  CHECK_NOTHROW(eval(m, at(a, "0", "4"), parse("K{x} y")));
  CHECK_THROWS(eval(m, at(a, "0", "4"), parse("[x] K{x} y")));
}
