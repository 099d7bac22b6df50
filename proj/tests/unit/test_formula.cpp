#include <doctest.h>

#include "elcr/fixtures.hpp"
#include "elcr/macros.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

using namespace elcr;

namespace {

const Term X = Term::var(Player::X);
const Term Y = Term::var(Player::Y);
Term c(std::string_view n) { return Term::constant(n); }

}  // namespace

TEST_CASE("parsing builds the primitive tree") {
  CHECK(parse("K{x} y") == know_value(Player::X, Y));
  CHECK(parse("[x] K{x} (y = c3)") == move(Player::X, know(Player::X, eq(Y, c("c3")))));
  CHECK(parse("<x> x = c1") == neg(move(Player::X, neg(eq(X, c("c1"))))));
  CHECK(parse("x = y | y = c0 & x = c1") == parse("x = y | (y = c0 & x = c1)"));
  CHECK(parse("R(x, y) -> x = y") == implies(edge(X, Y), eq(X, Y)));
  CHECK(parse("x = y -> y = c0 -> x = c1") == parse("x = y -> (y = c0 -> x = c1)"));
  CHECK(parse("x = y & y = c0 & x = c1") == parse("(x = y & y = c0) & x = c1"));
  CHECK(parse("false") == bottom());
  CHECK(parse("<K{y}> (x = c0)") == possible(Player::Y, eq(X, c("c0"))));
  CHECK(parse("<*> true") == can_move_all(top()));
}

TEST_CASE("printing uses the dual sugar and round-trips") {
  CHECK(print(know_value(Player::X, Y)) == "K{x} y");
  CHECK(print(neg(move(Player::X, neg(eq(X, c("c1")))))) == "<x> (x = c1)");
  CHECK(print(move_all(know_value(Player::X, Y))) == "[*] K{x} y");
  for (const char* text : {"K{x} y", "[x] K{x} (y = c3)", "!(P(x) & R(c0, y)) <-> [y] <K{x}> x = y",
                           "[*] <*> (x = y | y = c2)", "K{y} (R(x, y) -> [x] x = y)", "<y> K{y} c1"}) {
    const Formula f = parse(text);
    CHECK(parse(print(f)) == f);
  }
}

TEST_CASE("stratification and syntax errors") {
  CHECK_THROWS_AS(parse("K{x} K{y} x"), ParseError);
  CHECK_THROWS_AS(parse("K{x} (x = y & <K{y}> x = c0)"), ParseError);
  CHECK_THROWS_AS(parse("x ="), ParseError);
  CHECK_THROWS_AS(parse("[z] x = y"), ParseError);
  CHECK_THROWS_AS(parse("(x = y"), ParseError);
  try {
    parse("x = y &\n  & x = y");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK(parse_lines("# header\nx = y\n\n[x] x = y  # trailing\n").size() == 2);
}

TEST_CASE("layers") {
  CHECK(classify(eq(X, c("c0"))) == Layer::LB);
  CHECK(classify(move(Player::X, eq(X, c("c0")))) == Layer::LBD);
  CHECK(classify(move(Player::X, know_value(Player::X, Y))) == Layer::L);
  CHECK(classify(move_all(eq(X, c("c0")))) == Layer::LPlus);
  CHECK(dynamic_depth(parse("[x] [y] K{x} y & [x] x = y")) == 2);
  CHECK(is_static(parse("K{x} y & x = y")));
  CHECK_FALSE(is_knowledge_free(parse("[x] <K{y}> x = y")));
  CHECK(substitute(parse("R(x, y) & x = c0"), Player::X, c("c2")) == parse("R(c2, y) & c2 = c0"));
}

TEST_CASE("folding helpers") {
  const Formula a = eq(X, Y);
  CHECK(fold_conj(top(), a) == a);
  CHECK(is_bottom(fold_conj(a, bottom())));
  CHECK(is_top(fold_disj(a, top())));
  CHECK(fold_neg(neg(a)) == a);
  CHECK(is_top(fold_implies(bottom(), a)));
  CHECK(is_top(conj_all({})));
  CHECK(is_bottom(disj_all({})));
}

TEST_CASE("macro formulas") {
  const auto a = fixtures::g1();
  const Vocabulary& vocab = a->vocabulary();
  CHECK(print(distance_formula(0, X, Y, vocab)) == "(x = y)");

  const Vocabulary two({Symbol("c1"), Symbol("c2")});
  CHECK(print(succ_set_formula(c("c1"), {Symbol("c2")}, two)) == "(R(c1, c2) & !R(c1, c1))");
  CHECK(succ_set_formula(X, {}, two) == conj(neg(edge(X, c("c1"))), neg(edge(X, c("c2")))));

  const Vocabulary one({Symbol("c4")});
  CHECK(know_set_formula(Player::X, Player::Y, {Symbol("c4")}, one) == possible(Player::X, eq(Y, c("c4"))));

  CHECK(constant_subsets(two).size() == 4);
  CHECK(constant_subsets(two)[2] == std::vector<Symbol>{Symbol("c2")});
  CHECK_THROWS_AS(constant_subsets(vocab, 32), ResourceError);

  // D^n agrees with graph distance at every situation of the full grid.
  const auto m = KSightModel::discrete(a, SightConfig::uniform(1), [&] {
    std::vector<Situation> all;
    for (Vertex x = 0; x < 6; ++x)
      for (Vertex y = 0; y < 6; ++y) all.push_back({x, y});
    return all;
  }());
  for (unsigned n = 0; n <= 3; ++n) {
    const Formula d = distance_formula(n, X, Y, vocab);
    for (const auto& s : m.sigma()) CHECK(eval(m, s, d) == a->graph().within(s.x, s.y, n));
  }
}
