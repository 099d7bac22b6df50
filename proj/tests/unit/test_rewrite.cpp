#include <doctest.h>

#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/harness.hpp"
#include "elcr/macros.hpp"
#include "elcr/oracle.hpp"
#include "elcr/rewrite.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

using namespace elcr;

namespace {

Vocabulary small_vocab() { return Vocabulary({Symbol("c_0"), Symbol("c_1"), Symbol("c_2")}); }

RewriteOptions opts(unsigned k, RewriteMode mode = RewriteMode::Semantic) {
  RewriteOptions o;
  o.k = k;
  o.mode = mode;
  return o;
}

}  // namespace

TEST_CASE("axiom right-hand sides") {
  const auto v = small_vocab();
  CHECK(is_top(*axiom_rhs("R4", Player::X, parse("K{x} c_0"), v, opts(1))));
  CHECK(is_top(*axiom_rhs("R4", Player::X, parse("K{x} x"), v, opts(1))));
  CHECK_FALSE(axiom_rhs("R4", Player::X, parse("K{x} y"), v, opts(1)).has_value());
  CHECK(*axiom_rhs("R3", Player::X, parse("x = c_0 & y = c_1"), v, opts(1)) ==
        conj(parse("[x] x = c_0"), parse("[x] y = c_1")));
  CHECK(*axiom_rhs("R2", Player::Y, parse("!(x = y)"), v, opts(1)) == neg(parse("[y] x = y")));

  const Formula r1 = *axiom_rhs("R1", Player::X, parse("x = c_0"), v, opts(1));
  CHECK(is_static(r1));
  std::vector<Formula> parts;
  for (const auto& T : constant_subsets(v)) {
    std::vector<Formula> inner;
    for (Symbol c : T) inner.push_back(eq(Term::constant(c), Term::constant("c_0")));
    parts.push_back(implies(succ_set_formula(Term::var(Player::X), T, v), conj_all(inner)));
  }
  const Formula spelled = conj_all(parts);
  const auto models = harness::exhaustive_models({1});
  for (std::size_t i = 0; i < models.size(); i += 7)
    for (const auto& s : models[i].model.sigma()) {
      CHECK(eval(models[i].model, s, r1) == eval(models[i].model, s, spelled));
      CHECK(eval(models[i].model, s, r1) == eval(models[i].model, s, parse("[x] x = c_0"), 1));
    }
}

TEST_CASE("reduction of the R4 example") {
  const auto ex = fixtures::pursuit();
  const auto& vocab = ex.model.arena().vocabulary();
  RewriteOptions o = opts(1);
  o.max_subsets = 32;
  const auto t = reduce(parse("[x] K{x} c_0"), vocab, o);
  CHECK(is_top(t.output));
  CHECK(print(t.output) == "true");
  const auto p = reduce(parse("[x] K{x} c_0"), vocab, opts(1, RewriteMode::Axioms));
  CHECK(is_top(p.output));
  REQUIRE(p.steps.size() == 1);
  CHECK(p.steps[0].axiom == "R4");
}

TEST_CASE("static formulas are left alone") {
  const Formula f = parse("K{x} y & R(x, y)");
  const auto t = reduce(f, small_vocab(), opts(1));
  CHECK(t.output == f);
  CHECK(t.steps.empty());
}

TEST_CASE("reduction errors") {
  CHECK_THROWS_AS(reduce(parse("[*] x = y"), small_vocab(), opts(1)), UnsupportedError);
  const auto& big = fixtures::g2()->vocabulary();
  RewriteOptions o = opts(2);
  o.max_subsets = 32;
  CHECK_THROWS_AS(reduce(parse("[x] K{x} y"), big, o), ResourceError);
}

TEST_CASE("reduced formulas evaluate like the originals") {
  const auto ex = fixtures::pursuit();
  const auto& vocab = ex.model.arena().vocabulary();
  RewriteOptions o = opts(1);
  o.prune = &ex.model.arena();
  for (const char* text : {"[x] K{x} y", "[x] [y] K{y} x", "[y] <K{x}> y = c_3", "[x] (x = c_1 & K{y} x)"}) {
    const Formula f = parse(text);
    const Formula r = reduce(f, vocab, o).output;
    CHECK(is_static(r));
    for (const auto& s : ex.model.sigma()) {
      CHECK(eval(ex.model, s, r) == eval(ex.model, s, f, 1));
      CHECK(oracle::eval(ex.model, s, r, 1) == oracle::eval(ex.model, s, f, 1));
    }
  }
  CHECK_FALSE(eval(ex.model, ex.actual, reduce(parse("[x] K{x} y"), vocab, o).output));
}

TEST_CASE("both modes agree with evaluation on a sample of the exhaustive suite") {
  const auto models = harness::exhaustive_models({0, 1});
  std::vector<harness::SuiteModel> sample;
  for (std::size_t i = 0; i < models.size(); i += 61) sample.push_back(models[i]);
  const auto semantic = harness::cross_check_rewriter(sample, harness::rewrite_corpus(), RewriteMode::Semantic, 1);
  CHECK(semantic.checks > 0);
  CHECK(semantic.mismatch_count == 0);
  const auto axioms = harness::cross_check_rewriter(sample, harness::safe_axiom_corpus(), RewriteMode::Axioms, 1);
  CHECK(axioms.mismatch_count == 0);
  for (const auto& [axiom, uses] : axioms.axiom_uses) {
    CAPTURE(axiom);
    CHECK((axiom == "R1" || axiom == "R3" || axiom == "R4" || axiom == "R7" || axiom == "R8"));
  }
}

TEST_CASE("axiom-mode steps are innermost first") {
  const auto step = reduce_step(parse("[x] [y] K{x} c_0"), small_vocab(), opts(1, RewriteMode::Axioms));
  REQUIRE(step.has_value());
  CHECK(step->second.axiom == "R4");
  CHECK(step->first == parse("[x] true"));
  CHECK_FALSE(reduce_step(parse("x = y"), small_vocab(), opts(1, RewriteMode::Axioms)).has_value());
  CHECK(applicable_axiom(Player::X, parse("x = c_0 & K{y} x")) == "R3");
}
