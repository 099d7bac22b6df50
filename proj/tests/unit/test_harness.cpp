#include <doctest.h>

#include <set>

#include "elcr/harness.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

using namespace elcr;

TEST_CASE("exhaustive suite") {
  const auto models = harness::exhaustive_models({0, 1});
  CHECK(models.size() == 343 * 9 * 2);
  std::set<std::string> labels;
  for (const auto& sm : models) {
    CHECK(sm.model.graph().size() == 3);
    CHECK(sm.model.graph().is_serial());
    CHECK(validate_model(sm.model).ok());
    labels.insert(sm.label);
  }
  CHECK(labels.size() == models.size());
}

TEST_CASE("random suite is reproducible") {
  const harness::SuiteConfig cfg{.max_vertices = 5, .max_k = 2, .count = 50, .seed = 11};
  const auto a = harness::random_models(cfg);
  const auto b = harness::random_models(cfg);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].model == b[i].model);
    CHECK(a[i].actual == b[i].actual);
    CHECK(a[i].model.graph().size() <= 5);
    CHECK(a[i].k <= 2);
    CHECK(validate_model(a[i].model).ok());
    CHECK(a[i].model.contains(a[i].actual));
  }
  // A model depends only on the seed and its own index.
  const auto longer = harness::random_models({.max_vertices = 5, .max_k = 2, .count = 80, .seed = 11});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(longer[i].model == a[i].model);
  const auto other = harness::random_models({.max_vertices = 5, .max_k = 2, .count = 50, .seed = 12});
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += other[i].label == a[i].label;
  CHECK(same < a.size());
}

TEST_CASE("schema checks on a small suite") {
  const auto models = harness::random_models({.max_vertices = 4, .max_k = 2, .count = 40, .seed = 5});
  std::vector<std::string> ids = harness::table_schemas();
  for (const auto& s : harness::derived_schemas()) ids.push_back(s);
  const auto report = harness::check_schemas(models, ids, 1);
  CHECK(report.models == models.size());
  REQUIRE(report.schemas.size() == ids.size());
  for (const auto& s : report.schemas) {
    CAPTURE(s.id);
    CHECK(s.instances > 0);
    CHECK(s.valid());
  }
  CHECK(report.find("k-sight") != nullptr);
  CHECK(report.find("nonexistent") == nullptr);
}

TEST_CASE("thread count does not change reports") {
  const auto models = harness::random_models({.max_vertices = 4, .max_k = 1, .count = 30, .seed = 9});
  const std::vector<std::string> ids = {"R2", "R4", "Memory"};
  const auto one = harness::check_schemas(models, ids, 1);
  const auto many = harness::check_schemas(models, ids, 3);
  REQUIRE(one.schemas.size() == many.schemas.size());
  for (std::size_t i = 0; i < one.schemas.size(); ++i) {
    CHECK(one.schemas[i].checks == many.schemas[i].checks);
    CHECK(one.schemas[i].failures == many.schemas[i].failures);
    REQUIRE(one.schemas[i].counterexamples.size() == many.schemas[i].counterexamples.size());
    for (std::size_t j = 0; j < one.schemas[i].counterexamples.size(); ++j)
      CHECK(one.schemas[i].counterexamples[j].label == many.schemas[i].counterexamples[j].label);
  }
}

TEST_CASE("counterexamples replay") {
  const auto models = harness::exhaustive_models({0});
  std::vector<harness::SuiteModel> sample(models.begin(), models.begin() + 300);
  const auto report = harness::check_schemas(sample, {"R2"}, 1, 5);
  const auto* r2 = report.find("R2");
  REQUIRE(r2 != nullptr);
  for (const auto& c : r2->counterexamples) {
    const auto [main, naive] = harness::replay(c);
    CHECK_FALSE(main);
    CHECK_FALSE(naive);
  }
}

TEST_CASE("the two-successor probe") {
  const auto p = harness::r2_probe();
  CHECK(p.lhs == parse("[x] !(x = c_b)"));
  CHECK(p.rhs == parse("![x] x = c_b"));
  CHECK(p.lhs_value == p.oracle_lhs);
  CHECK(p.rhs_value == p.oracle_rhs);
  CHECK_FALSE(p.lhs_value);
  CHECK(p.rhs_value);
  CHECK_FALSE(p.holds());
}

TEST_CASE("structural properties on a small suite") {
  const auto models = harness::random_models({.max_vertices = 4, .max_k = 2, .count = 40, .seed = 2});
  const auto props = harness::check_structure(models, 1);
  REQUIRE(props.size() == harness::structural_properties().size());
  for (const auto& p : props) {
    CAPTURE(p.id);
    CHECK(p.checks > 0);
    if (p.id == "Update-KSight" || p.id == "Landed-In-Sigma" || p.id == "Introspection" ||
        p.id == "Boolean-Locality" || p.id == "Oracle-Agreement" || p.id == "DEL-KSight")
      CHECK(p.ok());
  }
}

TEST_CASE("corpora") {
  const auto corpus = harness::rewrite_corpus();
  CHECK(corpus.size() == 40);
  for (const auto& f : corpus) {
    CHECK(dynamic_depth(f) <= 2);
    CHECK(classify(f) != Layer::LPlus);
    CHECK(classify(f) != Layer::IllFormed);
  }
  CHECK(harness::safe_axiom_corpus().size() == 12);
}
