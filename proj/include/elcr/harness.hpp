#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/model.hpp"
#include "elcr/rewrite.hpp"

namespace elcr::harness {

struct SuiteConfig {
  unsigned max_vertices = 5;
  unsigned max_k = 2;
  unsigned count = 1000;   // random models
  std::uint64_t seed = 1;
  bool exhaustive = false;  // add every serial graph on 3 vertices
  unsigned max_updates = 3;
  unsigned threads = 0;     // 0: hardware concurrency
};

struct SuiteModel {
  KSightModel model;
  Situation actual;
  unsigned k = 0;
  std::string label;
};

/// Every serial digraph on vertices 0, 1, 2, every actual situation, each k in ks.
std::vector<SuiteModel> exhaustive_models(const std::vector<unsigned>& ks = {0, 1});
/// Seeded random models. Each one depends only on the seed and its index.
std::vector<SuiteModel> random_models(const SuiteConfig& config);
/// Exhaustive models (when requested) followed by random ones.
std::vector<SuiteModel> gen_models(const SuiteConfig& config);

/// Schema ids, in report order.
const std::vector<std::string>& table_schemas();      // static axioms and rules
const std::vector<std::string>& derived_schemas();       // Sight-Value, Sight-Atom, Boolean-Move, Memory
const std::vector<std::string>& recursion_schemas();  // R1..R10
bool is_rule(const std::string& schema);               // checked by preservation

/// Small Boolean formulas used to instantiate schemata over a vocabulary.
std::vector<Formula> lb_samples(const Vocabulary& vocab);

/// Valid-on-suite instances of a schema: each must hold at every point.
std::vector<Formula> instances(const std::string& schema, const Vocabulary& vocab, unsigned k,
                               std::optional<std::uint64_t> max_subsets = std::nullopt);

/// A rule instance: whenever premise holds at every point of the suite, so must conclusion.
/// Rules are checked on each model and on its two refinements that split one
/// player's classes into singletons.
struct RuleInstance {
  Formula premise;
  Formula conclusion;
};
std::vector<RuleInstance> rule_instances(const std::string& schema, const Vocabulary& vocab);

struct Counterexample {
  std::string schema;
  std::size_t model_index = 0;
  std::string label;
  KSightModel model;
  Situation at;
  unsigned k = 0;
  Formula formula;
};

struct SchemaResult {
  std::string id;
  std::uint64_t instances = 0;  // distinct instances, summed over vocabularies
  std::uint64_t checks = 0;     // instance evaluations
  std::uint64_t failures = 0;
  std::uint64_t active_premises = 0;  // rules: premises valid on the suite
  std::vector<Counterexample> counterexamples;  // the first few, in model order
  bool valid() const { return failures == 0; }
};

struct ValidityReport {
  std::size_t models = 0;
  std::vector<SchemaResult> schemas;
  const SchemaResult* find(const std::string& id) const;
};

/// Evaluates every instance of every schema at every situation of every model.
ValidityReport check_schemas(const std::vector<SuiteModel>& models, const std::vector<std::string>& schemas,
                             unsigned threads = 0, std::size_t keep = 3);

/// Re-evaluates a counterexample from scratch with both evaluators; the
/// pair holds the verdicts of the main evaluator and the naive oracle.
std::pair<bool, bool> replay(const Counterexample& c);

/// Direct evaluation of both sides of one axiom instance at one point.
struct AxiomProbe {
  std::string axiom;
  Formula lhs;
  Formula rhs;
  bool lhs_value = false;
  bool rhs_value = false;
  bool oracle_lhs = false;
  bool oracle_rhs = false;
  bool holds() const { return lhs_value == rhs_value; }
};
AxiomProbe probe_axiom(const std::string& axiom, Player z, const Formula& body, const KSightModel& m,
                       const Situation& at, unsigned k);
/// [x]!(x = c_b) against !([x](x = c_b)) on the fork model.
AxiomProbe r2_probe();

/// Fixed corpus of dynamic formulas over c_0, c_1, c_2 with dynamic depth at most 2.
std::vector<Formula> rewrite_corpus();
/// Formulas whose axiom-mode reduction uses only R1, R3, R4, R7 and R8.
std::vector<Formula> safe_axiom_corpus();

struct Mismatch {
  std::size_t model_index = 0;
  std::string label;
  Situation at;
  Formula formula;
  bool direct = false;
  bool reduced = false;
  bool oracle_direct = false;   // naive evaluation of the formula
  bool oracle_reduced = false;  // naive evaluation of its reduction
  bool confirmed() const { return direct == oracle_direct && reduced == oracle_reduced; }
};

struct CrossCheckReport {
  RewriteMode mode = RewriteMode::Semantic;
  std::uint64_t checks = 0;
  std::uint64_t mismatch_count = 0;
  std::vector<Mismatch> mismatches;  // the first few
  std::map<std::string, std::uint64_t> axiom_uses;
};

/// eval(f) against eval(reduce(f)) at every situation of every model.
CrossCheckReport cross_check_rewriter(const std::vector<SuiteModel>& models, const std::vector<Formula>& corpus,
                                      RewriteMode mode, unsigned threads = 0, std::size_t keep = 10);

struct PropertyResult {
  std::string id;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> examples;  // the first few, human readable
  bool ok() const { return violations == 0; }
};

/// Property ids, in report order.
const std::vector<std::string>& structural_properties();

/// Per-update and per-model structural properties on every model of the suite.
std::vector<PropertyResult> check_structure(const std::vector<SuiteModel>& models, unsigned threads = 0,
                                            std::size_t keep = 3);

}  // namespace elcr::harness
