#include "elcr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "elcr/del.hpp"
#include "elcr/error.hpp"
#include "elcr/fixtures.hpp"
#include "elcr/macros.hpp"
#include "elcr/oracle.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

namespace elcr::harness {
namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Term X() { return Term::var(Player::X); }
Term Y() { return Term::var(Player::Y); }
Term V(Player p) { return Term::var(p); }
Term C(Symbol s) { return Term::constant(s); }

std::string vocab_key(const Vocabulary& v) {
  std::string key;
  for (Symbol c : v.constants) key += c.str() + ",";
  key += "|";
  for (const auto& [p, a] : v.predicates) key += p + "/" + std::to_string(a) + ",";
  return key;
}

using Key = std::pair<std::string, unsigned>;

Key key_of(const SuiteModel& m) { return {vocab_key(m.model.arena().vocabulary()), m.k}; }

void collect_terms(const Formula& f, std::set<Term>& out) {
  for (const auto& t : f->terms) out.insert(t);
  if (f->lhs) collect_terms(f->lhs, out);
  if (f->rhs) collect_terms(f->rhs, out);
}

Formula know_terms(Player z, const std::set<Term>& ts) {
  std::vector<Formula> parts;
  for (const auto& t : ts) parts.push_back(know_value(z, t));
  return conj_all(parts);
}

std::vector<Formula> first(const std::vector<Formula>& fs, std::size_t n) {
  return {fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(std::min(n, fs.size()))};
}

std::string where(const SuiteModel& m, const Situation& s) { return m.label + " at " + to_string(s, m.model.graph()); }

// Formulas for the oracle agreement check, all well-formed over vocab.
std::vector<Formula> oracle_formulas(const Vocabulary& vocab) {
  const auto lb = first(lb_samples(vocab), 4);
  std::vector<Formula> out;
  for (Player z : kPlayers) {
    const Player w = other(z);
    out.push_back(move(z, know_value(z, V(w))));
    out.push_back(move(z, know_value(w, V(z))));
    for (const auto& a : lb) {
      out.push_back(move(z, know(z, a)));
      out.push_back(move(z, know(w, a)));
      out.push_back(know(z, move(w, a)));
    }
  }
  out.push_back(move(Player::X, move(Player::Y, know_value(Player::X, Y()))));
  out.push_back(move_all(know_value(Player::X, Y())));
  out.push_back(can_move(Player::X, move(Player::Y, know_value(Player::X, Y()))));
  out.push_back(move_all(know(Player::Y, lb.front())));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- models

std::vector<SuiteModel> exhaustive_models(const std::vector<unsigned>& ks) {
  const std::vector<std::string> names = {"0", "1", "2"};
  std::vector<SuiteModel> out;
  for (unsigned code = 0; code < 343; ++code) {
    std::vector<std::pair<std::string, std::string>> edges;
    unsigned rest = code;
    for (unsigned v = 0; v < 3; ++v) {
      const unsigned row = rest % 7 + 1;
      rest /= 7;
      for (unsigned t = 0; t < 3; ++t)
        if (row >> t & 1) edges.emplace_back(names[v], names[t]);
    }
    auto arena = std::make_shared<const Arena>(GameGraph(names, edges));
    for (unsigned k : ks)
      for (Vertex x = 0; x < 3; ++x)
        for (Vertex y = 0; y < 3; ++y) {
          const Situation s{x, y};
          out.push_back({synthesize_initial(arena, s, SightConfig::uniform(k)), s, k,
                         "graph#" + std::to_string(code) + " k=" + std::to_string(k) + " start " +
                             to_string(s, arena->graph())});
        }
  }
  return out;
}

std::vector<SuiteModel> random_models(const SuiteConfig& config) {
  if (config.max_vertices == 0) throw InputError("max vertices must be positive");
  std::vector<SuiteModel> out(config.count);
  parallel_for(config.count, config.threads, [&](std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    auto uniform = [&](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };

    const unsigned n = uniform(1, config.max_vertices);
    std::vector<std::string> names;
    for (unsigned v = 0; v < n; ++v) names.push_back(std::to_string(v));
    std::vector<std::pair<std::string, std::string>> edges;
    for (unsigned v = 0; v < n; ++v) {
      std::vector<unsigned> targets(n);
      std::iota(targets.begin(), targets.end(), 0u);
      std::shuffle(targets.begin(), targets.end(), rng);
      const unsigned degree = std::min(uniform(1, 3), n);
      std::sort(targets.begin(), targets.begin() + degree);
      for (unsigned i = 0; i < degree; ++i) edges.emplace_back(names[v], names[targets[i]]);
    }
    std::map<std::string, Relation> relations;
    if (uniform(0, 1)) {
      Relation p{1, {}};
      for (Vertex v = 0; v < n; ++v)
        if (uniform(0, 1)) p.tuples.insert({v});
      relations.emplace("P", std::move(p));
    }
    auto arena = std::make_shared<const Arena>(GameGraph(names, edges), std::vector<std::pair<std::string, std::string>>{},
                                               relations);
    const unsigned k = uniform(0, config.max_k);
    Situation actual{uniform(0, n - 1), uniform(0, n - 1)};
    KSightModel m = synthesize_initial(arena, actual, SightConfig::uniform(k));
    const unsigned updates = uniform(0, config.max_updates);
    for (unsigned u = 0; u < updates; ++u) {
      const Player z = uniform(0, 1) ? Player::Y : Player::X;
      auto branches = update(m, actual, z, k);
      auto& b = branches[uniform(0, static_cast<unsigned>(branches.size()) - 1)];
      m = std::move(b.model);
      actual = b.landed;
    }
    out[index] = {std::move(m), actual, k,
                  "random#" + std::to_string(index) + " seed=" + std::to_string(config.seed) + " n=" +
                      std::to_string(n) + " k=" + std::to_string(k) + " updates=" + std::to_string(updates)};
  });
  return out;
}

std::vector<SuiteModel> gen_models(const SuiteConfig& config) {
  std::vector<SuiteModel> out;
  if (config.exhaustive) out = exhaustive_models();
  auto random = random_models(config);
  out.insert(out.end(), std::make_move_iterator(random.begin()), std::make_move_iterator(random.end()));
  return out;
}

// ---------------------------------------------------------------- schemata

const std::vector<std::string>& table_schemas() {
  static const std::vector<std::string> ids = {
      "A1", "A2", "A3", "A4", "Seriality", "At-Some-Where", "k-sight", "K", "T", "Knowledge-Ground",
      "K-Additivity", "K-Elimination", "De-Re-Knowledge", "Structure-Knowledge"};
  return ids;
}

const std::vector<std::string>& derived_schemas() {
  static const std::vector<std::string> ids = {"Sight-Value", "Sight-Atom", "Boolean-Move", "Memory"};
  return ids;
}

const std::vector<std::string>& recursion_schemas() { return kRecursionAxioms; }

bool is_rule(const std::string& schema) { return schema == "K-Additivity" || schema == "K-Elimination"; }

std::vector<Formula> lb_samples(const Vocabulary& vocab) {
  const auto& cs = vocab.constants;
  const Term c0 = C(cs.front());
  const Term c1 = C(cs.size() > 1 ? cs[1] : cs.front());
  const Term cl = C(cs.back());
  std::vector<Formula> out = {
      eq(X(), Y()),
      eq(Y(), c0),
      edge(X(), Y()),
      eq(X(), c1),
      neg(eq(Y(), cl)),
      edge(Y(), X()),
      disj(eq(X(), c0), eq(Y(), c1)),
      conj(edge(Y(), c0), neg(eq(X(), Y()))),
      edge(X(), X()),
      edge(c0, c1),
  };
  if (vocab.arity("P") == 1u) {
    out.push_back(pred("P", {Y()}));
    out.push_back(implies(pred("P", {X()}), edge(X(), Y())));
  }
  return out;
}

std::vector<Formula> instances(const std::string& schema, const Vocabulary& vocab, unsigned k,
                               std::optional<std::uint64_t> max_subsets) {
  const auto terms = vocab.terms();
  const auto samples = lb_samples(vocab);
  std::vector<Term> few = {X(), Y()};
  for (std::size_t i = 0; i < vocab.constants.size() && i < 3; ++i) few.push_back(C(vocab.constants[i]));
  std::vector<Formula> out;

  auto recursion = [&](const std::string& axiom, Player z, const Formula& body) {
    RewriteOptions opts;
    opts.k = k;
    opts.mode = RewriteMode::Axioms;
    opts.max_subsets = max_subsets;
    opts.record_steps = false;
    auto rhs = axiom_rhs(axiom, z, body, vocab, opts);
    if (!rhs) throw InternalError(axiom + " does not match its own instance");
    out.push_back(iff(move(z, body), *rhs));
  };

  if (schema == "A1") {
    for (const auto& t : terms) out.push_back(eq(t, t));
  } else if (schema == "A2") {
    for (const auto& a : terms)
      for (const auto& b : terms) out.push_back(implies(eq(a, b), eq(b, a)));
  } else if (schema == "A3") {
    for (const auto& a : few)
      for (const auto& b : few)
        for (const auto& c : few) out.push_back(implies(conj(eq(a, b), eq(b, c)), eq(a, c)));
  } else if (schema == "A4") {
    for (Player z : kPlayers)
      for (const auto& t : few)
        for (const auto& a : samples)
          if (mentions(a, z)) out.push_back(implies(eq(t, V(z)), iff(a, substitute(a, z, t))));
  } else if (schema == "Seriality") {
    for (Symbol c : vocab.constants) {
      std::vector<Formula> parts;
      for (Symbol t : vocab.constants) parts.push_back(edge(C(c), C(t)));
      out.push_back(disj_all(parts));
    }
  } else if (schema == "At-Some-Where") {
    for (Player z : kPlayers) {
      std::vector<Formula> parts;
      for (Symbol c : vocab.constants) parts.push_back(eq(V(z), C(c)));
      out.push_back(disj_all(parts));
    }
  } else if (schema == "k-sight" || schema == "Sight-Value") {
    for (Player z : kPlayers)
      for (const auto& t : terms) out.push_back(implies(distance_formula(k, V(z), t, vocab), know_value(z, t)));
  } else if (schema == "K") {
    const auto some = first(samples, 6);
    for (Player z : kPlayers)
      for (const auto& a : some)
        for (const auto& b : some) out.push_back(implies(know(z, implies(a, b)), implies(know(z, a), know(z, b))));
  } else if (schema == "T") {
    for (Player z : kPlayers)
      for (const auto& a : samples) out.push_back(implies(know(z, a), a));
  } else if (schema == "Knowledge-Ground") {
    const auto subsets = constant_subsets(vocab, max_subsets);
    for (Player z : kPlayers) {
      const Player w = other(z);
      for (const auto& set : subsets) {
        const Formula ground = know_set_formula(z, w, set, vocab);
        for (const auto& a : samples) {
          std::vector<Formula> parts;
          for (Symbol c : set) parts.push_back(substitute(a, w, C(c)));
          out.push_back(implies(ground, iff(know(z, a), conj_all(parts))));
        }
      }
    }
  } else if (schema == "De-Re-Knowledge") {
    for (Player z : kPlayers)
      for (const auto& t : terms)
        for (Symbol c : vocab.constants)
          out.push_back(implies(eq(t, C(c)), iff(know_value(z, t), know(z, eq(t, C(c))))));
  } else if (schema == "Structure-Knowledge") {
    for (Player z : kPlayers)
      for (const auto& a : samples) {
        std::set<Term> ts;
        collect_terms(a, ts);
        out.push_back(implies(conj(know_terms(z, ts), a), know(z, a)));
      }
  } else if (schema == "Sight-Atom") {
    std::vector<Formula> atoms;
    for (const auto& a : few)
      for (const auto& b : few) atoms.push_back(edge(a, b));
    if (vocab.arity("P") == 1u)
      for (const auto& a : few) atoms.push_back(pred("P", {a}));
    for (Player z : kPlayers)
      for (const auto& atom : atoms) {
        std::set<Term> ts(atom->terms.begin(), atom->terms.end());
        out.push_back(implies(conj(know_terms(z, ts), atom), know(z, atom)));
      }
  } else if (schema == "Boolean-Move") {
    for (Player z : kPlayers)
      for (const auto& a : samples) recursion("R1", z, a);
  } else if (schema == "Memory") {
    for (Player z : kPlayers) {
      const Formula knows = know_value(z, V(other(z)));
      out.push_back(implies(knows, move(z, knows)));
    }
  } else if (schema == "R1") {
    for (Player z : kPlayers)
      for (const auto& a : samples) recursion("R1", z, a);
  } else if (schema == "R2" || schema == "R3") {
    for (Player z : kPlayers) {
      const Player w = other(z);
      std::vector<Formula> parts = first(samples, 4);
      parts.push_back(know_value(z, V(w)));
      parts.push_back(know_value(w, V(z)));
      parts.push_back(know(z, samples.front()));
      parts.push_back(know(w, samples[1]));
      if (schema == "R2") {
        for (const auto& p : parts) recursion("R2", z, neg(p));
      } else {
        for (const auto& p : parts)
          for (const auto& q : parts) recursion("R3", z, conj(p, q));
      }
    }
  } else if (schema == "R4") {
    for (Player z : kPlayers)
      for (Player p : kPlayers) {
        recursion("R4", z, know_value(p, V(p)));
        for (Symbol c : vocab.constants) recursion("R4", z, know_value(p, C(c)));
      }
  } else if (schema == "R5") {
    for (Player z : kPlayers) recursion("R5", z, know_value(z, V(other(z))));
  } else if (schema == "R6") {
    for (Player z : kPlayers) recursion("R6", z, know_value(other(z), V(z)));
  } else if (schema == "R7" || schema == "R8" || schema == "R9" || schema == "R10") {
    for (Player z : kPlayers) {
      const Player w = other(z);
      const bool own = schema == "R7" || schema == "R9";
      const bool with_var = schema == "R9" || schema == "R10";
      const Player excluded = own ? w : z;
      for (const auto& a : samples)
        if (mentions(a, excluded) == with_var) recursion(schema, z, know(own ? z : w, a));
    }
  } else if (!is_rule(schema)) {
    throw InputError("unknown schema '" + schema + "'");
  }
  return out;
}

std::vector<RuleInstance> rule_instances(const std::string& schema, const Vocabulary& vocab) {
  const auto some = first(lb_samples(vocab), 3);
  std::vector<RuleInstance> out;
  for (Player z : kPlayers) {
    const Player owner = schema == "K-Additivity" ? z : other(z);
    std::vector<Formula> guards;
    for (const auto& a : some) {
      guards.push_back(know(owner, a));
      guards.push_back(possible(owner, a));
    }
    guards.push_back(conj(know(owner, some[0]), possible(owner, some[1])));
    for (const auto& phi : guards)
      for (const auto& a : some) {
        if (schema == "K-Additivity") {
          out.push_back({implies(phi, a), implies(phi, know(z, a))});
        } else if (schema == "K-Elimination") {
          for (const auto& b : some)
            out.push_back({implies(phi, implies(know(z, a), b)), implies(phi, implies(a, b))});
        } else {
          throw InputError("'" + schema + "' is not a rule");
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------- checking

const SchemaResult* ValidityReport::find(const std::string& id) const {
  for (const auto& s : schemas)
    if (s.id == id) return &s;
  return nullptr;
}

namespace {

// The model with one player's classes split into singletons. Still a
// k-sight model, and the other player's knowledge is untouched.
KSightModel refine(const KSightModel& m, Player p) {
  std::vector<std::vector<std::uint32_t>> blocks[2];
  for (Player q : kPlayers) {
    if (q == p) {
      for (std::uint32_t i = 0; i < m.size(); ++i) blocks[static_cast<int>(q)].push_back({i});
    } else {
      blocks[static_cast<int>(q)] = m.classes(q).blocks;
    }
  }
  return KSightModel::make(m.arena_ptr(), m.sight(), m.sigma(), std::move(blocks[0]), std::move(blocks[1]));
}

struct InstanceSet {
  std::vector<std::vector<Formula>> axioms;       // per schema
  std::vector<std::vector<RuleInstance>> rules;   // per schema
};

struct ModelOutcome {
  std::vector<std::uint64_t> checks, failures;
  std::vector<std::vector<Counterexample>> examples;
  std::vector<std::vector<char>> premise_failed, conclusion_failed;
  std::vector<std::vector<std::optional<Counterexample>>> rule_example;
};

}  // namespace

ValidityReport check_schemas(const std::vector<SuiteModel>& models, const std::vector<std::string>& schemas,
                             unsigned threads, std::size_t keep) {
  std::map<Key, std::size_t> key_index;
  std::vector<const Vocabulary*> key_vocab;
  std::vector<unsigned> key_k;
  std::vector<std::size_t> model_key(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto [it, fresh] = key_index.emplace(key_of(models[i]), key_vocab.size());
    if (fresh) {
      key_vocab.push_back(&models[i].model.arena().vocabulary());
      key_k.push_back(models[i].k);
    }
    model_key[i] = it->second;
  }
  std::vector<InstanceSet> sets(key_vocab.size());
  parallel_for(sets.size(), threads, [&](std::size_t i) {
    for (const auto& s : schemas) {
      sets[i].axioms.push_back(is_rule(s) ? std::vector<Formula>{} : instances(s, *key_vocab[i], key_k[i]));
      sets[i].rules.push_back(is_rule(s) ? rule_instances(s, *key_vocab[i]) : std::vector<RuleInstance>{});
    }
  });

  const std::size_t S = schemas.size();
  std::vector<ModelOutcome> outcomes(models.size());
  parallel_for(models.size(), threads, [&](std::size_t mi) {
    const SuiteModel& sm = models[mi];
    const InstanceSet& set = sets[model_key[mi]];
    ModelOutcome& o = outcomes[mi];
    o.checks.assign(S, 0);
    o.failures.assign(S, 0);
    o.examples.resize(S);
    o.premise_failed.resize(S);
    o.conclusion_failed.resize(S);
    o.rule_example.resize(S);
    for (std::size_t si = 0; si < S; ++si) {
      if (is_rule(schemas[si])) {
        const auto& rules = set.rules[si];
        o.premise_failed[si].assign(rules.size(), 0);
        o.conclusion_failed[si].assign(rules.size(), 0);
        o.rule_example[si].resize(rules.size());
        const std::vector<std::pair<KSightModel, std::string>> variants = {
            {sm.model, sm.label},
            {refine(sm.model, Player::X), sm.label + " refined for x"},
            {refine(sm.model, Player::Y), sm.label + " refined for y"}};
        for (const auto& [vm, vlabel] : variants)
          for (std::size_t ri = 0; ri < rules.size(); ++ri)
            for (const auto& s : vm.sigma()) {
              o.checks[si] += 2;
              if (!eval(vm, s, rules[ri].premise, sm.k)) o.premise_failed[si][ri] = 1;
              if (!eval(vm, s, rules[ri].conclusion, sm.k) && !o.conclusion_failed[si][ri]) {
                o.conclusion_failed[si][ri] = 1;
                o.rule_example[si][ri] = Counterexample{schemas[si], mi, vlabel, vm, s, sm.k, rules[ri].conclusion};
              }
            }
        continue;
      }
      for (const auto& f : set.axioms[si])
        for (const auto& s : sm.model.sigma()) {
          ++o.checks[si];
          if (eval(sm.model, s, f, sm.k)) continue;
          ++o.failures[si];
          if (o.examples[si].size() < keep) o.examples[si].push_back({schemas[si], mi, sm.label, sm.model, s, sm.k, f});
        }
    }
  });

  ValidityReport report;
  report.models = models.size();
  for (std::size_t si = 0; si < S; ++si) {
    SchemaResult r;
    r.id = schemas[si];
    for (const auto& set : sets) r.instances += is_rule(r.id) ? set.rules[si].size() : set.axioms[si].size();
    for (const auto& o : outcomes) {
      r.checks += o.checks[si];
      r.failures += o.failures[si];
      for (const auto& c : o.examples[si])
        if (r.counterexamples.size() < keep) r.counterexamples.push_back(c);
    }
    if (is_rule(r.id)) {
      // Rule instances are per vocabulary; a premise counts as valid when
      // no model sharing that vocabulary refutes it.
      for (std::size_t key = 0; key < sets.size(); ++key) {
        const auto& rules = sets[key].rules[si];
        for (std::size_t ri = 0; ri < rules.size(); ++ri) {
          bool premise_ok = true, conclusion_ok = true;
          std::optional<Counterexample> example;
          for (std::size_t mi = 0; mi < models.size(); ++mi) {
            if (model_key[mi] != key) continue;
            if (outcomes[mi].premise_failed[si][ri]) premise_ok = false;
            if (outcomes[mi].conclusion_failed[si][ri]) {
              conclusion_ok = false;
              if (!example) example = outcomes[mi].rule_example[si][ri];
            }
          }
          if (!premise_ok) continue;
          ++r.active_premises;
          if (conclusion_ok) continue;
          ++r.failures;
          if (r.counterexamples.size() < keep) r.counterexamples.push_back(*example);
        }
      }
    }
    report.schemas.push_back(std::move(r));
  }
  return report;
}

std::pair<bool, bool> replay(const Counterexample& c) {
  const Formula fresh = parse(print(c.formula));
  return {eval(c.model, c.at, fresh, c.k), oracle::eval(c.model, c.at, fresh, c.k)};
}

AxiomProbe probe_axiom(const std::string& axiom, Player z, const Formula& body, const KSightModel& m,
                       const Situation& at, unsigned k) {
  RewriteOptions opts;
  opts.k = k;
  opts.mode = RewriteMode::Axioms;
  opts.record_steps = false;
  auto rhs = axiom_rhs(axiom, z, body, m.arena().vocabulary(), opts);
  if (!rhs) throw InputError(axiom + " does not apply to " + print(move(z, body)));
  AxiomProbe p{axiom, move(z, body), *rhs};
  p.lhs_value = eval(m, at, p.lhs, k);
  p.rhs_value = eval(m, at, p.rhs, k);
  p.oracle_lhs = oracle::eval(m, at, p.lhs, k);
  p.oracle_rhs = oracle::eval(m, at, p.rhs, k);
  return p;
}

AxiomProbe r2_probe() {
  const auto f = fixtures::fork_probe();
  return probe_axiom("R2", Player::X, neg(eq(X(), Term::constant("c_b"))), f.model, f.actual, f.k);
}

// ---------------------------------------------------------------- rewriter

std::vector<Formula> rewrite_corpus() {
  static const char* text = R"(
[x] K{x} y
[y] K{y} x
[x] K{y} x
[y] K{x} y
[x] K{x} c_0
[y] K{x} x
[x] (x = c_0)
[x] (x = y)
[y] R(y, c_1)
[x] !(x = c_2)
[x] (R(x, y) | (y = c_0))
[x] K{x} (y = c_1)
[x] K{x} (x = c_0)
[y] K{y} (y = c_2)
[x] K{y} (x = c_1)
[y] K{x} (y = c_0)
[x] K{y} (y = c_0)
[y] K{y} (R(x, y) | (x = y))
[x] K{x} !(x = y)
[y] K{x} R(x, y)
[x] [y] K{x} y
[y] [x] K{y} x
<x> K{x} y
<x> [y] K{x} y
[x] [x] (x = c_1)
[y] <y> (y = c_0)
[x] (K{x} y & K{y} x)
[x] !K{x} y
(K{x} y | [x] K{x} y)
K{x} [y] !(x = y)
K{y} [x] (x = c_1)
[x] K{x} [y] (x = y)
[y] (K{y} x -> K{x} y)
[x] <y> K{x} y
<y> <x> (x = y)
[x] (K{x} (y = c_0) | K{x} (y = c_1))
[y] K{y} !R(y, x)
(!([x] K{x} y) & [y] (y = c_2))
[x] [y] K{x} (y = c_0)
(<x> K{x} y <-> [x] K{x} y)
)";
  return parse_lines(text);
}

std::vector<Formula> safe_axiom_corpus() {
  static const char* text = R"(
[x] (x = c_0)
[y] (R(y, c_1) & (x = y))
[x] K{x} c_0
[y] K{y} y
[x] K{y} (y = c_0)
[y] K{x} (x = c_1)
[x] K{x} (x = c_0)
[y] K{y} R(y, y)
[x] ((x = c_1) & K{y} (y = c_2))
[x] (K{x} c_1 & K{x} (R(x, x) & (x = c_0)))
[y] [y] (y = c_0)
[x] [y] K{x} (x = c_2)
)";
  return parse_lines(text);
}

CrossCheckReport cross_check_rewriter(const std::vector<SuiteModel>& models, const std::vector<Formula>& corpus,
                                      RewriteMode mode, unsigned threads, std::size_t keep) {
  std::map<Key, std::size_t> key_index;
  std::vector<std::pair<const Vocabulary*, unsigned>> keys;
  std::vector<std::size_t> model_key(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto [it, fresh] = key_index.emplace(key_of(models[i]), keys.size());
    if (fresh) keys.emplace_back(&models[i].model.arena().vocabulary(), models[i].k);
    model_key[i] = it->second;
  }
  std::vector<std::vector<Formula>> reduced(keys.size());
  std::vector<std::map<std::string, std::uint64_t>> uses(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t i) {
    RewriteOptions opts;
    opts.k = keys[i].second;
    opts.mode = mode;
    for (const auto& f : corpus) {
      auto trace = reduce(f, *keys[i].first, opts);
      for (const auto& step : trace.steps) ++uses[i][step.axiom];
      reduced[i].push_back(trace.output);
    }
  });

  struct Outcome {
    std::uint64_t checks = 0, mismatches = 0;
    std::vector<Mismatch> kept;
  };
  std::vector<Outcome> outcomes(models.size());
  parallel_for(models.size(), threads, [&](std::size_t mi) {
    const SuiteModel& sm = models[mi];
    const auto& out = reduced[model_key[mi]];
    Outcome& o = outcomes[mi];
    for (std::size_t fi = 0; fi < corpus.size(); ++fi)
      for (const auto& s : sm.model.sigma()) {
        ++o.checks;
        const bool direct = eval(sm.model, s, corpus[fi], sm.k);
        const bool red = eval(sm.model, s, out[fi], sm.k);
        if (direct == red) continue;
        ++o.mismatches;
        if (o.kept.size() < keep)
          o.kept.push_back({mi, sm.label, s, corpus[fi], direct, red, oracle::eval(sm.model, s, corpus[fi], sm.k),
                            oracle::eval(sm.model, s, out[fi], sm.k)});
      }
  });

  CrossCheckReport report;
  report.mode = mode;
  for (const auto& u : uses)
    for (const auto& [axiom, n] : u) report.axiom_uses[axiom] += n;
  for (const auto& o : outcomes) {
    report.checks += o.checks;
    report.mismatch_count += o.mismatches;
    for (const auto& m : o.kept)
      if (report.mismatches.size() < keep) report.mismatches.push_back(m);
  }
  return report;
}

// ---------------------------------------------------------------- structure

const std::vector<std::string>& structural_properties() {
  static const std::vector<std::string> ids = {"Update-KSight", "Landed-In-Sigma", "Sigma-Within-Lift",
                                               "Stability",     "Introspection",   "Boolean-Locality",
                                               "Oracle-Agreement", "DEL-KSight",   "DEL-Correspondence", "DEL-Local-Correspondence",
                                               "Joint-Stability"};
  return ids;
}

std::vector<PropertyResult> check_structure(const std::vector<SuiteModel>& models, unsigned threads,
                                            std::size_t keep) {
  const auto& ids = structural_properties();
  const std::size_t P = ids.size();
  std::vector<std::vector<PropertyResult>> partial(models.size());
  parallel_for(models.size(), threads, [&](std::size_t mi) {
    const SuiteModel& sm = models[mi];
    const KSightModel& m = sm.model;
    const GameGraph& g = m.graph();
    const unsigned k = sm.k;
    auto& res = partial[mi];
    res.resize(P);
    auto note = [&](std::size_t p, bool ok, const std::function<std::string()>& what) {
      ++res[p].checks;
      if (ok) return;
      ++res[p].violations;
      if (res[p].examples.size() < keep) res[p].examples.push_back(what());
    };
    const auto samples = lb_samples(m.arena().vocabulary());

    // Points for the locality check: the model itself and every branch.
    std::vector<std::pair<const KSightModel*, Situation>> points;
    std::vector<std::shared_ptr<KSightModel>> keep_alive;
    for (const auto& s : m.sigma()) points.emplace_back(&m, s);

    for (const auto& s : m.sigma()) {
      std::vector<std::pair<std::string, std::vector<UpdateBranch>>> moves;
      for (Player z : kPlayers) moves.emplace_back(std::string(1, player_char(z)), update(m, s, z, k));
      moves.emplace_back("*", update_sim(m, s, k));
      for (std::size_t mv = 0; mv < moves.size(); ++mv) {
        const auto& [who, branches] = moves[mv];
        std::vector<Situation> lifted;
        if (mv < 2) lifted = lift_successors(local_part(m, s), kPlayers[mv], g);
        for (const auto& b : branches) {
          auto tag = [&] { return where(sm, s) + " move " + who + " to " + to_string(b.landed, g); };
          const auto report = validate_model(b.model, SightConfig::uniform(k));
          note(0, report.ok(), [&] { return tag() + ": " + report.issues.front().message; });
          note(1, b.model.contains(b.landed), tag);
          if (mv < 2 && b.model.size() > 1)
            note(2, std::ranges::includes(lifted, b.model.sigma()), tag);
          note(mv < 2 ? 3 : 10, local_part(b.model, b.landed) == b.model.sigma(), [&] {
            std::string out = tag() + ": local part has " + std::to_string(local_part(b.model, b.landed).size()) +
                              " of " + std::to_string(b.model.size()) + " situations";
            return out;
          });
          auto shared = std::make_shared<KSightModel>(b.model);
          keep_alive.push_back(shared);
          for (const auto& t : shared->sigma()) points.emplace_back(shared.get(), t);
        }
      }
    }

    // Class constancy of knowledge literals.
    for (Player z : kPlayers) {
      std::vector<Formula> literals = {know_value(z, Term::var(other(z))), neg(know_value(z, Term::var(other(z))))};
      for (const auto& a : first(samples, 5)) {
        literals.push_back(know(z, a));
        literals.push_back(neg(know(z, a)));
        literals.push_back(conj(know(z, a), possible(z, samples.back())));
      }
      for (const auto& block : m.classes(z).blocks)
        for (const auto& f : literals) {
          const bool v = eval(m, m[block.front()], f, k);
          for (auto i : block)
            note(4, eval(m, m[i], f, k) == v,
                 [&] { return where(sm, m[i]) + ": " + print(f) + " differs across the class of " + player_char(z); });
        }
    }

    // Boolean formulas depend only on the positions they mention.
    for (const auto& a : samples) {
      const bool mx = mentions(a, Player::X), my = mentions(a, Player::Y);
      std::map<std::pair<Vertex, Vertex>, bool> seen;
      for (const auto& [pm, s] : points) {
        const std::pair<Vertex, Vertex> key{mx ? s.x : 0, my ? s.y : 0};
        const bool v = eval(*pm, s, a, k);
        auto [it, fresh] = seen.emplace(key, v);
        if (!fresh) note(5, it->second == v, [&] { return where(sm, s) + ": " + print(a); });
      }
    }

    // Main evaluator against the naive one.
    const oracle::World world = oracle::from_model(m);
    for (const auto& f : oracle_formulas(m.arena().vocabulary()))
      for (const auto& s : m.sigma())
        note(6, eval(m, s, f, k) == oracle::eval(world, s, f, k), [&] { return where(sm, s) + ": " + print(f); });

    // Product update and its correspondence with the update.
    for (Player z : kPlayers) {
      const auto product = product_update(m, sm.actual, build_event_model(m, sm.actual, z, k), k);
      const auto report = validate_model(product.model, SightConfig::uniform(k));
      note(7, report.ok(), [&] { return where(sm, sm.actual) + " move " + player_char(z) + ": " + report.issues.front().message; });
      for (const auto& c : compare(m, sm.actual, z, k))
        note(8, c.equal, [&] {
          return where(sm, sm.actual) + " move " + player_char(z) + " to " + to_string(c.landed, g) + ": product " +
                 std::to_string(c.del_local.size()) + " vs update " + std::to_string(c.elcr_sigma.size());
        });
      for (const auto& c : compare(m, sm.actual, z, k))
        note(9, c.del_local == c.elcr_local, [&] {
          return where(sm, sm.actual) + " move " + player_char(z) + " to " + to_string(c.landed, g) + ": product " +
                 std::to_string(c.del_local.size()) + " vs local part " + std::to_string(c.elcr_local.size());
        });
    }
  });

  std::vector<PropertyResult> out(P);
  for (std::size_t p = 0; p < P; ++p) {
    out[p].id = ids[p];
    for (const auto& part : partial) {
      out[p].checks += part[p].checks;
      out[p].violations += part[p].violations;
      for (const auto& e : part[p].examples)
        if (out[p].examples.size() < keep) out[p].examples.push_back(e);
    }
  }
  return out;
}

}  // namespace elcr::harness
