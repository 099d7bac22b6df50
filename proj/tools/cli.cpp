#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "elcr/del.hpp"
#include "elcr/error.hpp"
#include "elcr/game.hpp"
#include "elcr/harness.hpp"
#include "elcr/model_io.hpp"
#include "elcr/rewrite.hpp"
#include "elcr/semantics.hpp"
#include "elcr/syntax.hpp"

namespace elcr::cli {
namespace {

using nlohmann::json;

std::optional<std::uint64_t> subset_cap() {
  const char* env = std::getenv("ELCR_MAX_SUBSETS");
  if (!env || !*env) return 32;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw InputError("ELCR_MAX_SUBSETS must be a number");
  if (v == 0) return std::nullopt;
  return v;
}

unsigned model_k(const KSightModel& m) {
  if (!m.sight().symmetric()) throw UnsupportedError("moves need equal sights for both players");
  return m.sight().x;
}

std::vector<Vertex> parse_moves(const std::string& text, const GameGraph& g) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(g.index(item));
  }
  return out;
}

Formula read_formula(const std::string& text, const std::string& path) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open formula file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto fs = parse_lines(buf.str());
    if (fs.size() != 1) throw InputError("formula file must hold exactly one formula");
    return fs.front();
  }
  if (text.empty()) throw InputError("a formula is required (--formula or --formula-file)");
  return parse(text);
}

std::string set_text(const std::vector<Situation>& ss, const GameGraph& g) {
  std::string out = "{";
  for (std::size_t i = 0; i < ss.size(); ++i) out += (i ? "," : "") + to_string(ss[i], g);
  return out + "}";
}

json classes_json(const KSightModel& m) {
  json out;
  for (Player p : kPlayers) {
    json blocks = json::array();
    for (const auto& b : m.classes(p).blocks) {
      std::vector<Situation> members;
      for (auto i : b) members.push_back(m[i]);
      blocks.push_back(situations_to_json(members, m.graph()));
    }
    out[std::string(1, player_char(p))] = blocks;
  }
  return out;
}

// Links between distinct situations, one entry per unordered pair.
json links_json(const KSightModel& m, Player p) {
  json out = json::array();
  for (const auto& b : m.classes(p).blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        out.push_back({situation_to_json(m[b[i]], m.graph()), situation_to_json(m[b[j]], m.graph())});
  return out;
}

std::string links_text(const KSightModel& m, Player p) {
  std::string out;
  for (const auto& b : m.classes(p).blocks) {
    if (b.size() < 2) continue;
    std::vector<Situation> members;
    for (auto i : b) members.push_back(m[i]);
    out += (out.empty() ? "" : " ") + set_text(members, m.graph());
  }
  return out.empty() ? "none" : out;
}

json plan_json(const Plan& plan, const GameGraph& g) {
  json j;
  j["at"] = situation_to_json(plan.at, g);
  switch (plan.kind) {
    case Plan::Kind::Win: j["kind"] = "win"; break;
    case Plan::Kind::Cop:
      j["kind"] = "cop";
      j["move"] = g.name(plan.move);
      break;
    case Plan::Kind::Robber: j["kind"] = "robber"; break;
  }
  json children = json::array();
  for (const auto& c : plan.children) children.push_back(plan_json(c, g));
  if (!children.empty()) j["children"] = children;
  return j;
}

void plan_text(const Plan& plan, const GameGraph& g, std::ostream& out, int depth) {
  const std::string pad(2 * depth, ' ');
  switch (plan.kind) {
    case Plan::Kind::Win: out << pad << to_string(plan.at, g) << ": K{x} y holds\n"; break;
    case Plan::Kind::Cop:
      out << pad << to_string(plan.at, g) << ": x moves to " << g.name(plan.move) << "\n";
      break;
    case Plan::Kind::Robber: out << pad << to_string(plan.at, g) << ": y moves\n"; break;
  }
  for (const auto& c : plan.children) plan_text(c, g, out, depth + 1);
}

struct Options {
  std::string model;
  std::string vocab;
  std::string formula;
  std::string formula_file;
  std::string moves;
  std::string mode = "semantic";
  std::string at;
  bool json = false;
  bool show_trace = false;
  bool prune = false;
  unsigned rounds = 2;
  std::optional<unsigned> k;
  std::optional<unsigned> sight_x, sight_y;
  harness::SuiteConfig suite;
  bool include_recursion = false;
  bool include_structure = false;
  std::vector<std::string> schemas;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

Situation pick_situation(const PointedModel& pm, const std::string& at) {
  if (at.empty()) return pm.actual;
  const auto comma = at.find(',');
  if (comma == std::string::npos) throw InputError("--at expects x,y");
  const auto& g = pm.model.graph();
  const Situation s{g.index(at.substr(0, comma)), g.index(at.substr(comma + 1))};
  pm.model.index_of(s);
  return s;
}

int do_check(const Options& o, std::ostream& out) {
  const PointedModel pm = load_model(o.model);
  const Formula f = read_formula(o.formula, o.formula_file);
  if (classify(f) == Layer::IllFormed) throw InputError("formula nests knowledge operators");
  const Situation at = pick_situation(pm, o.at);
  const bool value = dynamic_depth(f) == 0 ? eval(pm.model, at, f) : eval(pm.model, at, f, o.k ? *o.k : model_k(pm.model));
  if (o.json) {
    emit(out, {{"formula", print(f)}, {"at", situation_to_json(at, pm.model.graph())}, {"value", value},
               {"layer", to_string(classify(f))}});
  } else {
    out << (value ? "true" : "false") << '\n';
  }
  return value ? kOk : kFailed;
}

int do_trace(const Options& o, std::ostream& out) {
  const PointedModel pm = load_model(o.model);
  const unsigned k = model_k(pm.model);
  const GameConfig config{pm.model, pm.actual, k, o.rounds};
  const auto& g = pm.model.graph();
  const TraceResult r = trace(config, parse_moves(o.moves, g));
  if (o.json) {
    json stages = json::array();
    for (const auto& s : r.stages)
      stages.push_back({{"half_move", s.state.half_move},
                        {"mover", std::string(1, player_char(s.state.mover))},
                        {"actual", situation_to_json(s.state.actual, g)},
                        {"sigma", situations_to_json(s.state.model.sigma(), g)},
                        {"classes", classes_json(s.state.model)},
                        {"cop_knows", s.cop_knows},
                        {"robber_knows", s.robber_knows}});
    json j{{"k", k}, {"rounds", o.rounds}, {"stages", stages}};
    j["cop_wins_at"] = r.cop_wins_at ? json(*r.cop_wins_at) : json(nullptr);
    emit(out, j);
  } else {
    for (const auto& s : r.stages) {
      out << "stage " << s.state.half_move << ": actual " << to_string(s.state.actual, g) << ", sigma "
          << set_text(s.state.model.sigma(), g) << ", K{x} y " << (s.cop_knows ? "true" : "false") << ", K{y} x "
          << (s.robber_knows ? "true" : "false") << '\n';
    }
    if (r.cop_wins_at)
      out << "cop wins at half-move " << *r.cop_wins_at << '\n';
    else
      out << "no cop win within " << o.rounds << " rounds\n";
  }
  return kOk;
}

int do_reduce(const Options& o, std::ostream& out) {
  const std::string source = o.vocab.empty() ? o.model : o.vocab;
  if (source.empty()) throw InputError("reduce needs --vocab (or --model) to fix the vocabulary");
  const PointedModel pm = load_model(source);
  const Formula f = read_formula(o.formula, o.formula_file);
  RewriteOptions opts;
  opts.k = o.k ? *o.k : model_k(pm.model);
  if (o.mode == "axioms")
    opts.mode = RewriteMode::Axioms;
  else if (o.mode == "semantic")
    opts.mode = RewriteMode::Semantic;
  else
    throw InputError("--mode must be axioms or semantic");
  opts.max_subsets = subset_cap();
  if (o.prune) opts.prune = &pm.model.arena();
  const RewriteTrace t = reduce(f, pm.model.arena().vocabulary(), opts);
  if (o.json) {
    json j{{"input", print(t.input)}, {"output", print(t.output)}, {"mode", to_string(t.mode)}, {"k", opts.k}};
    if (o.show_trace) {
      json steps = json::array();
      for (const auto& s : t.steps) {
        json step{{"axiom", s.axiom}, {"position", s.position}, {"lhs", print(s.lhs)}};
        if (!s.cites.empty()) step["cites"] = s.cites;
        steps.push_back(step);
      }
      j["steps"] = steps;
    }
    emit(out, j);
  } else {
    out << print(t.output) << '\n';
    if (o.show_trace)
      for (const auto& s : t.steps)
        out << "  " << s.axiom << " at " << (s.position.empty() ? "root" : s.position) << ": " << print(s.lhs) << '\n';
  }
  return kOk;
}

int do_validate(const Options& o, std::ostream& out) {
  const PointedModel pm = load_model(o.model);
  SightConfig sight = pm.model.sight();
  if (o.sight_x) sight.x = *o.sight_x;
  if (o.sight_y) sight.y = *o.sight_y;
  const ValidationReport r = validate_model(pm.model, sight);
  const auto& g = pm.model.graph();
  if (o.json) {
    json issues = json::array();
    for (const auto& i : r.issues) {
      json e{{"kind", to_string(i.kind)}, {"message", i.message}};
      if (i.player) e["player"] = std::string(1, player_char(*i.player));
      if (i.first) e["first"] = situation_to_json(*i.first, g);
      if (i.second) e["second"] = situation_to_json(*i.second, g);
      issues.push_back(e);
    }
    emit(out, {{"ok", r.ok()}, {"sight", {{"x", sight.x}, {"y", sight.y}}}, {"issues", issues}});
  } else if (r.ok()) {
    out << "ok\n";
  } else {
    for (const auto& i : r.issues) out << to_string(i.kind) << ": " << i.message << '\n';
  }
  return r.ok() ? kOk : kFailed;
}

int do_fuzz(const Options& o, std::ostream& out) {
  std::vector<std::string> schemas = o.schemas;
  if (schemas.empty()) {
    schemas = harness::table_schemas();
    for (const auto& s : harness::derived_schemas()) schemas.push_back(s);
    if (o.include_recursion)
      for (const auto& s : harness::recursion_schemas()) schemas.push_back(s);
  }
  const auto models = harness::gen_models(o.suite);
  const auto report = harness::check_schemas(models, schemas, o.suite.threads);
  bool clean = true;
  json jschemas = json::array();
  for (const auto& s : report.schemas) {
    clean = clean && s.valid();
    json cx = json::array();
    for (const auto& c : s.counterexamples) {
      const auto [main, naive] = harness::replay(c);
      cx.push_back({{"model", c.label},
                    {"at", situation_to_json(c.at, c.model.graph())},
                    {"k", c.k},
                    {"formula", print(c.formula)},
                    {"replay", {{"evaluator", main}, {"oracle", naive}}}});
    }
    json e{{"id", s.id},
           {"verdict", s.valid() ? "valid-on-suite" : "refuted"},
           {"instances", s.instances},
           {"checks", s.checks},
           {"failures", s.failures},
           {"counterexamples", cx}};
    if (harness::is_rule(s.id)) e["active_premises"] = s.active_premises;
    jschemas.push_back(e);
    if (!o.json) {
      out << s.id << ": " << (s.valid() ? "valid-on-suite" : "refuted") << " (" << s.instances << " instances, "
          << s.checks << " checks, " << s.failures << " failures)\n";
      for (const auto& c : cx) out << "  counterexample " << c["model"].get<std::string>() << ": " << c["formula"].get<std::string>() << '\n';
    }
  }
  json j{{"models", report.models},
         {"seed", o.suite.seed},
         {"count", o.suite.count},
         {"max_vertices", o.suite.max_vertices},
         {"max_k", o.suite.max_k},
         {"exhaustive", o.suite.exhaustive},
         {"schemas", jschemas}};
  if (o.include_recursion) {
    const auto p = harness::r2_probe();
    j["r2_probe"] = {{"lhs", print(p.lhs)}, {"rhs", print(p.rhs)}, {"lhs_value", p.lhs_value},
                     {"rhs_value", p.rhs_value}, {"holds", p.holds()}};
    if (!o.json)
      out << "R2 probe: " << print(p.lhs) << " is " << (p.lhs_value ? "true" : "false") << ", " << print(p.rhs)
          << " is " << (p.rhs_value ? "true" : "false") << '\n';
  }
  if (o.include_structure) {
    json props = json::array();
    for (const auto& p : harness::check_structure(models, o.suite.threads)) {
      clean = clean && p.ok();
      props.push_back({{"id", p.id}, {"checks", p.checks}, {"violations", p.violations}, {"examples", p.examples}});
      if (!o.json) {
        out << p.id << ": " << p.violations << " violations in " << p.checks << " checks\n";
        for (const auto& e : p.examples) out << "  " << e << '\n';
      }
    }
    j["structure"] = props;
  }
  if (o.json) emit(out, j);
  return clean ? kOk : kFailed;
}

int do_del_compare(const Options& o, std::ostream& out) {
  const PointedModel pm = load_model(o.model);
  const unsigned k = model_k(pm.model);
  const auto& g = pm.model.graph();
  const auto layers = del_layers(pm.model, pm.actual, parse_moves(o.moves, g), k);
  bool agree = true;
  json jl = json::array();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const bool same = l.del_local == l.elcr_sigma;
    agree = agree && same;
    json prov = json::array();
    for (std::size_t s = 0; s < l.provenance.size(); ++s)
      for (const auto& p : l.provenance[s])
        prov.push_back({{"from", situation_to_json(p.origin, g)},
                        {"event", {g.name(p.event.from), g.name(p.event.to)}},
                        {"to", situation_to_json(l.model[static_cast<std::uint32_t>(s)], g)}});
    jl.push_back({{"layer", i + 1},
                  {"actual", situation_to_json(l.actual, g)},
                  {"situations", situations_to_json(l.model.sigma(), g)},
                  {"links", {{"x", links_json(l.model, Player::X)}, {"y", links_json(l.model, Player::Y)}}},
                  {"provenance", prov},
                  {"local_part", situations_to_json(l.del_local, g)},
                  {"elcr_sigma", situations_to_json(l.elcr_sigma, g)},
                  {"agrees", same},
                  {"del_size", l.model.size()},
                  {"elcr_size", l.elcr_sigma.size()}});
    if (!o.json)
      out << "layer " << i + 1 << ": " << l.model.size() << " situations " << set_text(l.model.sigma(), g)
          << "; x-links " << links_text(l.model, Player::X) << "; y-links " << links_text(l.model, Player::Y)
          << "; local part " << set_text(l.del_local, g) << (same ? " = " : " != ") << "update "
          << set_text(l.elcr_sigma, g) << '\n';
  }
  if (o.json) emit(out, {{"k", k}, {"layers", jl}, {"agrees", agree}});
  return agree ? kOk : kFailed;
}

int do_winning(const Options& o, std::ostream& out) {
  const PointedModel pm = load_model(o.model);
  const GameConfig config{pm.model, pm.actual, model_k(pm.model), o.rounds};
  const CopWinResult r = cop_wins(config);
  const auto& g = pm.model.graph();
  if (o.json) {
    json j{{"rounds", o.rounds}, {"wins", r.wins}, {"formula", print(winning_formula(o.rounds))}};
    j["plan"] = r.plan ? plan_json(*r.plan, g) : json(nullptr);
    emit(out, j);
  } else if (r.wins) {
    out << "cop wins within " << o.rounds << " rounds\n";
    plan_text(*r.plan, g, out, 1);
  } else {
    out << "no winning strategy within " << o.rounds << " rounds\n";
  }
  return r.wins ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checker for the epistemic logic of cops and robbers", "elcr"};
  app.require_subcommand(1);
  Options o;

  auto model_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--model", o.model, "model file (JSON)");
    if (required) opt->required();
  };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "machine-readable output"); };

  auto* check = app.add_subcommand("check", "evaluate a formula at the actual situation");
  model_opt(check, true);
  check->add_option("--formula", o.formula, "formula text");
  check->add_option("--formula-file", o.formula_file, "file holding one formula");
  check->add_option("--at", o.at, "situation x,y other than the actual one");
  check->add_option("-k,--sight", o.k, "sight used by moves (default: the model's)");
  json_flag(check);

  auto* tr = app.add_subcommand("trace", "replay moves, Cop first, and report knowledge");
  model_opt(tr, true);
  tr->add_option("--moves", o.moves, "comma separated target vertices")->required();
  tr->add_option("--rounds", o.rounds, "round limit for the win check");
  json_flag(tr);

  auto* red = app.add_subcommand("reduce", "compile moves away");
  red->add_option("--vocab", o.vocab, "model file supplying the vocabulary and sight");
  model_opt(red, false);
  red->add_option("--formula", o.formula, "formula text");
  red->add_option("--formula-file", o.formula_file, "file holding one formula");
  red->add_option("--mode", o.mode, "axioms or semantic")->check(CLI::IsMember({"axioms", "semantic"}));
  red->add_option("-k,--sight", o.k, "sight (default: the model's)");
  red->add_flag("--trace", o.show_trace, "list the rewrite steps");
  red->add_flag("--prune", o.prune, "skip subsets the model's graph cannot realize");
  json_flag(red);

  auto* val = app.add_subcommand("validate", "check the k-sight model conditions");
  model_opt(val, true);
  val->add_option("--sight-x", o.sight_x, "override the sight of x");
  val->add_option("--sight-y", o.sight_y, "override the sight of y");
  json_flag(val);

  auto* fuzz = app.add_subcommand("fuzz-axioms", "check axiom schemata on generated models");
  fuzz->add_option("--max-vertices", o.suite.max_vertices, "largest random graph")->check(CLI::Range(1u, 12u));
  fuzz->add_option("--max-k", o.suite.max_k, "largest sight");
  fuzz->add_option("--count", o.suite.count, "random models");
  fuzz->add_option("--seed", o.suite.seed, "random seed");
  fuzz->add_option("--updates", o.suite.max_updates, "most random moves applied to a model");
  fuzz->add_option("--threads", o.suite.threads, "worker threads (0: all cores)");
  fuzz->add_flag("--exhaustive", o.suite.exhaustive, "add every serial graph on 3 vertices");
  fuzz->add_flag("--include-recursion", o.include_recursion, "also check R1-R10");
  fuzz->add_flag("--include-structure", o.include_structure, "also check structural properties of updates");
  fuzz->add_option("--schema", o.schemas, "only these schema ids");
  json_flag(fuzz);

  auto* del = app.add_subcommand("del-compare", "product updates along a trace against the update");
  model_opt(del, true);
  del->add_option("--moves", o.moves, "comma separated target vertices")->required();
  json_flag(del);

  auto* win = app.add_subcommand("winning", "decide whether Cop wins within n rounds");
  model_opt(win, true);
  win->add_option("--rounds", o.rounds, "round limit");
  json_flag(win);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*check) return do_check(o, out);
    if (*tr) return do_trace(o, out);
    if (*red) return do_reduce(o, out);
    if (*val) return do_validate(o, out);
    if (*fuzz) return do_fuzz(o, out);
    if (*del) return do_del_compare(o, out);
    if (*win) return do_winning(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.message() << " (line " << e.line() << ", column " << e.column() << ")\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace elcr::cli
