#include "elcr/model_io.hpp"

#include <fstream>
#include <sstream>

#include "elcr/error.hpp"

namespace elcr {
namespace {

using nlohmann::json;

std::string vertex_id(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("vertex ids must be strings or integers");
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("model file lacks \"") + key + "\"");
  return j.at(key);
}

unsigned natural(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a natural number");
  return static_cast<unsigned>(j.get<long long>());
}

Situation read_situation(const json& j, const GameGraph& g) {
  if (!j.is_object()) throw InputError("situations are objects {\"x\":..,\"y\":..}");
  return {g.index(vertex_id(require(j, "x"))), g.index(vertex_id(require(j, "y")))};
}

std::vector<std::vector<std::uint32_t>> read_blocks(const json& j) {
  if (!j.is_array()) throw InputError("classes must be arrays of index arrays");
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& block : j) {
    if (!block.is_array()) throw InputError("classes must be arrays of index arrays");
    std::vector<std::uint32_t> b;
    for (const auto& i : block) b.push_back(natural(i, "class index"));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

PointedModel model_from_json(const json& j) {
  if (!j.is_object()) throw InputError("model file must hold a JSON object");
  std::vector<std::string> vertices;
  const auto& jv = require(j, "vertices");
  if (!jv.is_array()) throw InputError("\"vertices\" must be an array");
  for (const auto& v : jv) vertices.push_back(vertex_id(v));

  std::vector<std::pair<std::string, std::string>> edges;
  const auto& je = require(j, "edges");
  if (!je.is_array()) throw InputError("\"edges\" must be an array");
  for (const auto& e : je) {
    if (!e.is_array() || e.size() != 2) throw InputError("edges are pairs [\"u\",\"v\"]");
    edges.emplace_back(vertex_id(e[0]), vertex_id(e[1]));
  }
  GameGraph graph(std::move(vertices), edges);

  std::vector<std::pair<std::string, std::string>> constants;
  if (j.contains("constants")) {
    const auto& jc = j.at("constants");
    if (!jc.is_object()) throw InputError("\"constants\" must map names to vertices");
    for (const auto& [name, v] : jc.items()) constants.emplace_back(name, vertex_id(v));
    if (constants.empty()) throw InputError("\"constants\" must not be empty");
  }

  std::map<std::string, Relation> relations;
  if (j.contains("predicates")) {
    const auto& jp = j.at("predicates");
    if (!jp.is_object()) throw InputError("\"predicates\" must be an object");
    for (const auto& [name, spec] : jp.items()) {
      Relation rel;
      rel.arity = natural(require(spec, "arity"), "arity");
      const auto& tuples = require(spec, "tuples");
      if (!tuples.is_array()) throw InputError("\"tuples\" must be an array");
      for (const auto& t : tuples) {
        if (!t.is_array()) throw InputError("predicate tuples must be arrays");
        std::vector<Vertex> tuple;
        for (const auto& v : t) tuple.push_back(graph.index(vertex_id(v)));
        if (tuple.size() != rel.arity) throw InputError("tuple arity mismatch in predicate '" + name + "'");
        rel.tuples.insert(std::move(tuple));
      }
      relations.emplace(name, std::move(rel));
    }
  }

  auto arena = std::make_shared<const Arena>(std::move(graph), constants, relations);
  const auto& g = arena->graph();

  const auto& js = require(j, "sight");
  SightConfig sight{natural(require(js, "x"), "sight"), natural(require(js, "y"), "sight")};
  const Situation actual = read_situation(require(j, "actual"), g);

  if (!j.contains("situations")) return {synthesize_initial(arena, actual, sight), actual};

  std::vector<Situation> situations;
  const auto& jsit = j.at("situations");
  if (!jsit.is_array()) throw InputError("\"situations\" must be an array");
  for (const auto& s : jsit) situations.push_back(read_situation(s, g));

  KSightModel model;
  if (j.contains("classes")) {
    const auto& jc = j.at("classes");
    model = KSightModel::make(arena, sight, std::move(situations), read_blocks(require(jc, "x")),
                              read_blocks(require(jc, "y")));
  } else {
    model = KSightModel::by_position(arena, sight, std::move(situations));
  }
  if (!model.contains(actual)) throw InputError("actual situation is not among the situations");
  return {std::move(model), actual};
}

PointedModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(j);
}

PointedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

json situation_to_json(const Situation& s, const GameGraph& g) { return {{"x", g.name(s.x)}, {"y", g.name(s.y)}}; }

json situations_to_json(const std::vector<Situation>& ss, const GameGraph& g) {
  json out = json::array();
  for (const auto& s : ss) out.push_back(situation_to_json(s, g));
  return out;
}

json model_to_json(const PointedModel& pm) {
  const auto& m = pm.model;
  const auto& arena = m.arena();
  const auto& g = m.graph();
  json j;
  j["vertices"] = g.names();
  json edges = json::array();
  for (const auto& [s, t] : g.edges()) edges.push_back({g.name(s), g.name(t)});
  j["edges"] = edges;
  json constants = json::object();
  for (Symbol c : arena.vocabulary().constants) constants[c.str()] = g.name(arena.denotation(c));
  j["constants"] = constants;
  json preds = json::object();
  for (const auto& [name, rel] : arena.relations()) {
    json tuples = json::array();
    for (const auto& t : rel.tuples) {
      json row = json::array();
      for (Vertex v : t) row.push_back(g.name(v));
      tuples.push_back(row);
    }
    preds[name] = {{"arity", rel.arity}, {"tuples", tuples}};
  }
  j["predicates"] = preds;
  j["sight"] = {{"x", m.sight().x}, {"y", m.sight().y}};
  j["actual"] = situation_to_json(pm.actual, g);
  j["situations"] = situations_to_json(m.sigma(), g);
  j["classes"] = {{"x", m.classes(Player::X).blocks}, {"y", m.classes(Player::Y).blocks}};
  return j;
}

void save_model(const PointedModel& pm, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(pm).dump(2) << '\n';
}

}  // namespace elcr
