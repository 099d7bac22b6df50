#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "elcr/model.hpp"

namespace elcr {

/// A model file: the epistemic state plus the actual situation.
struct PointedModel {
  KSightModel model;
  Situation actual;

  friend bool operator==(const PointedModel&, const PointedModel&) = default;
};

/// Reads the model file format. Without "situations" the initial state is
/// synthesized from "actual"; without "classes" situations are related by
/// equal positions. Throws InputError on malformed input.
PointedModel model_from_json(const nlohmann::json& j);
PointedModel load_model(const std::filesystem::path& path);
PointedModel parse_model(const std::string& text);

/// Writes every field, so reading the result back yields the same model.
nlohmann::json model_to_json(const PointedModel& pm);
void save_model(const PointedModel& pm, const std::filesystem::path& path);

nlohmann::json situation_to_json(const Situation& s, const GameGraph& g);
nlohmann::json situations_to_json(const std::vector<Situation>& ss, const GameGraph& g);

}  // namespace elcr
