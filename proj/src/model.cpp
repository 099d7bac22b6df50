#include "elcr/model.hpp"

#include <algorithm>
#include <map>

#include "elcr/error.hpp"

namespace elcr {

std::string to_string(const Situation& s, const GameGraph& graph) {
  return "(" + graph.name(s.x) + "," + graph.name(s.y) + ")";
}

KSightModel KSightModel::make(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations,
                              std::vector<std::vector<std::uint32_t>> blocks_x,
                              std::vector<std::vector<std::uint32_t>> blocks_y) {
  if (!arena) throw InputError("model without arena");
  KSightModel m;
  m.arena_ = std::move(arena);
  m.sight_ = sight;

  std::vector<std::uint32_t> order(situations.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::ranges::stable_sort(order, [&](auto a, auto b) { return situations[a] < situations[b]; });
  std::vector<std::uint32_t> rank(order.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  m.sigma_.reserve(situations.size());
  for (auto i : order) m.sigma_.push_back(situations[i]);

  auto remap = [&](std::vector<std::vector<std::uint32_t>>& blocks, Partition& out) {
    for (auto& block : blocks) {
      for (auto& i : block) {
        if (i >= rank.size()) throw InputError("class index " + std::to_string(i) + " out of range");
        i = rank[i];
      }
      std::ranges::sort(block);
    }
    std::ranges::sort(blocks, [](const auto& a, const auto& b) {
      if (a.empty() || b.empty()) return a.empty() && !b.empty();
      return a.front() < b.front();
    });
    out.blocks = std::move(blocks);
  };
  remap(blocks_x, m.classes_[0]);
  remap(blocks_y, m.classes_[1]);
  m.index();
  return m;
}

KSightModel KSightModel::by_position(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations) {
  std::ranges::sort(situations);
  situations.erase(std::unique(situations.begin(), situations.end()), situations.end());
  std::vector<std::vector<std::uint32_t>> blocks[2];
  for (Player p : kPlayers) {
    std::map<Vertex, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < situations.size(); ++i) groups[situations[i].at(p)].push_back(i);
    for (auto& [v, block] : groups) blocks[static_cast<int>(p)].push_back(std::move(block));
  }
  return make(std::move(arena), sight, std::move(situations), std::move(blocks[0]), std::move(blocks[1]));
}

KSightModel KSightModel::discrete(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations) {
  std::ranges::sort(situations);
  situations.erase(std::unique(situations.begin(), situations.end()), situations.end());
  std::vector<std::vector<std::uint32_t>> blocks;
  for (std::uint32_t i = 0; i < situations.size(); ++i) blocks.push_back({i});
  auto copy = blocks;
  return make(std::move(arena), sight, std::move(situations), std::move(blocks), std::move(copy));
}

void KSightModel::index() {
  const std::size_t n = graph().size();
  lookup_.assign(n * n, -1);
  for (std::uint32_t i = 0; i < sigma_.size(); ++i) {
    const auto& s = sigma_[i];
    if (s.x < n && s.y < n && lookup_[s.x * n + s.y] < 0) lookup_[s.x * n + s.y] = static_cast<std::int32_t>(i);
  }
  for (auto& part : classes_) {
    part.block_of.assign(sigma_.size(), 0);
    std::vector<bool> seen(sigma_.size(), false);
    for (std::uint32_t b = 0; b < part.blocks.size(); ++b)
      for (auto i : part.blocks[b])
        if (!seen[i]) seen[i] = true, part.block_of[i] = b;
  }
}

std::optional<std::uint32_t> KSightModel::find(const Situation& s) const {
  const std::size_t n = graph().size();
  if (s.x >= n || s.y >= n) return std::nullopt;
  const auto i = lookup_[s.x * n + s.y];
  if (i < 0) return std::nullopt;
  return static_cast<std::uint32_t>(i);
}

std::uint32_t KSightModel::index_of(const Situation& s) const {
  if (auto i = find(s)) return *i;
  const auto& g = graph();
  if (s.x >= g.size() || s.y >= g.size()) throw InputError("situation mentions an unknown vertex");
  throw InputError("situation " + to_string(s, g) + " is not in the model");
}

std::vector<Situation> KSightModel::class_of(Player z, std::uint32_t i) const {
  std::vector<Situation> out;
  for (auto j : classes(z).block_containing(i)) out.push_back(sigma_[j]);
  return out;
}

bool operator==(const KSightModel& a, const KSightModel& b) {
  const bool same_arena = a.arena_ == b.arena_ ||
                          (a.arena_ && b.arena_ && a.graph().names() == b.graph().names() &&
                           a.graph().edges() == b.graph().edges());
  return same_arena && a.sight_ == b.sight_ && a.sigma_ == b.sigma_ && a.classes_[0] == b.classes_[0] &&
         a.classes_[1] == b.classes_[1];
}

const char* to_string(ValidationIssue::Kind kind) {
  switch (kind) {
    case ValidationIssue::Kind::EmptySigma: return "empty-sigma";
    case ValidationIssue::Kind::UnknownVertex: return "unknown-vertex";
    case ValidationIssue::Kind::DuplicateSituation: return "duplicate-situation";
    case ValidationIssue::Kind::NonSerial: return "non-serial";
    case ValidationIssue::Kind::NonSurjectiveConstants: return "non-surjective-constants";
    case ValidationIssue::Kind::NotAPartition: return "not-a-partition";
    case ValidationIssue::Kind::SightViolation: return "sight-violation";
  }
  return "unknown";
}

ValidationReport validate_model(const KSightModel& m, SightConfig sight) {
  ValidationReport report;
  using K = ValidationIssue::Kind;
  const auto& g = m.graph();
  auto add = [&](K kind, std::string msg) { report.issues.push_back({kind, std::move(msg), {}, {}, {}}); };

  for (Vertex v : g.sinks()) add(K::NonSerial, "vertex " + g.name(v) + " has no outgoing edge");
  for (Vertex v = 0; v < g.size(); ++v)
    if (m.arena().names_by_vertex()[v].empty()) add(K::NonSurjectiveConstants, "vertex " + g.name(v) + " has no name");

  const auto& sigma = m.sigma();
  if (sigma.empty()) add(K::EmptySigma, "situation set is empty");
  bool positions_ok = true;
  for (const auto& s : sigma)
    if (s.x >= g.size() || s.y >= g.size()) {
      add(K::UnknownVertex, "situation mentions an unknown vertex");
      positions_ok = false;
    }
  for (std::size_t i = 1; i < sigma.size(); ++i)
    if (sigma[i] == sigma[i - 1] && positions_ok)
      report.issues.push_back({K::DuplicateSituation, "situation " + to_string(sigma[i], g) + " listed twice", {}, sigma[i], {}});
  if (!positions_ok) return report;

  for (Player z : kPlayers) {
    const auto& part = m.classes(z);
    std::vector<int> hits(sigma.size(), 0);
    bool partition_ok = true;
    for (const auto& block : part.blocks) {
      if (block.empty()) {
        report.issues.push_back({K::NotAPartition, "empty class", z, {}, {}});
        partition_ok = false;
      }
      for (auto i : block) {
        if (i >= sigma.size()) {
          report.issues.push_back({K::NotAPartition, "class index out of range", z, {}, {}});
          partition_ok = false;
        } else {
          ++hits[i];
        }
      }
    }
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (hits[i] != 1) {
        report.issues.push_back({K::NotAPartition,
                                 "situation " + to_string(sigma[i], g) +
                                     (hits[i] == 0 ? " is in no class" : " is in several classes"),
                                 z, sigma[i], {}});
        partition_ok = false;
      }
    if (!partition_ok) continue;

    const unsigned k = sight.of(z);
    for (const auto& block : part.blocks)
      for (auto i : block)
        for (auto j : block) {
          if (i == j) continue;
          const auto& a = sigma[i];
          const auto& b = sigma[j];
          for (Player w : kPlayers) {
            if (g.within(a.at(z), a.at(w), k) && a.at(w) != b.at(w)) {
              report.issues.push_back({K::SightViolation,
                                       std::string(1, player_char(z)) + " confuses " + to_string(a, g) + " with " +
                                           to_string(b, g) + " although " + player_char(w) + " is in sight",
                                       z, a, b});
            }
          }
        }
  }
  return report;
}

KSightModel synthesize_initial(ArenaPtr arena, Situation actual, SightConfig sight) {
  if (!sight.symmetric()) throw UnsupportedError("initial state synthesis requires equal sights");
  const auto& g = arena->graph();
  if (actual.x >= g.size() || actual.y >= g.size()) throw InputError("actual situation mentions an unknown vertex");
  const unsigned k = sight.x;
  if (g.within(actual.x, actual.y, k)) return KSightModel::discrete(std::move(arena), sight, {actual});
  std::vector<Situation> sigma{actual};
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!g.within(actual.x, v, k)) sigma.push_back({actual.x, v});
    if (!g.within(actual.y, v, k)) sigma.push_back({v, actual.y});
  }
  return KSightModel::by_position(std::move(arena), sight, std::move(sigma));
}

std::vector<Situation> move_successors(const Situation& s, Player z, const GameGraph& graph) {
  std::vector<Situation> out;
  for (Vertex t : graph.successors(s.at(z))) out.push_back(s.with(z, t));
  std::ranges::sort(out);
  return out;
}

std::vector<Situation> joint_successors(const Situation& s, const GameGraph& graph) {
  std::vector<Situation> out;
  for (Vertex a : graph.successors(s.x))
    for (Vertex b : graph.successors(s.y)) out.push_back({a, b});
  std::ranges::sort(out);
  return out;
}

std::vector<Situation> lift_successors(const std::vector<Situation>& set, Player z, const GameGraph& graph) {
  std::vector<Situation> out;
  for (const auto& s : set)
    for (Vertex t : graph.successors(s.at(z))) out.push_back(s.with(z, t));
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> local_part_indices(const KSightModel& m, std::uint32_t i) {
  std::vector<std::uint32_t> out;
  const auto& bx = m.classes(Player::X).block_containing(i);
  const auto& by = m.classes(Player::Y).block_containing(i);
  std::ranges::set_union(bx, by, std::back_inserter(out));
  return out;
}

std::vector<Situation> local_part(const KSightModel& m, const Situation& s) {
  std::vector<Situation> out;
  for (auto j : local_part_indices(m, m.index_of(s))) out.push_back(m[j]);
  return out;
}

}  // namespace elcr
