#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elcr/structure.hpp"

namespace elcr {

/// Positions of both players: one possible world.
struct Situation {
  Vertex x = 0;
  Vertex y = 0;

  Vertex at(Player p) const { return p == Player::X ? x : y; }
  Situation with(Player p, Vertex v) const {
    Situation s = *this;
    (p == Player::X ? s.x : s.y) = v;
    return s;
  }
  friend auto operator<=>(const Situation&, const Situation&) = default;
};

std::string to_string(const Situation& s, const GameGraph& graph);

struct SightConfig {
  unsigned x = 0;
  unsigned y = 0;

  static SightConfig uniform(unsigned k) { return {k, k}; }
  unsigned of(Player p) const { return p == Player::X ? x : y; }
  bool symmetric() const { return x == y; }
  friend bool operator==(const SightConfig&, const SightConfig&) = default;
};

/// Blocks of situation indices. block_of maps an index to its (first) block.
struct Partition {
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint32_t> block_of;

  const std::vector<std::uint32_t>& block_containing(std::uint32_t i) const { return blocks[block_of[i]]; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks == b.blocks; }
};

/// Epistemic state (D, I, Sigma, ~). sigma is kept sorted; blocks are
/// sorted index lists, themselves ordered by their smallest member.
class KSightModel {
 public:
  KSightModel() = default;

  /// Builds from an arbitrary situation list. Class blocks index into
  /// situations as given; they are remapped after sorting. Structural
  /// defects (duplicates, overlapping blocks) are kept for validate_model
  /// to report rather than rejected.
  static KSightModel make(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations,
                          std::vector<std::vector<std::uint32_t>> blocks_x,
                          std::vector<std::vector<std::uint32_t>> blocks_y);
  /// Relates two situations for z exactly when z occupies the same vertex in both.
  static KSightModel by_position(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations);
  /// Every class a singleton.
  static KSightModel discrete(ArenaPtr arena, SightConfig sight, std::vector<Situation> situations);

  const Arena& arena() const { return *arena_; }
  const ArenaPtr& arena_ptr() const { return arena_; }
  const GameGraph& graph() const { return arena_->graph(); }
  const SightConfig& sight() const { return sight_; }

  const std::vector<Situation>& sigma() const { return sigma_; }
  std::size_t size() const { return sigma_.size(); }
  const Situation& operator[](std::uint32_t i) const { return sigma_[i]; }
  const Partition& classes(Player p) const { return classes_[static_cast<int>(p)]; }

  std::optional<std::uint32_t> find(const Situation& s) const;
  bool contains(const Situation& s) const { return find(s).has_value(); }
  /// Like find, but throws InputError if s is not in sigma.
  std::uint32_t index_of(const Situation& s) const;

  /// Situations z cannot tell apart from sigma_[i], including itself.
  std::vector<Situation> class_of(Player z, std::uint32_t i) const;

  friend bool operator==(const KSightModel& a, const KSightModel& b);

 private:
  void index();

  ArenaPtr arena_;
  SightConfig sight_;
  std::vector<Situation> sigma_;
  Partition classes_[2];
  std::vector<std::int32_t> lookup_;  // x * |D| + y -> index or -1
};

struct ValidationIssue {
  enum class Kind {
    EmptySigma,
    UnknownVertex,
    DuplicateSituation,
    NonSerial,
    NonSurjectiveConstants,
    NotAPartition,
    SightViolation,
  };
  Kind kind;
  std::string message;
  std::optional<Player> player;
  std::optional<Situation> first;
  std::optional<Situation> second;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

const char* to_string(ValidationIssue::Kind kind);

/// Lists every way m fails to be a k-sight model under the given
/// (possibly asymmetric) sight. Never throws.
ValidationReport validate_model(const KSightModel& m, SightConfig sight);
inline ValidationReport validate_model(const KSightModel& m) { return validate_model(m, m.sight()); }

/// Initial epistemic state of a game: each player knows its own position
/// and considers the opponent anywhere outside its sight, unless the two
/// already see each other.
KSightModel synthesize_initial(ArenaPtr arena, Situation actual, SightConfig sight);

/// R^z(s): z moves along one edge, the other player stays put. Sorted.
std::vector<Situation> move_successors(const Situation& s, Player z, const GameGraph& graph);
/// Both players move simultaneously. Sorted.
std::vector<Situation> joint_successors(const Situation& s, const GameGraph& graph);
/// Union of move_successors over a set. Sorted, without duplicates.
std::vector<Situation> lift_successors(const std::vector<Situation>& set, Player z, const GameGraph& graph);

/// Sigma|s: everything linked to s by either player's class. Sorted.
std::vector<Situation> local_part(const KSightModel& m, const Situation& s);
std::vector<std::uint32_t> local_part_indices(const KSightModel& m, std::uint32_t i);

}  // namespace elcr
