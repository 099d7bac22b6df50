#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/model.hpp"

namespace elcr {

/// One possible outcome of a move: where the players ended up and the
/// epistemic state that results.
struct UpdateBranch {
  Situation landed;
  KSightModel model;
};

/// Outcome of every legal move of z from s, in ascending order of landing
/// situation. Requires s in m.sigma() and equal sights k.
std::vector<UpdateBranch> update(const KSightModel& m, const Situation& s, Player z, unsigned k);
std::vector<UpdateBranch> update(const KSightModel& m, const Situation& s, Player z);

/// Both players move at once.
std::vector<UpdateBranch> update_sim(const KSightModel& m, const Situation& s, unsigned k);
std::vector<UpdateBranch> update_sim(const KSightModel& m, const Situation& s);

/// Situation set shared by every invisible landing after z moves from s
/// (or after a joint move when z is empty).
std::vector<Situation> invisible_successors(const KSightModel& m, const Situation& s, std::optional<Player> z,
                                            unsigned k);

/// Truth of f at the pointed model (m, s). Moves use sight k; the
/// overload without k takes the model's own sight, which must then be
/// equal for both players whenever f contains a move.
bool eval(const KSightModel& m, const Situation& s, const Formula& f, unsigned k);
bool eval(const KSightModel& m, const Situation& s, const Formula& f);

}  // namespace elcr
