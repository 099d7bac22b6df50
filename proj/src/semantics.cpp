#include "elcr/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "elcr/error.hpp"

namespace elcr {
namespace {

unsigned common_sight(const KSightModel& m) {
  if (!m.sight().symmetric()) throw UnsupportedError("moves are only defined for equal sights");
  return m.sight().x;
}

std::vector<Situation> landings(const Situation& s, std::optional<Player> z, const GameGraph& g) {
  return z ? move_successors(s, *z, g) : joint_successors(s, g);
}

// Outcome models of a move, built lazily: every invisible landing shares
// one model, every visible landing gets its own singleton.
class Outcomes {
 public:
  Outcomes(const KSightModel& m, const Situation& s, std::optional<Player> z, unsigned k)
      : m_(m), s_(s), z_(z), k_(k) {}

  bool visible(const Situation& landed) const { return m_.graph().within(landed.x, landed.y, k_); }

  std::shared_ptr<const KSightModel> model_for(const Situation& landed) {
    if (visible(landed))
      return std::make_shared<const KSightModel>(
          KSightModel::discrete(m_.arena_ptr(), SightConfig::uniform(k_), {landed}));
    if (!hidden_)
      hidden_ = std::make_shared<const KSightModel>(KSightModel::by_position(
          m_.arena_ptr(), SightConfig::uniform(k_), invisible_successors(m_, s_, z_, k_)));
    return hidden_;
  }

 private:
  const KSightModel& m_;
  Situation s_;
  std::optional<Player> z_;
  unsigned k_;
  std::shared_ptr<const KSightModel> hidden_;
};

std::vector<UpdateBranch> branches(const KSightModel& m, const Situation& s, std::optional<Player> z, unsigned k) {
  m.index_of(s);
  Outcomes outcomes(m, s, z, k);
  std::vector<UpdateBranch> out;
  for (const auto& landed : landings(s, z, m.graph())) out.push_back({landed, *outcomes.model_for(landed)});
  return out;
}

class Evaluator {
 public:
  Evaluator(const KSightModel& m, std::optional<unsigned> k) : m_(m), k_(k), memo_(m.size()) {}

  bool at(std::uint32_t i, const Formula& f) {
    const Node& n = *f;
    const bool cache = n.size >= 24 && (n.kind == Kind::And || n.kind == Kind::Not);
    if (cache) {
      if (auto it = memo_[i].find(&n); it != memo_[i].end()) return it->second;
    }
    const bool v = compute(i, n);
    if (cache) memo_[i].emplace(&n, v);
    return v;
  }

 private:
  Vertex value(const Term& t, const Situation& s) const {
    return t.is_var() ? s.at(t.player()) : m_.arena().denotation(t.symbol());
  }

  bool compute(std::uint32_t i, const Node& n) {
    const Situation& s = m_[i];
    switch (n.kind) {
      case Kind::Top: return true;
      case Kind::Eq: return value(n.terms[0], s) == value(n.terms[1], s);
      case Kind::Pred: {
        static const Symbol r("R");
        if (n.pred == r) {
          if (n.terms.size() != 2) throw InputError("R expects 2 arguments");
          return m_.graph().has_edge(value(n.terms[0], s), value(n.terms[1], s));
        }
        std::vector<Vertex> args;
        args.reserve(n.terms.size());
        for (const auto& t : n.terms) args.push_back(value(t, s));
        return m_.arena().holds(n.pred.str(), args);
      }
      case Kind::Not: return !at(i, n.lhs);
      case Kind::And: return at(i, n.lhs) && at(i, n.rhs);
      case Kind::KnowValue: {
        const Vertex v = value(n.terms[0], s);
        for (auto j : m_.classes(n.player).block_containing(i))
          if (value(n.terms[0], m_[j]) != v) return false;
        return true;
      }
      case Kind::Know:
        for (auto j : m_.classes(n.player).block_containing(i))
          if (!at(j, n.lhs)) return false;
        return true;
      case Kind::Move: return after_move(s, n.player, n.lhs);
      case Kind::MoveAll: return after_move(s, std::nullopt, n.lhs);
    }
    throw InternalError("unknown formula kind");
  }

  bool after_move(const Situation& s, std::optional<Player> z, const Formula& body) {
    if (!k_) throw UnsupportedError("moves are only defined for equal sights");
    Outcomes outcomes(m_, s, z, *k_);
    std::shared_ptr<const KSightModel> hidden_model;
    std::unique_ptr<Evaluator> hidden_eval;
    for (const auto& landed : landings(s, z, m_.graph())) {
      auto model = outcomes.model_for(landed);
      bool ok;
      if (outcomes.visible(landed)) {
        ok = Evaluator(*model, k_).at(0, body);
      } else {
        if (!hidden_eval) {
          hidden_model = model;
          hidden_eval = std::make_unique<Evaluator>(*hidden_model, k_);
        }
        ok = hidden_eval->at(hidden_model->index_of(landed), body);
      }
      if (!ok) return false;
    }
    return true;
  }

  const KSightModel& m_;
  std::optional<unsigned> k_;
  std::vector<std::unordered_map<const Node*, bool>> memo_;
};

void check_formula(const Formula& f) {
  if (!f) throw InputError("empty formula");
  if (classify(f) == Layer::IllFormed) throw InputError("ill-formed formula: nested knowledge");
}

}  // namespace

std::vector<Situation> invisible_successors(const KSightModel& m, const Situation& s, std::optional<Player> z,
                                            unsigned k) {
  const auto& g = m.graph();
  std::vector<Situation> out;
  for (auto j : local_part_indices(m, m.index_of(s)))
    for (const auto& t : landings(m[j], z, g))
      if (!g.within(t.x, t.y, k)) out.push_back(t);
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<UpdateBranch> update(const KSightModel& m, const Situation& s, Player z, unsigned k) {
  return branches(m, s, z, k);
}

std::vector<UpdateBranch> update(const KSightModel& m, const Situation& s, Player z) {
  return branches(m, s, z, common_sight(m));
}

std::vector<UpdateBranch> update_sim(const KSightModel& m, const Situation& s, unsigned k) {
  return branches(m, s, std::nullopt, k);
}

std::vector<UpdateBranch> update_sim(const KSightModel& m, const Situation& s) {
  return branches(m, s, std::nullopt, common_sight(m));
}

bool eval(const KSightModel& m, const Situation& s, const Formula& f, unsigned k) {
  check_formula(f);
  const auto i = m.index_of(s);
  return Evaluator(m, k).at(i, f);
}

bool eval(const KSightModel& m, const Situation& s, const Formula& f) {
  check_formula(f);
  const auto i = m.index_of(s);
  std::optional<unsigned> k;
  if (m.sight().symmetric()) k = m.sight().x;
  return Evaluator(m, k).at(i, f);
}

}  // namespace elcr
