#include "elcr/oracle.hpp"

#include "elcr/error.hpp"

namespace elcr::oracle {
namespace {

int idx(Player p) { return p == Player::X ? 0 : 1; }

bool visible(const GameGraph& g, const Situation& s, unsigned k) { return sight(g, s.y, k).contains(s.x); }

std::set<Situation> step_all(const GameGraph& g, const std::set<Situation>& from, std::optional<Player> z) {
  std::set<Situation> out;
  for (const auto& [a, b] : g.edges())
    for (const auto& s : from) {
      if (!z) {
        if (s.x != a) continue;
        for (const auto& [c, d] : g.edges())
          if (s.y == c) out.insert({b, d});
      } else if (s.at(*z) == a) {
        out.insert(s.with(*z, b));
      }
    }
  return out;
}

Vertex value(const Arena& a, const Situation& s, const Term& t) {
  return t.is_var() ? s.at(t.player()) : a.denotation(t.symbol());
}

std::vector<Situation> cell(const World& w, const Situation& s, Player z) {
  std::vector<Situation> out;
  for (const auto& t : w.sigma)
    if (w.related[idx(z)].contains({s, t})) out.push_back(t);
  return out;
}

}  // namespace

World from_model(const KSightModel& m) {
  World w;
  w.arena = m.arena_ptr();
  w.sigma.insert(m.sigma().begin(), m.sigma().end());
  for (Player p : kPlayers)
    for (const auto& block : m.classes(p).blocks)
      for (auto i : block)
        for (auto j : block) w.related[idx(p)].insert({m[i], m[j]});
  return w;
}

std::set<Vertex> sight(const GameGraph& g, Vertex s, unsigned k) {
  std::set<Vertex> seen{s};
  for (unsigned round = 0; round < k; ++round) {
    std::set<Vertex> next = seen;
    for (const auto& [a, b] : g.edges()) {
      if (seen.contains(a)) next.insert(b);
      if (seen.contains(b)) next.insert(a);
    }
    seen = std::move(next);
  }
  return seen;
}

std::vector<std::pair<Situation, World>> branches(const World& w, const Situation& s, std::optional<Player> z,
                                                  unsigned k) {
  if (!w.sigma.contains(s)) throw InputError("situation outside the model");
  const GameGraph& g = w.arena->graph();
  std::set<Situation> local;
  for (const auto& t : w.sigma)
    if (w.related[0].contains({s, t}) || w.related[1].contains({s, t})) local.insert(t);
  const std::set<Situation> lifted = step_all(g, local, z);

  std::vector<std::pair<Situation, World>> out;
  for (const auto& landed : step_all(g, {s}, z)) {
    World next;
    next.arena = w.arena;
    if (visible(g, landed, k)) {
      next.sigma = {landed};
    } else {
      for (const auto& t : lifted)
        if (!visible(g, t, k)) next.sigma.insert(t);
    }
    for (const auto& a : next.sigma)
      for (const auto& b : next.sigma) {
        if (a.x == b.x) next.related[0].insert({a, b});
        if (a.y == b.y) next.related[1].insert({a, b});
      }
    out.emplace_back(landed, std::move(next));
  }
  return out;
}

bool eval(const World& w, const Situation& s, const Formula& f, unsigned k) {
  const Arena& a = *w.arena;
  switch (f.kind()) {
    case Kind::Top:
      return true;
    case Kind::Pred: {
      std::vector<Vertex> args;
      for (const auto& t : f->terms) args.push_back(value(a, s, t));
      return a.holds(f->pred.str(), args);
    }
    case Kind::Eq:
      return value(a, s, f->terms[0]) == value(a, s, f->terms[1]);
    case Kind::Not:
      return !eval(w, s, f->lhs, k);
    case Kind::And:
      return eval(w, s, f->lhs, k) && eval(w, s, f->rhs, k);
    case Kind::KnowValue: {
      std::set<Vertex> values;
      for (const auto& t : cell(w, s, f->player)) values.insert(value(a, t, f->terms[0]));
      return values.size() == 1;
    }
    case Kind::Know:
      for (const auto& t : cell(w, s, f->player))
        if (!eval(w, t, f->lhs, k)) return false;
      return true;
    case Kind::Move:
    case Kind::MoveAll: {
      const auto z = f.kind() == Kind::Move ? std::optional<Player>(f->player) : std::nullopt;
      for (const auto& [landed, next] : branches(w, s, z, k))
        if (!eval(next, landed, f->lhs, k)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace elcr::oracle
