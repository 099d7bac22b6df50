#include "elcr/del.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "elcr/error.hpp"
#include "elcr/semantics.hpp"

namespace elcr {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Observer relation: four cases on whether each endpoint is in sight.
bool observer_related(const Event& a, const Event& b, const GameGraph& g, Vertex eye, unsigned k) {
  const bool as = g.within(eye, a.from, k), at = g.within(eye, a.to, k);
  const bool bs = g.within(eye, b.from, k), bt = g.within(eye, b.to, k);
  if (as && at) return a == b;
  if (as && !at) return a.from == b.from && !bt;
  if (!as && at) return a.to == b.to && !bs;
  return !bs && !bt;
}

}  // namespace

std::vector<std::vector<std::size_t>> EventModel::classes(Player p) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> done(events.size(), false);
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = i; j < events.size(); ++j)
      if (!done[j] && related(p, i, j)) block.push_back(j), done[j] = true;
    out.push_back(std::move(block));
  }
  return out;
}

EventModel build_event_model(const KSightModel& m, const Situation& sigma, Player z, unsigned k) {
  m.index_of(sigma);
  const auto& g = m.graph();
  EventModel e;
  e.mover = z;
  e.anchor = sigma;
  e.k = k;
  for (const auto& [s, t] : g.edges()) e.events.push_back({s, t});
  const std::size_t n = e.events.size();
  const Player w = other(z);
  auto& mine = e.approx[static_cast<int>(z)];
  auto& theirs = e.approx[static_cast<int>(w)];
  mine.assign(n, std::vector<bool>(n, false));
  theirs.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    mine[i][i] = true;
    for (std::size_t j = 0; j < n; ++j) theirs[i][j] = observer_related(e.events[i], e.events[j], g, sigma.at(w), k);
  }
  return e;
}

DelProduct product_update(const KSightModel& m, const Situation& sigma, const EventModel& e, unsigned k) {
  m.index_of(sigma);
  const auto& g = m.graph();
  const Player z = e.mover;

  struct Raw {
    std::uint32_t origin;
    std::size_t event;
    Situation pos;
  };
  std::vector<Raw> raw;
  for (std::uint32_t i = 0; i < m.size(); ++i)
    for (std::size_t ev = 0; ev < e.events.size(); ++ev)
      if (m[i].at(z) == e.events[ev].from) raw.push_back({i, ev, m[i].with(z, e.events[ev].to)});

  std::map<Situation, std::uint32_t> slot;
  for (const auto& r : raw) slot.emplace(r.pos, 0);
  std::vector<Situation> positions;
  for (auto& [pos, idx] : slot) {
    idx = static_cast<std::uint32_t>(positions.size());
    positions.push_back(pos);
  }

  DelProduct out;
  out.provenance.resize(positions.size());
  for (const auto& r : raw) out.provenance[slot[r.pos]].push_back({m[r.origin], e.events[r.event]});
  for (auto& p : out.provenance) std::ranges::sort(p);

  auto visible = [&](const Situation& s) { return g.within(s.x, s.y, k); };
  std::vector<std::vector<std::uint32_t>> blocks[2];
  for (Player p : kPlayers) {
    UnionFind uf(positions.size());
    const auto& part = m.classes(p);
    for (const auto& a : raw)
      for (const auto& b : raw) {
        if (part.block_of[a.origin] != part.block_of[b.origin]) continue;
        if (!e.related(p, a.event, b.event)) continue;
        if (visible(a.pos) ? a.pos != b.pos : visible(b.pos)) continue;
        uf.unite(slot[a.pos], slot[b.pos]);
      }
    std::map<std::size_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < positions.size(); ++i) groups[uf.find(i)].push_back(i);
    for (auto& [root, block] : groups) blocks[static_cast<int>(p)].push_back(std::move(block));
  }
  out.model = KSightModel::make(m.arena_ptr(), SightConfig::uniform(k), positions, std::move(blocks[0]),
                                std::move(blocks[1]));
  return out;
}

std::vector<DelLayer> del_layers(const KSightModel& m, const Situation& actual, const std::vector<Vertex>& moves,
                                 unsigned k, Player first) {
  std::vector<DelLayer> out;
  out.push_back({m, actual, {}, m.sigma(), local_part(m, actual)});
  KSightModel elcr = m;
  Player mover = first;
  for (Vertex t : moves) {
    const DelLayer& prev = out.back();
    if (t >= m.graph().size() || !m.graph().has_edge(prev.actual.at(mover), t))
      throw InputError(std::string("illegal move for ") + player_char(mover));
    const Situation landed = prev.actual.with(mover, t);
    DelProduct p = product_update(prev.model, prev.actual, build_event_model(prev.model, prev.actual, mover, k), k);
    for (auto& b : update(elcr, prev.actual, mover, k))
      if (b.landed == landed) elcr = std::move(b.model);
    DelLayer layer{std::move(p.model), landed, std::move(p.provenance), elcr.sigma(), {}};
    layer.del_local = local_part(layer.model, landed);
    out.push_back(std::move(layer));
    mover = other(mover);
  }
  return out;
}

std::vector<ComparisonEntry> compare(const KSightModel& m, const Situation& sigma, Player z, unsigned k) {
  const DelProduct product = product_update(m, sigma, build_event_model(m, sigma, z, k), k);
  std::vector<ComparisonEntry> out;
  for (const auto& branch : update(m, sigma, z, k)) {
    ComparisonEntry c;
    c.landed = branch.landed;
    c.del_local = local_part(product.model, branch.landed);
    c.elcr_sigma = branch.model.sigma();
    c.elcr_local = local_part(branch.model, branch.landed);
    c.equal = c.del_local == c.elcr_sigma;
    c.del_size = product.model.size();
    c.elcr_size = branch.model.size();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace elcr
