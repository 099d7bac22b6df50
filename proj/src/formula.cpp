#include "elcr/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "elcr/error.hpp"

namespace elcr {
namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t term_hash(const Term& t) {
  return t.is_var() ? static_cast<std::size_t>(t.player()) : static_cast<std::size_t>(t.symbol().id()) + 2;
}

std::uint32_t add_sizes(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t s = std::uint64_t{a} + b + 1;
  return s > 0xffffffffu ? 0xffffffffu : static_cast<std::uint32_t>(s);
}

}  // namespace

const char* to_string(Layer layer) {
  switch (layer) {
    case Layer::LB: return "LB";
    case Layer::LBD: return "LBD";
    case Layer::L: return "L";
    case Layer::LPlus: return "LPlus";
    case Layer::IllFormed: return "IllFormed";
  }
  return "?";
}

Formula make_node(Node node) {
  std::size_t h = mix(static_cast<std::size_t>(node.kind) * 31 + 7, static_cast<std::size_t>(node.player));
  h = mix(h, node.pred.id());
  for (const auto& t : node.terms) h = mix(h, term_hash(t));
  std::uint32_t sz = 1;
  if (node.lhs) h = mix(h, node.lhs.hash()), sz = add_sizes(node.lhs->size, 0);
  if (node.rhs) h = mix(h, node.rhs.hash()), sz = add_sizes(node.lhs->size, node.rhs->size);
  node.hash = h;
  node.size = sz;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Kind Formula::kind() const { return node_->kind; }
std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  if (x.player != y.player && (x.kind == Kind::KnowValue || x.kind == Kind::Know || x.kind == Kind::Move))
    return false;
  return x.pred == y.pred && x.terms == y.terms && x.lhs == y.lhs && x.rhs == y.rhs;
}

Formula top() {
  static const Formula t = make_node(Node{});
  return t;
}

Formula bottom() {
  static const Formula f = neg(top());
  return f;
}

Formula pred(Symbol name, std::vector<Term> args) {
  Node n;
  n.kind = Kind::Pred;
  n.pred = name;
  n.terms = std::move(args);
  return make_node(std::move(n));
}

Formula pred(std::string_view name, std::vector<Term> args) { return pred(Symbol(name), std::move(args)); }

Formula edge(Term a, Term b) {
  static const Symbol r("R");
  return pred(r, {a, b});
}

Formula eq(Term a, Term b) {
  Node n;
  n.kind = Kind::Eq;
  n.terms = {a, b};
  return make_node(std::move(n));
}

Formula neg(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}

Formula conj(Formula a, Formula b) {
  Node n;
  n.kind = Kind::And;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_node(std::move(n));
}

Formula know_value(Player z, Term t) {
  Node n;
  n.kind = Kind::KnowValue;
  n.player = z;
  n.terms = {t};
  return make_node(std::move(n));
}

Formula know(Player z, Formula f) {
  Node n;
  n.kind = Kind::Know;
  n.player = z;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}

Formula move(Player z, Formula f) {
  Node n;
  n.kind = Kind::Move;
  n.player = z;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}

Formula move_all(Formula f) {
  Node n;
  n.kind = Kind::MoveAll;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}

Formula disj(Formula a, Formula b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }
Formula implies(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }
Formula possible(Player z, Formula f) { return neg(know(z, neg(std::move(f)))); }
Formula can_move(Player z, Formula f) { return neg(move(z, neg(std::move(f)))); }
Formula can_move_all(Formula f) { return neg(move_all(neg(std::move(f)))); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool is_top(const Formula& f) { return f.kind() == Kind::Top; }
bool is_bottom(const Formula& f) { return f.kind() == Kind::Not && f->lhs.kind() == Kind::Top; }

Formula fold_neg(Formula f) {
  if (is_top(f)) return bottom();
  if (f.kind() == Kind::Not) return f->lhs;
  return neg(std::move(f));
}

Formula fold_conj(Formula a, Formula b) {
  if (is_bottom(a) || is_bottom(b)) return bottom();
  if (is_top(a)) return b;
  if (is_top(b)) return a;
  return conj(std::move(a), std::move(b));
}

Formula fold_disj(Formula a, Formula b) {
  if (is_top(a) || is_top(b)) return top();
  if (is_bottom(a)) return b;
  if (is_bottom(b)) return a;
  return disj(std::move(a), std::move(b));
}

Formula fold_implies(Formula a, Formula b) {
  if (is_bottom(a) || is_top(b)) return top();
  if (is_top(a)) return b;
  if (is_bottom(b)) return fold_neg(std::move(a));
  return implies(std::move(a), std::move(b));
}

Formula fold_conj_all(const std::vector<Formula>& fs) {
  Formula acc = top();
  for (const auto& f : fs) {
    acc = fold_conj(acc, f);
    if (is_bottom(acc)) break;
  }
  return acc;
}

Formula fold_disj_all(const std::vector<Formula>& fs) {
  Formula acc = bottom();
  for (const auto& f : fs) {
    acc = fold_disj(acc, f);
    if (is_top(acc)) break;
  }
  return acc;
}

namespace {

struct LayerInfo {
  Layer layer;
  bool has_knowledge;
};

LayerInfo classify_rec(const Formula& f, std::unordered_map<const Node*, LayerInfo>& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  LayerInfo out{Layer::LB, false};
  auto join = [](Layer a, Layer b) { return std::max(a, b); };
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
    case Kind::Eq: break;
    case Kind::Not: out = classify_rec(f->lhs, memo); break;
    case Kind::And: {
      auto a = classify_rec(f->lhs, memo);
      auto b = classify_rec(f->rhs, memo);
      out = {join(a.layer, b.layer), a.has_knowledge || b.has_knowledge};
      break;
    }
    case Kind::KnowValue: out = {Layer::L, true}; break;
    case Kind::Know: {
      auto body = classify_rec(f->lhs, memo);
      if (body.has_knowledge || body.layer == Layer::IllFormed)
        out = {Layer::IllFormed, true};
      else
        out = {body.layer == Layer::LPlus ? Layer::LPlus : Layer::L, true};
      break;
    }
    case Kind::Move: {
      auto body = classify_rec(f->lhs, memo);
      out = {join(body.layer, Layer::LBD), body.has_knowledge};
      break;
    }
    case Kind::MoveAll: {
      auto body = classify_rec(f->lhs, memo);
      out = {join(body.layer, Layer::LPlus), body.has_knowledge};
      break;
    }
  }
  memo.emplace(f.get(), out);
  return out;
}

template <class Pred>
bool any_node(const Formula& f, Pred&& p) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{f.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (p(*n)) return true;
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
  return false;
}

}  // namespace

Layer classify(const Formula& f) {
  std::unordered_map<const Node*, LayerInfo> memo;
  return classify_rec(f, memo).layer;
}

bool is_static(const Formula& f) {
  return !any_node(f, [](const Node& n) { return n.kind == Kind::Move || n.kind == Kind::MoveAll; });
}

bool is_knowledge_free(const Formula& f) {
  return !any_node(f, [](const Node& n) { return n.kind == Kind::Know || n.kind == Kind::KnowValue; });
}

bool mentions(const Formula& f, Player z) {
  const Term v = Term::var(z);
  return any_node(f, [&](const Node& n) { return std::ranges::find(n.terms, v) != n.terms.end(); });
}

unsigned dynamic_depth(const Formula& f) {
  std::unordered_map<const Node*, unsigned> memo;
  std::function<unsigned(const Formula&)> rec = [&](const Formula& g) -> unsigned {
    if (auto it = memo.find(g.get()); it != memo.end()) return it->second;
    unsigned d = 0;
    if (g->lhs) d = rec(g->lhs);
    if (g->rhs) d = std::max(d, rec(g->rhs));
    if (g.kind() == Kind::Move || g.kind() == Kind::MoveAll) ++d;
    memo.emplace(g.get(), d);
    return d;
  };
  return rec(f);
}

std::size_t dag_size(const Formula& f) {
  std::size_t count = 0;
  any_node(f, [&](const Node&) {
    ++count;
    return false;
  });
  return count;
}

Formula substitute(const Formula& f, Player z, Term t) {
  std::unordered_map<const Node*, Formula> memo;
  const Term v = Term::var(z);
  std::function<Formula(const Formula&)> rec = [&](const Formula& g) -> Formula {
    if (auto it = memo.find(g.get()); it != memo.end()) return it->second;
    Formula out;
    switch (g.kind()) {
      case Kind::Top: out = g; break;
      case Kind::Pred:
      case Kind::Eq: {
        if (std::ranges::find(g->terms, v) == g->terms.end()) {
          out = g;
          break;
        }
        Node n = *g;
        for (auto& term : n.terms)
          if (term == v) term = t;
        out = make_node(std::move(n));
        break;
      }
      case Kind::Not: {
        Formula a = rec(g->lhs);
        out = a.get() == g->lhs.get() ? g : neg(a);
        break;
      }
      case Kind::And: {
        Formula a = rec(g->lhs);
        Formula b = rec(g->rhs);
        out = (a.get() == g->lhs.get() && b.get() == g->rhs.get()) ? g : conj(a, b);
        break;
      }
      default: throw InternalError("substitution is only defined on Boolean formulas");
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return rec(f);
}

}  // namespace elcr
