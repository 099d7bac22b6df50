#include "elcr/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "elcr/error.hpp"
#include "elcr/macros.hpp"

namespace elcr {

const char* to_string(RewriteMode mode) { return mode == RewriteMode::Axioms ? "axioms" : "semantic"; }

namespace {

using Subsets = std::vector<std::vector<Symbol>>;

std::string join_path(const std::string& base, int child) {
  return base.empty() ? std::to_string(child) : base + "." + std::to_string(child);
}

bool lb(const Formula& f) { return is_static(f) && is_knowledge_free(f); }

// Builds the right-hand sides of the recursion axioms and the pointwise
// translation. Caches everything that depends only on the vocabulary.
class Builder {
 public:
  Builder(const Vocabulary& vocab, const RewriteOptions& opts) : vocab_(vocab), opts_(opts) {}

  const Vocabulary& vocab() const { return vocab_; }

  Formula D(Term a, Term b) {
    auto key = std::make_pair(a, b);
    if (auto it = dist_.find(key); it != dist_.end()) return it->second;
    Formula f = distance_formula(opts_.k, a, b, vocab_);
    dist_.emplace(key, f);
    return f;
  }

  const Subsets& succ_subsets() {
    if (!succ_) succ_ = opts_.prune ? pruned_succ() : constant_subsets(vocab_, opts_.max_subsets);
    return *succ_;
  }

  const Subsets& know_subsets() {
    if (!know_) know_ = opts_.prune ? pruned_know() : constant_subsets(vocab_, opts_.max_subsets);
    return *know_;
  }

  Formula succ_is(Term u, const std::vector<Symbol>& t) {
    auto [it, fresh] = succ_is_.try_emplace({u, t});
    if (fresh) it->second = succ_set_formula(u, t, vocab_);
    return it->second;
  }
  Formula knows_is(Player z, const std::vector<Symbol>& t) {
    auto [it, fresh] = knows_is_[static_cast<int>(z)].try_emplace(t);
    if (fresh) it->second = know_set_formula(z, other(z), t, vocab_);
    return it->second;
  }

  static Term c(Symbol s) { return Term::constant(s); }

  // R1: [z]α for Boolean α.
  Formula r1(Player z, const Formula& alpha) {
    std::vector<Formula> outer;
    for (const auto& t : succ_subsets()) {
      std::vector<Formula> inner;
      for (Symbol a : t) inner.push_back(substitute(alpha, z, c(a)));
      outer.push_back(fold_implies(succ_is(Term::var(z), t), fold_conj_all(inner)));
    }
    return fold_conj_all(outer);
  }

  // R5: [z] K_z z'.
  Formula r5(Player z) {
    const Player w = other(z);
    const Term tw = Term::var(w);
    std::vector<Formula> outer;
    for (const auto& t : know_subsets())
      for (const auto& t1 : succ_subsets()) {
        std::vector<Formula> per_a;
        for (Symbol a : t1) {
          std::vector<Formula> per_b;
          for (Symbol b : t) per_b.push_back(fold_implies(neg(eq(c(b), tw)), D(c(a), c(b))));
          per_a.push_back(fold_disj(D(c(a), tw), fold_conj_all(per_b)));
        }
        outer.push_back(fold_implies(conj(knows_is(z, t), succ_is(Term::var(z), t1)), fold_conj_all(per_a)));
      }
    return fold_disj(know_value(z, tw), fold_conj_all(outer));
  }

  // R6: [z] K_z' z.
  Formula r6(Player z) {
    const Player w = other(z);
    const Term tw = Term::var(w);
    std::map<std::vector<Symbol>, Formula> same_for;
    for (const auto& t1 : know_subsets()) {
      std::vector<Formula> same;
      for (Symbol p1 : t1)
        for (Symbol p2 : t1)
          for (Symbol q1 : vocab_.constants)
            for (Symbol q2 : vocab_.constants) {
              Formula ante = conj(conj(conj(edge(c(p1), c(q1)), edge(c(p2), c(q2))), neg(D(tw, c(q1)))),
                                  neg(D(tw, c(q2))));
              same.push_back(fold_implies(ante, eq(c(q1), c(q2))));
            }
      same_for.emplace(t1, fold_conj_all(same));
    }
    std::vector<Formula> outer;
    for (const auto& t : succ_subsets()) {
      std::vector<Formula> seen;
      for (Symbol s : t) seen.push_back(D(tw, c(s)));
      const Formula all_seen = fold_conj_all(seen);
      for (const auto& t1 : know_subsets())
        outer.push_back(fold_implies(conj(succ_is(Term::var(z), t), knows_is(w, t1)),
                                     fold_disj(all_seen, same_for.at(t1))));
    }
    return fold_conj_all(outer);
  }

  // R9: [z] K_z α(z').
  Formula r9(Player z, const Formula& alpha) {
    const Player w = other(z);
    const Term tw = Term::var(w);
    const Formula known = know_value(z, tw);
    std::map<Symbol, Formula> moved_to;
    for (Symbol a : vocab_.constants) moved_to.emplace(a, substitute(alpha, z, c(a)));
    std::map<std::pair<Symbol, std::vector<Symbol>>, Formula> landing;
    auto land = [&](Symbol a, const std::vector<Symbol>& t1) {
      auto [it, fresh] = landing.try_emplace({a, t1});
      if (fresh) {
        const Formula& moved = moved_to.at(a);
        std::vector<Formula> per_c;
        for (Symbol b : t1) per_c.push_back(fold_implies(neg(D(c(a), c(b))), substitute(moved, w, c(b))));
        it->second = fold_disj(fold_conj(D(c(a), tw), moved), fold_conj(neg(D(c(a), tw)), fold_conj_all(per_c)));
      }
      return it->second;
    };
    std::vector<Formula> outer;
    for (const auto& t : succ_subsets())
      for (const auto& t1 : know_subsets()) {
        std::vector<Formula> all_moves;
        for (Symbol a : t) all_moves.push_back(moved_to.at(a));
        std::vector<Formula> per_t;
        for (Symbol a : t) per_t.push_back(land(a, t1));
        outer.push_back(fold_implies(conj(succ_is(Term::var(z), t), knows_is(z, t1)),
                                     fold_disj(fold_conj(known, fold_conj_all(all_moves)),
                                               fold_conj(neg(known), fold_conj_all(per_t)))));
      }
    return fold_conj_all(outer);
  }

  // R10: [z] K_z' α(z).
  Formula r10(Player z, const Formula& alpha) {
    const Player w = other(z);
    const Term tw = Term::var(w);
    std::map<Symbol, Formula> moved_to;
    for (Symbol a : vocab_.constants) moved_to.emplace(a, substitute(alpha, z, c(a)));
    std::map<std::vector<Symbol>, Formula> hidden_for;
    for (const auto& t1 : know_subsets()) {
      std::vector<Formula> hidden;
      for (Symbol p : t1)
        for (Symbol q : vocab_.constants)
          hidden.push_back(fold_implies(conj(edge(c(p), c(q)), neg(D(tw, c(q)))), moved_to.at(q)));
      hidden_for.emplace(t1, fold_conj_all(hidden));
    }
    std::vector<Formula> outer;
    for (const auto& t : succ_subsets()) {
      std::vector<Formula> all_moves;
      std::vector<Formula> seen;
      for (Symbol a : t) {
        all_moves.push_back(moved_to.at(a));
        seen.push_back(D(tw, c(a)));
      }
      const Formula moves_ok = fold_conj_all(all_moves);
      const Formula all_seen = fold_conj_all(seen);
      for (const auto& t1 : know_subsets())
        outer.push_back(fold_implies(conj(succ_is(Term::var(z), t), knows_is(w, t1)),
                                     fold_conj(moves_ok, fold_disj(all_seen, hidden_for.at(t1)))));
    }
    return fold_conj_all(outer);
  }

  // [z]χ = ⋀_T (Rz=T → ⋀_{c∈T} pt(χ, z, c)).
  Formula pointwise_move(Player z, const Formula& chi, std::set<std::string>& cites) {
    std::map<Symbol, Formula> landed;
    for (Symbol a : vocab_.constants) landed.emplace(a, pt(chi, z, a, cites));
    if (std::ranges::all_of(landed, [](const auto& kv) { return is_top(kv.second); })) return top();
    std::vector<Formula> outer;
    for (const auto& t : succ_subsets()) {
      std::vector<Formula> inner;
      for (Symbol a : t) inner.push_back(landed.at(a));
      outer.push_back(fold_implies(succ_is(Term::var(z), t), fold_conj_all(inner)));
    }
    return fold_conj_all(outer);
  }

  Formula pt(const Formula& f, Player z, Symbol a, std::set<std::string>& cites) {
    auto key = std::make_tuple(f.get(), z, a.id());
    if (auto it = pt_memo_.find(key); it != pt_memo_.end()) {
      cites.insert(it->second.second.begin(), it->second.second.end());
      return it->second.first;
    }
    std::set<std::string> local;
    Formula out = pt_compute(f, z, a, local);
    cites.insert(local.begin(), local.end());
    pt_memo_.emplace(key, std::make_pair(out, std::move(local)));
    return out;
  }

 private:
  Formula pt_compute(const Formula& f, Player z, Symbol a, std::set<std::string>& cites) {
    const Player w = other(z);
    const Term tw = Term::var(w);
    const Term ta = c(a);
    switch (f.kind()) {
      case Kind::Top: return f;
      case Kind::Pred:
      case Kind::Eq: cites.insert("R1"); return substitute(f, z, ta);
      case Kind::Not: return fold_neg(pt(f->lhs, z, a, cites));
      case Kind::And: {
        Formula l = pt(f->lhs, z, a, cites);
        if (is_bottom(l)) return l;
        return fold_conj(l, pt(f->rhs, z, a, cites));
      }
      case Kind::KnowValue: {
        const Term t = f->terms[0];
        const Player v = f->player;
        if (t.is_const() || t == Term::var(v)) {
          cites.insert("R4");
          return top();
        }
        if (v == z) {
          cites.insert("R5");
          std::vector<Formula> parts;
          for (Symbol b : vocab_.constants)
            parts.push_back(fold_implies(conj(possible(z, eq(tw, c(b))), neg(D(ta, c(b)))), eq(c(b), tw)));
          return fold_disj(D(ta, tw), fold_conj_all(parts));
        }
        cites.insert("R6");
        std::vector<Formula> parts;
        for (Symbol b : vocab_.constants)
          parts.push_back(fold_implies(conj(reachable_for(w, z, b), neg(D(c(b), tw))), eq(c(b), ta)));
        return fold_disj(D(ta, tw), fold_conj_all(parts));
      }
      case Kind::Know: {
        const Formula& alpha = f->lhs;
        if (!lb(alpha)) throw InternalError("knowledge body was not reduced to a Boolean formula");
        const Formula moved = substitute(alpha, z, ta);
        const Formula seen = D(ta, tw);
        std::vector<Formula> parts;
        if (f->player == z) {
          cites.insert("R9");
          for (Symbol b : vocab_.constants)
            parts.push_back(
                fold_implies(conj(possible(z, eq(tw, c(b))), neg(D(ta, c(b)))), substitute(moved, w, c(b))));
        } else {
          cites.insert("R10");
          for (Symbol b : vocab_.constants)
            parts.push_back(
                fold_implies(conj(reachable_for(w, z, b), neg(D(c(b), tw))), substitute(alpha, z, c(b))));
        }
        return fold_disj(fold_conj(seen, moved), fold_conj(neg(seen), fold_conj_all(parts)));
      }
      case Kind::Move:
      case Kind::MoveAll: throw InternalError("pointwise translation expects a static kernel");
    }
    throw InternalError("unknown formula kind");
  }

  // Some position w considers possible for z has an edge to b.
  Formula reachable_for(Player w, Player z, Symbol b) {
    std::vector<Formula> parts;
    for (Symbol s : vocab_.constants) parts.push_back(conj(possible(w, eq(Term::var(z), c(s))), edge(c(s), c(b))));
    return disj_all(parts);
  }

  std::uint64_t mask_of(const std::vector<Symbol>& t) const {
    std::uint64_t m = 0;
    for (Symbol s : t) {
      auto it = std::ranges::lower_bound(vocab_.constants, s);
      m |= std::uint64_t{1} << (it - vocab_.constants.begin());
    }
    return m;
  }

  Subsets sorted_by_mask(std::set<std::vector<Symbol>> sets) const {
    Subsets out(sets.begin(), sets.end());
    std::ranges::sort(out, [&](const auto& a, const auto& b) { return mask_of(a) < mask_of(b); });
    return out;
  }

  std::vector<Symbol> names_of(const std::vector<Vertex>& vs) const {
    std::vector<Symbol> out;
    for (Vertex v : vs)
      for (Symbol s : opts_.prune->names_by_vertex()[v])
        if (vocab_.has_constant(s)) out.push_back(s);
    std::ranges::sort(out);
    return out;
  }

  Subsets pruned_succ() const {
    const auto& g = opts_.prune->graph();
    std::set<std::vector<Symbol>> sets;
    for (Vertex v = 0; v < g.size(); ++v) {
      auto succ = g.successors(v);
      sets.insert(names_of(std::vector<Vertex>(succ.begin(), succ.end())));
    }
    return sorted_by_mask(std::move(sets));
  }

  Subsets pruned_know() const {
    const auto& g = opts_.prune->graph();
    if (g.size() >= 63 || (opts_.max_subsets && (std::uint64_t{1} << g.size()) > *opts_.max_subsets))
      throw ResourceError("too many vertex subsets to expand");
    std::set<std::vector<Symbol>> sets;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << g.size()); ++m) {
      std::vector<Vertex> vs;
      for (Vertex v = 0; v < g.size(); ++v)
        if (m >> v & 1) vs.push_back(v);
      sets.insert(names_of(vs));
    }
    return sorted_by_mask(std::move(sets));
  }

  const Vocabulary& vocab_;
  const RewriteOptions& opts_;
  std::map<std::pair<Term, Term>, Formula> dist_;
  std::map<std::pair<Term, std::vector<Symbol>>, Formula> succ_is_;
  std::map<std::vector<Symbol>, Formula> knows_is_[2];
  std::optional<Subsets> succ_;
  std::optional<Subsets> know_;
  std::map<std::tuple<const Node*, Player, std::uint32_t>, std::pair<Formula, std::set<std::string>>> pt_memo_;
};

std::string first_axiom(Player z, const Formula& body) {
  const Player w = other(z);
  switch (body.kind()) {
    case Kind::KnowValue: {
      const Term t = body->terms[0];
      if (t.is_const() || t == Term::var(body->player)) return "R4";
      return body->player == z ? "R5" : "R6";
    }
    case Kind::Know:
      if (!lb(body->lhs)) return "";
      if (body->player == z) return mentions(body->lhs, w) ? "R9" : "R7";
      return mentions(body->lhs, z) ? "R10" : "R8";
    default: break;
  }
  if (lb(body)) return "R1";
  if (body.kind() == Kind::And) return "R3";
  if (body.kind() == Kind::Not) return "R2";
  return "";
}

std::optional<Formula> rhs_for(Builder& b, const std::string& axiom, Player z, const Formula& body) {
  const Player w = other(z);
  if (axiom == "R1") {
    if (!lb(body)) return std::nullopt;
    return b.r1(z, body);
  }
  if (axiom == "R2") {
    if (body.kind() != Kind::Not) return std::nullopt;
    return neg(move(z, body->lhs));
  }
  if (axiom == "R3") {
    if (body.kind() != Kind::And) return std::nullopt;
    return conj(move(z, body->lhs), move(z, body->rhs));
  }
  if (axiom == "R4") {
    if (body.kind() != Kind::KnowValue) return std::nullopt;
    const Term t = body->terms[0];
    if (!(t.is_const() || t == Term::var(body->player))) return std::nullopt;
    return top();
  }
  if (axiom == "R5" || axiom == "R6") {
    if (body.kind() != Kind::KnowValue) return std::nullopt;
    const bool r5 = axiom == "R5";
    const Player knower = r5 ? z : w;
    const Player target = r5 ? w : z;
    if (body->player != knower || body->terms[0] != Term::var(target)) return std::nullopt;
    return r5 ? b.r5(z) : b.r6(z);
  }
  if (body.kind() != Kind::Know || !lb(body->lhs)) return std::nullopt;
  const Formula& alpha = body->lhs;
  if (axiom == "R7") {
    if (body->player != z || mentions(alpha, w)) return std::nullopt;
    return move(z, alpha);
  }
  if (axiom == "R8") {
    if (body->player != w || mentions(alpha, z)) return std::nullopt;
    return alpha;
  }
  if (axiom == "R9") {
    if (body->player != z) return std::nullopt;
    return b.r9(z, alpha);
  }
  if (axiom == "R10") {
    if (body->player != w) return std::nullopt;
    return b.r10(z, alpha);
  }
  throw InputError("unknown axiom '" + axiom + "'");
}

class Reducer {
 public:
  Reducer(const Vocabulary& vocab, const RewriteOptions& opts, RewriteTrace& trace)
      : builder_(vocab, opts), opts_(opts), trace_(trace) {}

  Formula run(const Formula& f, const std::string& path) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    Formula out;
    switch (f.kind()) {
      case Kind::Top:
      case Kind::Pred:
      case Kind::Eq:
      case Kind::KnowValue: out = f; break;
      case Kind::Not: {
        Formula a = run(f->lhs, join_path(path, 0));
        out = a.get() == f->lhs.get() ? f : neg(a);
        break;
      }
      case Kind::And: {
        Formula a = run(f->lhs, join_path(path, 0));
        Formula b = run(f->rhs, join_path(path, 1));
        out = (a.get() == f->lhs.get() && b.get() == f->rhs.get()) ? f : conj(a, b);
        break;
      }
      case Kind::Know: {
        Formula a = run(f->lhs, join_path(path, 0));
        out = a.get() == f->lhs.get() ? f : know(f->player, a);
        break;
      }
      case Kind::Move: {
        Formula body = run(f->lhs, join_path(path, 0));
        out = eliminate(f->player, body, path);
        break;
      }
      case Kind::MoveAll: throw UnsupportedError("no recursion axioms exist for the simultaneous move");
    }
    memo_.emplace(f.get(), out);
    return out;
  }

 private:
  void record(std::string axiom, const std::string& path, Formula lhs, Formula rhs,
              std::vector<std::string> cites = {}) {
    if (opts_.record_steps)
      trace_.steps.push_back({std::move(axiom), path, std::move(cites), std::move(lhs), std::move(rhs)});
  }

  Formula eliminate(Player z, const Formula& body, const std::string& path) {
    auto key = std::make_pair(body.get(), z);
    if (auto it = elim_memo_.find(key); it != elim_memo_.end()) return it->second;
    Formula out;
    if (opts_.mode == RewriteMode::Semantic) {
      std::set<std::string> cites;
      out = builder_.pointwise_move(z, body, cites);
      record("pointwise", path, move(z, body), out, std::vector<std::string>(cites.begin(), cites.end()));
    } else {
      const std::string axiom = first_axiom(z, body);
      if (axiom.empty()) throw InternalError("no recursion axiom applies");
      const Formula rhs = *rhs_for(builder_, axiom, z, body);
      record(axiom, path, move(z, body), rhs);
      if (axiom == "R3") {
        out = conj(eliminate(z, body->lhs, join_path(path, 0)), eliminate(z, body->rhs, join_path(path, 1)));
      } else if (axiom == "R2") {
        out = neg(eliminate(z, body->lhs, join_path(path, 0)));
      } else if (axiom == "R7") {
        out = eliminate(z, body->lhs, path);
      } else {
        out = rhs;
      }
    }
    elim_memo_.emplace(key, out);
    return out;
  }

  Builder builder_;
  const RewriteOptions& opts_;
  RewriteTrace& trace_;
  std::unordered_map<const Node*, Formula> memo_;
  std::map<std::pair<const Node*, Player>, Formula> elim_memo_;
};

void check_input(const Formula& f) {
  const Layer layer = classify(f);
  if (layer == Layer::IllFormed) throw InputError("ill-formed formula: nested knowledge");
  if (layer == Layer::LPlus) throw UnsupportedError("no recursion axioms exist for the simultaneous move");
}

// Leftmost innermost Move with a static body.
std::optional<std::pair<Formula, RewriteStep>> step_at(const Formula& f, const std::string& path, Builder& b) {
  auto rebuild1 = [&](auto make, const Formula& child, int idx) -> std::optional<std::pair<Formula, RewriteStep>> {
    auto r = step_at(child, join_path(path, idx), b);
    if (!r) return std::nullopt;
    return std::make_pair(make(r->first), std::move(r->second));
  };
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
    case Kind::Eq:
    case Kind::KnowValue: return std::nullopt;
    case Kind::Not: return rebuild1([](Formula a) { return neg(a); }, f->lhs, 0);
    case Kind::Know: return rebuild1([&](Formula a) { return know(f->player, a); }, f->lhs, 0);
    case Kind::And: {
      if (auto r = rebuild1([&](Formula a) { return conj(a, f->rhs); }, f->lhs, 0)) return r;
      return rebuild1([&](Formula a) { return conj(f->lhs, a); }, f->rhs, 1);
    }
    case Kind::Move: {
      if (auto r = rebuild1([&](Formula a) { return move(f->player, a); }, f->lhs, 0)) return r;
      const std::string axiom = first_axiom(f->player, f->lhs);
      if (axiom.empty()) throw InternalError("no recursion axiom applies");
      Formula rhs = *rhs_for(b, axiom, f->player, f->lhs);
      return std::make_pair(rhs, RewriteStep{axiom, path, {}, f, rhs});
    }
    case Kind::MoveAll: throw UnsupportedError("no recursion axioms exist for the simultaneous move");
  }
  return std::nullopt;
}

}  // namespace

RewriteTrace reduce(const Formula& f, const Vocabulary& vocab, const RewriteOptions& opts) {
  check_input(f);
  RewriteTrace trace;
  trace.input = f;
  trace.mode = opts.mode;
  Reducer reducer(vocab, opts, trace);
  trace.output = reducer.run(f, "");
  return trace;
}

std::optional<std::pair<Formula, RewriteStep>> reduce_step(const Formula& f, const Vocabulary& vocab,
                                                           const RewriteOptions& opts) {
  check_input(f);
  Builder b(vocab, opts);
  return step_at(f, "", b);
}

Formula pointwise_translate(const Formula& kernel, Player z, Symbol c, const Vocabulary& vocab,
                            const RewriteOptions& opts) {
  check_input(kernel);
  if (!is_static(kernel)) throw InputError("pointwise translation expects a static kernel");
  Builder b(vocab, opts);
  std::set<std::string> cites;
  return b.pt(kernel, z, c, cites);
}

std::optional<Formula> axiom_rhs(const std::string& axiom, Player z, const Formula& body, const Vocabulary& vocab,
                                 const RewriteOptions& opts) {
  Builder b(vocab, opts);
  return rhs_for(b, axiom, z, body);
}

std::string applicable_axiom(Player z, const Formula& body) { return first_axiom(z, body); }

}  // namespace elcr
