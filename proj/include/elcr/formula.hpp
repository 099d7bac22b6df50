#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "elcr/term.hpp"

namespace elcr {

enum class Kind : std::uint8_t { Top, Pred, Eq, Not, And, KnowValue, Know, Move, MoveAll };

/// Least language level of a formula. IllFormed marks nested knowledge.
enum class Layer : std::uint8_t { LB, LBD, L, LPlus, IllFormed };

const char* to_string(Layer layer);

struct Node;

/// Immutable, shareable formula handle. Equality is structural.
///
/// Only the primitives are stored; disjunction, implication and the dual
/// modalities are built from them by the helper functions below.
class Formula {
 public:
  Formula() = default;

  const Node* get() const { return node_.get(); }
  const Node& operator*() const { return *node_; }
  const Node* operator->() const { return node_.get(); }
  explicit operator bool() const { return node_ != nullptr; }

  Kind kind() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend Formula make_node(Node node);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind = Kind::Top;
  Player player = Player::X;  // KnowValue, Know, Move
  Symbol pred;                // Pred
  std::vector<Term> terms;    // Pred arguments, Eq sides, KnowValue target
  Formula lhs;                // Not, Know, Move, MoveAll, And
  Formula rhs;                // And
  std::size_t hash = 0;
  std::uint32_t size = 1;     // tree size, saturating
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula top();
Formula bottom();
Formula pred(Symbol name, std::vector<Term> args);
Formula pred(std::string_view name, std::vector<Term> args);
Formula edge(Term a, Term b);
Formula eq(Term a, Term b);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula know_value(Player z, Term t);
Formula know(Player z, Formula f);
Formula move(Player z, Formula f);
Formula move_all(Formula f);

Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula possible(Player z, Formula f);      // <K{z}> f
Formula can_move(Player z, Formula f);      // <z> f
Formula can_move_all(Formula f);            // <*> f

/// Left-nested conjunction; top for an empty list.
Formula conj_all(const std::vector<Formula>& fs);
/// Left-nested disjunction; bottom for an empty list.
Formula disj_all(const std::vector<Formula>& fs);

/// Constant-folding variants: absorb top and bottom, cancel double negation.
Formula fold_neg(Formula f);
Formula fold_conj(Formula a, Formula b);
Formula fold_disj(Formula a, Formula b);
Formula fold_implies(Formula a, Formula b);
Formula fold_conj_all(const std::vector<Formula>& fs);
Formula fold_disj_all(const std::vector<Formula>& fs);

bool is_top(const Formula& f);
bool is_bottom(const Formula& f);

Layer classify(const Formula& f);
/// No Move or MoveAll anywhere.
bool is_static(const Formula& f);
/// No knowledge operator anywhere.
bool is_knowledge_free(const Formula& f);
bool mentions(const Formula& f, Player z);
/// Depth of nested Move/MoveAll operators.
unsigned dynamic_depth(const Formula& f);
std::size_t dag_size(const Formula& f);

/// Replaces variable z by t in a formula without knowledge operators.
Formula substitute(const Formula& f, Player z, Term t);

}  // namespace elcr
