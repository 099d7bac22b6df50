#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/structure.hpp"

namespace elcr {

enum class RewriteMode { Axioms, Semantic };

const char* to_string(RewriteMode mode);

struct RewriteOptions {
  unsigned k = 1;
  RewriteMode mode = RewriteMode::Semantic;
  /// Cap on 2^|Cons| for every subset-indexed conjunction.
  std::optional<std::uint64_t> max_subsets;
  /// When set, subset conjunctions skip antecedents no vertex of this arena
  /// can satisfy.
  const Arena* prune = nullptr;
  bool record_steps = true;
};

struct RewriteStep {
  std::string axiom;                // R1..R10, or "pointwise"
  std::string position;             // child path from the root, "." separated
  std::vector<std::string> cites;   // pointwise only: axioms whose inner bodies were used
  Formula lhs;
  Formula rhs;
};

struct RewriteTrace {
  Formula input;
  Formula output;
  std::vector<RewriteStep> steps;
  RewriteMode mode = RewriteMode::Semantic;
};

/// Compiles away every Move, innermost first. Throws UnsupportedError on
/// MoveAll and InputError on formulas outside L.
RewriteTrace reduce(const Formula& f, const Vocabulary& vocab, const RewriteOptions& opts);

/// One axiom-mode step: rewrites the leftmost innermost Move by the first
/// applicable axiom among R4, R5, R6, R7, R8, R9, R10, R1, R3, R2.
/// nullopt once f is static.
std::optional<std::pair<Formula, RewriteStep>> reduce_step(const Formula& f, const Vocabulary& vocab,
                                                           const RewriteOptions& opts);

/// The static formula saying that kernel holds once z has moved onto the
/// vertex named c. kernel must be static and in L.
Formula pointwise_translate(const Formula& kernel, Player z, Symbol c, const Vocabulary& vocab,
                            const RewriteOptions& opts);

/// Right-hand side of a named axiom for the left-hand side [z] body, or
/// nullopt if the axiom's shape and side conditions do not match. R2, R3
/// and R7 yield formulas that still contain moves.
std::optional<Formula> axiom_rhs(const std::string& axiom, Player z, const Formula& body, const Vocabulary& vocab,
                                 const RewriteOptions& opts);

/// First applicable axiom for [z] body in the axiom-mode order.
std::string applicable_axiom(Player z, const Formula& body);

inline const std::vector<std::string> kRecursionAxioms = {"R1", "R2", "R3", "R4", "R5",
                                                          "R6", "R7", "R8", "R9", "R10"};

}  // namespace elcr
