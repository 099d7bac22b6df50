#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "elcr/formula.hpp"
#include "elcr/structure.hpp"

namespace elcr {

/// D^n t1 t2: t2 lies within n steps of t1 along edges in either direction.
/// Shares subformulas, so the result is a small DAG even for large n.
Formula distance_formula(unsigned n, Term t1, Term t2, const Vocabulary& vocab);

/// Ru=T: the R-successors of u are named exactly by T.
Formula succ_set_formula(Term u, const std::vector<Symbol>& subset, const Vocabulary& vocab);

/// K_z z'=T: T is exactly the set of names z considers possible for z'.
Formula know_set_formula(Player z, Player other, const std::vector<Symbol>& subset, const Vocabulary& vocab);

/// Subsets of the sorted constants in binary-counting order: bit i of the
/// counter selects constants[i]. Throws ResourceError when there are more
/// than max_subsets of them.
std::vector<std::vector<Symbol>> constant_subsets(const Vocabulary& vocab,
                                                  std::optional<std::uint64_t> max_subsets = std::nullopt);

}  // namespace elcr
