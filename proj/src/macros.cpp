#include "elcr/macros.hpp"

#include <algorithm>
#include <map>

#include "elcr/error.hpp"

namespace elcr {

Formula distance_formula(unsigned n, Term t1, Term t2, const Vocabulary& vocab) {
  const std::vector<Term> terms = vocab.terms();
  std::map<std::pair<unsigned, Term>, Formula> memo;
  std::function<Formula(unsigned, Term)> d = [&](unsigned m, Term target) -> Formula {
    auto key = std::make_pair(m, target);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Formula out;
    if (m == 0) {
      out = eq(t1, target);
    } else {
      std::vector<Formula> steps;
      for (const Term& t : terms) steps.push_back(conj(d(m - 1, t), disj(edge(t, target), edge(target, t))));
      out = disj(d(m - 1, target), disj_all(steps));
    }
    memo.emplace(key, out);
    return out;
  };
  return d(n, t2);
}

Formula succ_set_formula(Term u, const std::vector<Symbol>& subset, const Vocabulary& vocab) {
  std::vector<Formula> parts;
  for (Symbol c : subset) parts.push_back(edge(u, Term::constant(c)));
  for (Symbol c : vocab.constants)
    if (std::ranges::find(subset, c) == subset.end()) parts.push_back(neg(edge(u, Term::constant(c))));
  return conj_all(parts);
}

Formula know_set_formula(Player z, Player other, const std::vector<Symbol>& subset, const Vocabulary& vocab) {
  if (z == other) throw InputError("know_set_formula needs two different players");
  const Term target = Term::var(other);
  std::vector<Formula> parts;
  for (Symbol c : subset) parts.push_back(possible(z, eq(target, Term::constant(c))));
  for (Symbol c : vocab.constants)
    if (std::ranges::find(subset, c) == subset.end()) parts.push_back(know(z, neg(eq(target, Term::constant(c)))));
  return conj_all(parts);
}

std::vector<std::vector<Symbol>> constant_subsets(const Vocabulary& vocab, std::optional<std::uint64_t> max_subsets) {
  const std::size_t n = vocab.constants.size();
  if (n >= 63 || (max_subsets && (std::uint64_t{1} << n) > *max_subsets))
    throw ResourceError(std::to_string(n) + " constants give too many subsets to expand");
  std::vector<std::vector<Symbol>> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Symbol> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(vocab.constants[i]);
    out.push_back(std::move(subset));
  }
  return out;
}

}  // namespace elcr
