// Admissible orders on tree monomials.

#ifndef KGB_ORDERING_HPP
#define KGB_ORDERING_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kgb/tree.hpp"

namespace kgb {

/// Flat comparison key; keys compare lexicographically.
using OrderKey = std::vector<std::int32_t>;

class MonomialOrder {
 public:
  enum class Kind {
    path_lex,
    /// Word sequences compared purely lexicographically, ignoring the leaf
    /// count. Not admissible; kept to exercise the admissibility checker.
    pure_lex,
  };

  MonomialOrder() = default;
  /// `alphabet` lists generator names from greatest to smallest. Missing
  /// names follow in declaration order, operad generators before constants,
  /// and constants rank above all operad generators.
  MonomialOrder(const GeneratorSet& gens, const std::vector<std::string>& alphabet = {},
                Kind kind = Kind::path_lex);

  Kind kind() const { return kind_; }
  /// Generator names from greatest to smallest.
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  /// Larger rank = greater letter.
  int rank(int gen) const { return rank_.at(static_cast<std::size_t>(gen)); }

  OrderKey key(const GeneratorSet& gens, const TreeMonomial& t) const;
  /// -1, 0, 1
  int compare(const GeneratorSet& gens, const TreeMonomial& a,
              const TreeMonomial& b) const;
  std::string name() const;

 private:
  Kind kind_ = Kind::path_lex;
  std::vector<std::string> alphabet_;
  std::vector<int> rank_;
};

/// Root-to-leaf label words, one per leaf (slots and labelled childless
/// vertices), leftmost first. Letters are generator ids.
std::vector<std::vector<int>> leaf_word_sequence(const GeneratorSet& gens,
                                                 const TreeMonomial& t);

/// Tree monomials of the given arity and weight <= max_weight, ascending.
std::vector<TreeMonomial> enumerate_tree_monomials(const GeneratorSet& gens,
                                                   std::size_t arity,
                                                   int max_weight,
                                                   const MonomialOrder& o);

using MonomialComparator =
    std::function<int(const TreeMonomial&, const TreeMonomial&)>;

struct AdmissibilityWitness {
  TreeMonomial smaller, larger;  // smaller < larger before grafting
  TreeMonomial context;
  std::size_t slot = 0;
  bool graft_into_context = true;  // context ∘_slot x, else x ∘_slot context
};

/// For each sampled pair (a, b) of equal arity with a < b and each context,
/// checks that grafting preserves the strict inequality. Returns the first
/// violation found.
std::optional<AdmissibilityWitness> check_admissible(
    const GeneratorSet& gens, const MonomialComparator& cmp,
    const std::vector<std::pair<TreeMonomial, TreeMonomial>>& pairs,
    const std::vector<TreeMonomial>& contexts);

/// Random tree with at most `max_weight` labels.
TreeMonomial random_tree(const GeneratorSet& gens, int max_weight,
                         std::mt19937_64& rng);

}  // namespace kgb

#endif
