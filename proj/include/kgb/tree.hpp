// Generators, planar tree monomials and their combinatorics.
//
// A tree monomial is stored as its preorder code: one token per vertex, the
// generator id for a labelled vertex and kLeaf for an input slot. A labelled
// vertex is followed by the codes of its children, left to right.

#ifndef KGB_TREE_HPP
#define KGB_TREE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kgb/scalar.hpp"

namespace kgb {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t col = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ")"
                   : what),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

/// Raised for slot indices or arities that do not fit.
class ArityError : public Error {
 public:
  using Error::Error;
};

struct Generator {
  std::string name;
  int arity = 2;
  int degree = 0;
  int weight = 1;
  bool constant = false;  // adjoined 0-ary algebra generator
};

/// Ordered alphabet; ids are declaration indices.
class GeneratorSet {
 public:
  /// Throws Error on a duplicate name or invalid arity/weight.
  int add(Generator g);
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](int id) const { return gens_.at(static_cast<std::size_t>(id)); }
  int arity(int id) const { return arity_[static_cast<std::size_t>(id)]; }
  int degree(int id) const { return gens_[static_cast<std::size_t>(id)].degree; }
  int weight(int id) const { return gens_[static_cast<std::size_t>(id)].weight; }
  /// -1 if absent.
  int find(const std::string& name) const;
  int id(const std::string& name) const;
  const std::vector<Generator>& all() const { return gens_; }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b);

 private:
  std::vector<Generator> gens_;
  std::vector<int> arity_;
  std::map<std::string, int> by_name_;
};

struct TreeMonomial {
  static constexpr std::int32_t kLeaf = -1;
  std::vector<std::int32_t> code{kLeaf};

  static TreeMonomial identity() { return {}; }
  /// A single vertex labelled `gen` with all children leaves.
  static TreeMonomial corolla(const GeneratorSet& gens, int gen);

  bool is_identity() const { return code.size() == 1 && code[0] == kLeaf; }
  friend auto operator<=>(const TreeMonomial&, const TreeMonomial&) = default;
  friend bool operator==(const TreeMonomial&, const TreeMonomial&) = default;
};

struct TreeMonomialHash {
  std::size_t operator()(const TreeMonomial& t) const;
};

/// Position one past the subtree starting at `pos`.
std::size_t subtree_end(const GeneratorSet& gens, const TreeMonomial& t,
                        std::size_t pos);
/// Throws ArityError unless the code describes exactly one tree.
void validate(const GeneratorSet& gens, const TreeMonomial& t);

std::size_t arity(const TreeMonomial& t);
int weight(const GeneratorSet& gens, const TreeMonomial& t);
int degree(const GeneratorSet& gens, const TreeMonomial& t);
std::size_t vertex_count(const TreeMonomial& t);
/// Input slots plus labelled childless vertices.
std::size_t leaf_count(const GeneratorSet& gens, const TreeMonomial& t);
/// Sum of the weights of labelled vertices carrying an adjoined constant.
int constant_weight(const GeneratorSet& gens, const TreeMonomial& t);
/// Code position of input slot i (1-based).
std::size_t slot_position(const TreeMonomial& t, std::size_t i);

/// "m2 m2 _ _ _"
std::string encode(const GeneratorSet& gens, const TreeMonomial& t);
TreeMonomial decode(const GeneratorSet& gens, const std::string& text);
/// "m2(m2(_,_),_)"
std::string to_functional(const GeneratorSet& gens, const TreeMonomial& t);

struct Composition {
  int sign = 1;
  TreeMonomial result;
};

/// S ∘_i T with the Koszul sign of moving T's labels past those of S that
/// follow slot i in preorder.
Composition partial_compose(const GeneratorSet& gens, const TreeMonomial& s,
                            std::size_t i, const TreeMonomial& t);
/// Grafts children into every slot of `gen`: gen(t_1, ..., t_k), sign +1.
TreeMonomial graft(const GeneratorSet& gens, int gen,
                   const std::vector<TreeMonomial>& children);

/// An occurrence of a divisor T inside a host S.
struct Embedding {
  std::size_t root = 0;                 // code position in S of T's root
  std::vector<std::size_t> vertex_map;  // S positions of T's labelled vertices
  std::vector<std::pair<std::size_t, std::size_t>> leaf_spans;  // per T slot
  std::size_t end = 0;                  // one past the covered region
};

/// Embedding of T rooted at code position `pos` of S, if any.
bool embed_at(const GeneratorSet& gens, const TreeMonomial& s,
              const TreeMonomial& t, std::size_t pos, Embedding* out);
/// All embeddings, ordered by root position.
std::vector<Embedding> find_divisors(const GeneratorSet& gens,
                                     const TreeMonomial& s,
                                     const TreeMonomial& t);
bool divides(const GeneratorSet& gens, const TreeMonomial& t,
             const TreeMonomial& s);

/// Replaces the embedded copy of T by T'; returns the sign relating the
/// canonical orders of S and the result.
Composition replace_embedded(const GeneratorSet& gens, const TreeMonomial& s,
                             const Embedding& e, const TreeMonomial& t_new);

/// Case-wise check of graded associativity for alpha ∘_i beta then ∘_j gamma.
/// Throws ArityError if (i, j) is invalid.
bool check_graded_associativity(const GeneratorSet& gens,
                                const TreeMonomial& alpha,
                                const TreeMonomial& beta,
                                const TreeMonomial& gamma, std::size_t i,
                                std::size_t j);

/// All monomials of the given arity and weight <= max_weight. When
/// `root_ok` is given, only trees all of whose subtrees pass it are built.
/// Output order is unspecified; callers sort by their order.
std::vector<TreeMonomial> enumerate_trees(
    const GeneratorSet& gens, std::size_t arity, int max_weight,
    const std::function<bool(const TreeMonomial&)>& root_ok = {});

}  // namespace kgb

#endif
