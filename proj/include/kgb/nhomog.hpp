// N-homogeneous algebras T(V)/(R), their duals A^∨, A^! and A^¡, star
// products of multilinear maps and the A_{2,N} relation checker.
//
// Words in V^⊗m are indexed with the first letter most significant.

#ifndef KGB_NHOMOG_HPP
#define KGB_NHOMOG_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kgb/na2n.hpp"

namespace kgb {

struct NHomogPresentation {
  Field field;
  int n = 3;
  std::vector<std::string> names;  // basis of V in declaration order
  ExactMatrix relations;           // rows span R inside V^⊗n, in RREF

  std::size_t v_dim() const { return names.size(); }
  std::size_t relation_dim() const { return relations.rows(); }

  /// Reduces the rows and checks the invariants. Throws Error for n < 2,
  /// an empty V, or rows of the wrong length.
  static NHomogPresentation make(Field f, int n, std::vector<std::string> names,
                                 const ExactMatrix& rows);
};

std::size_t ipow(std::size_t base, int exp);
/// Letters of word index `w` of length m over d letters.
std::vector<int> word_letters(std::size_t w, std::size_t d, int m);
std::size_t word_index(const std::vector<int>& letters, std::size_t d);

/// T(V*)/(R^⊥) with starred names.
NHomogPresentation dual_presentation(const NHomogPresentation& a);

/// Uniform random relation space of dimension `dim_r` (over the rows drawn).
NHomogPresentation random_presentation(Field f, int n, std::size_t v_dim,
                                       std::size_t dim_r, std::mt19937_64& rng);

/// Weight-graded table of T(V)/(R) for weights 0..max_weight.
///
/// A_m is realized as (A_{m-1} ⊗ V) / J_m, J_m spanned by the images of
/// u ⊗ r for u in the basis of A_{m-N} and r in R. The basis of A_m consists
/// of normal words: the non-pivot columns of J_m.
class GradedAlgebraTable {
 public:
  GradedAlgebraTable(const NHomogPresentation& p, int max_weight);

  Field field() const { return field_; }
  int n() const { return n_; }
  int max_weight() const { return max_weight_; }
  std::size_t generators() const { return d_; }
  std::size_t dim(int m) const;
  std::vector<std::size_t> dims() const;
  /// Letters of the i-th basis word of weight m.
  const std::vector<int>& word(int m, std::size_t i) const;

  /// x · v for x in A_m.
  SparseVec append_letter(int m, const SparseVec& x, int letter) const;
  /// Class of a word in A_{|w|}.
  SparseVec word_class(const std::vector<int>& w) const;
  /// x · y for x in A_p, y in A_q. Throws BoundsError past max_weight.
  SparseVec multiply(int p, const SparseVec& x, int q, const SparseVec& y) const;
  SparseVec multiply_basis(int p, std::size_t i, int q, std::size_t j) const;

 private:
  struct Level {
    std::size_t dim = 0;
    std::vector<std::vector<int>> words;
    // Column (i, v) = i * d + v of A_{m-1} ⊗ V maps to a basis index or -1.
    std::vector<long> coord_of_col;
    std::unique_ptr<EchelonBasis> ideal;
  };

  void build_level(int m, const ExactMatrix& rel);

  Field field_;
  int n_;
  int max_weight_;
  std::size_t d_;
  std::vector<Level> levels_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::array<std::size_t, 4>, SparseVec> product_cache_;
};

/// Normal words of A_m.
std::vector<std::vector<int>> weight_basis(const NHomogPresentation& a, int m);

// Graded spaces and multilinear maps ------------------------------------

struct GradedComponent {
  int weight = 0;
  int degree = 0;
  std::size_t dim = 0;
  std::size_t offset = 0;
};

/// Finite direct sum of (weight, degree) components with a global basis.
class GradedSpace {
 public:
  void add(int weight, int degree, std::size_t dim);
  std::size_t dim() const { return total_; }
  const std::vector<GradedComponent>& components() const { return parts_; }
  /// Index of the first component of this weight, or -1.
  long find(int weight) const;
  const GradedComponent& component_of(std::size_t index) const;
  int degree_of(std::size_t index) const { return component_of(index).degree; }
  int weight_of(std::size_t index) const { return component_of(index).weight; }
  int max_weight() const;
  friend bool operator==(const GradedSpace& a, const GradedSpace& b);

 private:
  std::vector<GradedComponent> parts_;
  std::size_t total_ = 0;
};

/// A multilinear map on a graded space, given on basis tuples.
struct MultilinearMap {
  std::string name;
  Field field;
  std::shared_ptr<const GradedSpace> space;
  std::size_t arity = 1;
  int degree = 0;
  std::function<SparseVec(const std::vector<std::size_t>&)> on_basis;

  SparseVec operator()(const std::vector<std::size_t>& args) const { return on_basis(args); }
};

/// Multilinear extension to arbitrary vectors.
SparseVec evaluate(const MultilinearMap& f, const std::vector<SparseVec>& args);
/// Identity map of arity 1 and degree 0.
MultilinearMap identity_map(Field f, std::shared_ptr<const GradedSpace> space);
/// f ∘_i g with the Koszul sign (-1)^{|g| (|x_1| + ... + |x_{i-1}|)}.
MultilinearMap compose_at(const MultilinearMap& f, std::size_t i, const MultilinearMap& g);
/// f ⋆ g = Σ_i (-1)^{q(k-1)+(l-1)(i-1)} f ∘_i g. Throws DimensionError if the
/// maps live on different spaces.
MultilinearMap star_product(const MultilinearMap& f, const MultilinearMap& g);
MultilinearMap sum(const MultilinearMap& f, const MultilinearMap& g);

struct RelationCheck {
  bool ok = true;
  std::string relation;
  std::vector<std::size_t> witness;  // basis tuple
  SparseVec value;
};

/// Evaluates f on every basis tuple whose total weight is at most the top
/// weight of the space; reports the first nonzero value.
RelationCheck vanishes(const MultilinearMap& f, const std::string& label);

/// μ2⋆μ2, μ2⋆μN + μN⋆μ2 and μN⋆μN. Throws Error on wrong degrees.
RelationCheck check_a2n_relations(const MultilinearMap& mu2, const MultilinearMap& muN);
/// μN ∘_i μN for every i.
RelationCheck check_mun_mun_zero(const MultilinearMap& muN);

// Koszul dual algebra and coalgebra -----------------------------------------

/// Homological degree of the weight-m component of A^!, or nullopt if
/// m is not 0 or 1 mod N.
std::optional<int> koszul_degree(int n, int m);

/// A^! on the weights 0..bound that are 0 or 1 mod N, with μ2 and μN built
/// from the product of A^∨.
class KoszulDualAlgebra {
 public:
  KoszulDualAlgebra(const NHomogPresentation& a, int bound);

  int n() const { return n_; }
  Field field() const { return field_; }
  int bound() const { return bound_; }
  const NHomogPresentation& dual() const { return dual_; }
  const GradedAlgebraTable& dual_algebra() const { return *table_; }
  std::shared_ptr<const GradedSpace> space() const { return space_; }
  std::size_t dim(int m) const;
  /// Global basis index of the i-th basis element of weight m.
  std::size_t index(int m, std::size_t i) const;

  const MultilinearMap& mu2() const { return mu2_; }
  const MultilinearMap& muN() const { return muN_; }

 private:
  Field field_;
  int n_;
  int bound_;
  NHomogPresentation dual_;
  std::shared_ptr<const GradedAlgebraTable> table_;
  std::shared_ptr<GradedSpace> space_;
  MultilinearMap mu2_, muN_;
};

KoszulDualAlgebra koszul_dual_algebra(const NHomogPresentation& a, int bound);

/// One term c ⊗ c' ⊗ ... of a cooperation, as global basis indices.
struct CoTerm {
  std::vector<std::size_t> parts;
  Scalar coef;
};

/// A weight-graded A_{2,N}-coalgebra with an optional internal differential
/// of degree -1.
struct A2NCoalgebra {
  Field field;
  int n = 3;
  int bound = 0;  // every weight up to here is stored
  std::shared_ptr<const GradedSpace> space;
  std::vector<std::vector<CoTerm>> delta2;
  std::vector<std::vector<CoTerm>> deltaN;
  std::vector<SparseVec> d;  // empty when there is no internal differential

  int degree_of(std::size_t i) const { return space->degree_of(i); }
  int weight_of(std::size_t i) const { return space->weight_of(i); }
};

/// A^¡ = (A^!)^* with the dual basis. Cooperations are transposes of μ2 and
/// μN with the Koszul sign (-1)^{Σ_{i<j} |x_i||x_j|} of the dual pairing.
A2NCoalgebra koszul_dual_coalgebra(const KoszulDualAlgebra& e);
A2NCoalgebra koszul_dual_coalgebra(const NHomogPresentation& a, int bound);

/// δ2⋆δ2, δ2⋆δN + δN⋆δ2 and δN⋆δN evaluated on every basis element.
RelationCheck check_coalgebra_relations(const A2NCoalgebra& c);

// Comparison with the presentation over NA_{2,N} -------------------------

struct PresentationCompareRow {
  int weight = 0;
  std::size_t dual_dim = 0;     // dim A^!_m
  std::size_t presented = 0;    // normal basis of the presented algebra
  bool dims_equal = false;
  bool isomorphic = false;      // evaluation is bijective on this weight
  bool products_equal = false;  // μ2, μN structure constants agree
};

struct PresentationCompare {
  std::vector<PresentationCompareRow> rows;
  std::size_t gb_size = 0;
  bool all_equal() const;
};

/// The algebra over NA_{2,N} generated by V* in degree 1 with relations
/// μ2(e_i, e_j) and μN(R^⊥), compared weight by weight with A^!.
AlgebraPresentation presentation_over_na2n(const NHomogPresentation& a);
PresentationCompare presentation_compare(const NHomogPresentation& a, int bound,
                                         unsigned threads = 1);

}  // namespace kgb

#endif
