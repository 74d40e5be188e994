// Operadic Gröbner bases: reduction, small common multiples, S-polynomials
// and truncated Buchberger completion.

#ifndef KGB_GROEBNER_HPP
#define KGB_GROEBNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "kgb/element.hpp"
#include "kgb/ordering.hpp"

namespace kgb {

/// Raised when a request reaches beyond the bounds a basis is certified for.
class BoundsError : public Error {
 public:
  using Error::Error;
};

enum class WeightMeasure {
  labels,     // sum of generator weights
  potential,  // arity plus the weight carried by constants
};

struct Bounds {
  std::optional<std::size_t> max_arity;
  std::optional<int> max_weight;
  WeightMeasure measure = WeightMeasure::labels;

  int measure_of(const GeneratorSet& gens, const TreeMonomial& t) const;
  bool admits(const GeneratorSet& gens, const TreeMonomial& t) const;
  std::string to_string() const;
};

struct GBElement {
  OperadElement element;  // monic
  TreeMonomial lt;
  OrderKey lt_key;
  std::string origin;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_beyond_bounds = 0;
  std::size_t reductions_to_zero = 0;
  std::size_t elements_added = 0;
  std::size_t elements_removed = 0;
};

struct GroebnerBasis {
  GeneratorSet gens;
  MonomialOrder order;
  Field field;
  std::vector<GBElement> elements;  // sorted by ascending leading monomial
  Bounds complete_up_to;
  bool reduced = false;
  GroebnerStats stats;
};

/// Leading monomial and coefficient. Throws Error on the zero element.
std::pair<TreeMonomial, Scalar> leading_term(const GeneratorSet& gens,
                                             const OperadElement& f,
                                             const MonomialOrder& o);
GBElement make_monic(const GeneratorSet& gens, const MonomialOrder& o,
                     OperadElement f, std::string origin);

/// Full reduction modulo the leading monomials of `basis`.
OperadElement reduce(const GroebnerBasis& basis, const OperadElement& f);

struct SmallCommonMultiple {
  TreeMonomial u;
  std::size_t root_s = 0;  // position of the first monomial in u
  std::size_t root_t = 0;  // position of the second monomial in u
};

/// Overlaps of S and T sharing at least one vertex. With `same` set, S and T
/// are the leading monomial of one element and the trivial self-overlap and
/// mirrored duplicates are skipped.
std::vector<SmallCommonMultiple> small_common_multiples(const GeneratorSet& gens,
                                                        const TreeMonomial& s,
                                                        const TreeMonomial& t,
                                                        bool same);

OperadElement s_polynomial(const GeneratorSet& gens, const GBElement& f,
                           const GBElement& g, const SmallCommonMultiple& scm);

struct BuchbergerOptions {
  Bounds bounds;
  unsigned threads = 1;
  bool interreduce = true;
};

GroebnerBasis buchberger(const GeneratorSet& gens,
                         const std::vector<OperadElement>& relations,
                         const MonomialOrder& o, const BuchbergerOptions& opt);

/// Inter-reduces and normalizes; drops elements with divisible leading terms.
GroebnerBasis reduce_gb(const GroebnerBasis& g);

/// Builds a basis object from elements assumed to form a Gröbner basis.
GroebnerBasis make_basis(const GeneratorSet& gens, const MonomialOrder& o,
                         Field f, const std::vector<OperadElement>& elements,
                         const Bounds& bounds);

struct GroebnerCertificate {
  bool ok = true;
  std::size_t first = 0, second = 0;  // element indices
  SmallCommonMultiple overlap;
  OperadElement remainder;
  std::size_t pairs_checked = 0;
};

/// Diamond-lemma check: every in-bounds S-polynomial reduces to zero.
GroebnerCertificate is_groebner(const GroebnerBasis& g);

/// Monomials of the given arity with weight <= max_weight not divisible by
/// any leading monomial, ascending.
std::vector<TreeMonomial> normal_monomials(const GroebnerBasis& g,
                                           std::size_t arity, int max_weight);

}  // namespace kgb

#endif
