// Presentations of operads and of algebras over them, extension of
// constants, and normal bases of presented algebras.

#ifndef KGB_OPERAD_ALGEBRA_HPP
#define KGB_OPERAD_ALGEBRA_HPP

#include <map>
#include <vector>

#include "kgb/groebner.hpp"

namespace kgb {

struct OperadPresentation {
  Field field;
  GeneratorSet gens;
  std::vector<OperadElement> relations;
};

/// Operad generators followed by the adjoined constants in one alphabet.
/// Algebra relations are arity-0 elements over that alphabet.
struct AlgebraPresentation {
  OperadPresentation operad;
  GeneratorSet gens;
  std::vector<OperadElement> relations;

  /// Throws Error on a clash between a constant and an operad generator.
  static AlgebraPresentation over(const OperadPresentation& p,
                                  const std::vector<Generator>& constants);
  std::vector<int> constant_ids() const;
};

/// P ⋉ A: the operad generators together with the constants, relations of P
/// together with those of A. Composite constant trees are rewritten by the
/// Gröbner machinery rather than by explicit relations.
OperadPresentation extension_of_constants(const AlgebraPresentation& a);

/// Completion of the extension of constants. Bounds should use the
/// potential measure so that weight is the algebra weight.
GroebnerBasis algebra_groebner(const AlgebraPresentation& a,
                               const MonomialOrder& o,
                               const BuchbergerOptions& opt);

/// Per weight 1..max_weight, arity-0 normal monomials containing a constant.
/// Throws BoundsError if the basis is not certified up to max_weight.
std::map<int, std::vector<TreeMonomial>> algebra_normal_basis(
    const GroebnerBasis& g, int max_weight);

/// Arity-0 normal monomials without constants, per weight (the part P(0)).
std::map<int, std::vector<TreeMonomial>> operad_arity_zero_basis(
    const GroebnerBasis& g, int max_weight);

}  // namespace kgb

#endif
