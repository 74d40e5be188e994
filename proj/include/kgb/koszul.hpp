// Convolution operations, twisting morphisms, twisted tensor products, the
// Koszul complex, bar and cobar constructions.

#ifndef KGB_KOSZUL_HPP
#define KGB_KOSZUL_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "kgb/complex.hpp"
#include "kgb/nhomog.hpp"

namespace kgb {

/// A weight-preserving linear map C -> A: images[c] is a vector of A_{w(c)}.
struct TwistingMorphism {
  int degree = -1;
  std::vector<SparseVec> images;

  static TwistingMorphism zero(const A2NCoalgebra& c, int degree = -1);
  /// The block C_w -> A_w of the component `comp` of C, one row per element.
  ExactMatrix component(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                        std::size_t comp) const;
};

/// μ ∘ (f ⊗ g) ∘ δ2. Throws BoundsError if C reaches past the table of A.
TwistingMorphism convolution_star2(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                   const TwistingMorphism& f, const TwistingMorphism& g);
/// μ^{(N-1)} ∘ (f_1 ⊗ ... ⊗ f_N) ∘ δN.
TwistingMorphism convolution_starN(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                   const std::vector<TwistingMorphism>& fs);

struct MaurerCartanResult {
  bool ok = true;
  int weight = -1;  // smallest weight with a nonzero residual
  std::size_t element = 0;
};

/// ∂α + ⋆2(α, α) + ⋆N(α, ..., α) = 0 on every stored weight, where
/// ∂α = -(-1)^{|α|} α ∘ d_C vanishes unless C has an internal differential.
MaurerCartanResult maurer_cartan_check(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                       const TwistingMorphism& alpha);

/// A^¡ -> A^¡_1 ≅ V -> A.
TwistingMorphism kappa(const A2NCoalgebra& c, const GradedAlgebraTable& a);

/// One block C_comp ⊗ A_q of a tensor complex in a fixed weight.
struct TensorBlock {
  std::size_t component = 0;  // component of C
  int a_weight = 0;
  std::size_t offset = 0;     // within its homological degree
  std::size_t c_dim = 0, a_dim = 0;
};

struct TwistedComplex {
  WeightedComplex complex;
  /// weight -> degree -> blocks in basis order.
  std::map<int, std::vector<std::vector<TensorBlock>>> layout;
};

/// C ⊗ A with d = d_C ⊗ 1 + d2 + dN. Throws StructureError if d² != 0.
TwistedComplex twisted_tensor_product(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                      const TwistingMorphism& alpha, int max_weight);

/// A^¡ ⊗ A built from the coproduct of A^¡ ⊂ T^c(V) on normal words: the
/// component A^¡_{kN} ⊗ A sits in degree 2k, A^¡_{kN+1} ⊗ A in degree 2k+1.
TwistedComplex koszul_complex(const NHomogPresentation& a, int max_weight);

struct KoszulVerdict {
  bool koszul = true;  // up to the bound
  int weight = -1;     // witness of nonzero positive-degree homology
  int degree = -1;
  std::map<int, std::vector<std::size_t>> homology;
};

KoszulVerdict is_n_koszul(const NHomogPresentation& a, int max_weight);

struct BarConstruction {
  std::shared_ptr<const GradedAlgebraTable> algebra;
  /// BA as a coalgebra: components (weight m, bar degree s), deconcatenation
  /// as δ2 (only when requested) and the bar differential as d.
  A2NCoalgebra coalgebra;
  WeightedComplex complex;
  /// weight -> dim Ext^s for s = 0..weight.
  std::map<int, std::vector<std::size_t>> ext_dims;
};

/// Bar complex with d[a_1|...|a_s] = Σ_i (-1)^{i-1} [... | a_i a_{i+1} | ...].
BarConstruction bar_construction(const NHomogPresentation& a, int max_weight,
                                 bool with_coproduct = false);

/// π: BA -> A, projection on the length-one tensors.
TwistingMorphism bar_projection(const BarConstruction& b);

struct YonedaReport {
  bool match = true;
  int first_mismatch = -1;  // weight
  std::map<int, std::vector<std::size_t>> ext;       // from the bar complex
  std::map<int, std::vector<std::size_t>> expected;  // dim A^!_m in degree 2k / 2k+1
};

/// Ext dims from the bar construction against the A^! pattern.
YonedaReport check_yoneda_dims(const NHomogPresentation& a, int max_weight);

/// T(s^{-1} C̄) with the derivation induced by δ2 and δN. Throws
/// StructureError if d² != 0.
WeightedComplex cobar_complex(const A2NCoalgebra& c, int max_weight);

struct F2Search {
  std::optional<NHomogPresentation> witness;
  KoszulVerdict verdict;
  std::size_t examined = 0;
};

/// Relation subspaces of V^⊗N over F_2, by dimension, pivot set and free
/// entries; stops at the first presentation that is not N-Koszul up to the
/// bound.
F2Search f2_koszul_search(std::size_t v_dim, int n, std::size_t max_dim_r, int max_weight);

}  // namespace kgb

#endif
