// The operad NA_{2,N}: presentation, its expected Gröbner basis, and the
// combinatorial count of its normal monomials.

#ifndef KGB_NA2N_HPP
#define KGB_NA2N_HPP

#include "kgb/operad_algebra.hpp"

namespace kgb {

/// Generators m2 (arity 2, degree 0) and m<N> (arity N, degree 2-N), with
/// m2 declared first. Relations, in order: m2*m2, m2*mN + mN*m2, and the N
/// monomials mN o_i mN. Throws Error for N < 3.
OperadPresentation na2n_presentation(int n, Field f = Field::rationals());

/// The N+2 term relation written on elements, in functional form.
OperadElement na2n_relation_on_elements(const OperadPresentation& p, int n);

/// m2^{(k)}: m2^{(0)} = id, m2^{(k+1)} = m2(id, m2^{(k)}).
TreeMonomial mu2_power(const GeneratorSet& gens, std::size_t k);

/// R_{i,k}, arity 2N + k - 1.
OperadElement tower_relation(const OperadPresentation& p, int n, int i, int k);

/// Defining relations plus every R_{i,k} with arity <= max_arity.
std::vector<OperadElement> na2n_expected_gb(const OperadPresentation& p, int n,
                                            std::size_t max_arity);

/// Size of the normal basis in each arity 1..max_arity for N = n, from the
/// inductive description of the basis.
std::vector<std::size_t> na2n_basis_counts(int n, std::size_t max_arity);

}  // namespace kgb

#endif
