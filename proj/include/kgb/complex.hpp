// Weight-graded chain complexes given by exact matrices.

#ifndef KGB_COMPLEX_HPP
#define KGB_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "kgb/linalg.hpp"

namespace kgb {

/// Raised when a differential fails to square to zero.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, std::size_t weight, long degree)
      : Error(what), weight_(weight), degree_(degree) {}
  std::size_t weight() const { return weight_; }
  long degree() const { return degree_; }

 private:
  std::size_t weight_;
  long degree_;
};

/// One weight of a chain complex, concentrated in degrees 0..top.
///
/// d[i] : C_i -> C_{i-1} is stored with one row per basis vector of C_i, so
/// its shape is dims[i] x dims[i-1]. d[0] is unused.
struct ChainComplex {
  Field field;
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix> d;

  explicit ChainComplex(Field f = Field::rationals()) : field(f) {}
  ChainComplex(Field f, std::vector<std::size_t> component_dims);

  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  /// Throws DimensionError on shape mismatch.
  void set_differential(std::size_t degree, ExactMatrix m);
  /// Degree with d_{i} d_{i+1} != 0, or -1.
  long first_nonzero_square() const;
  long euler_characteristic() const;
};

class WeightedComplex {
 public:
  explicit WeightedComplex(Field f = Field::rationals()) : field_(f) {}

  Field field() const { return field_; }
  void set(std::size_t weight, ChainComplex c);
  bool has(std::size_t weight) const { return parts_.count(weight) != 0; }
  const ChainComplex& at(std::size_t weight) const;
  std::vector<std::size_t> weights() const;

 private:
  Field field_;
  std::map<std::size_t, ChainComplex> parts_;
};

/// dim H_i = dims[i] - rank d_i - rank d_{i+1}. Throws StructureError if d∘d != 0.
std::vector<std::size_t> homology_dims(const ChainComplex& c,
                                       std::size_t weight = 0);
std::vector<std::size_t> homology_dims(const WeightedComplex& c,
                                       std::size_t weight);

}  // namespace kgb

#endif
