// Linear combinations of tree monomials of a single arity.

#ifndef KGB_ELEMENT_HPP
#define KGB_ELEMENT_HPP

#include <map>
#include <string>

#include "kgb/linalg.hpp"
#include "kgb/tree.hpp"

namespace kgb {

class OperadElement {
 public:
  OperadElement() = default;
  OperadElement(Field f, std::size_t arity) : field_(f), arity_(arity) {}
  static OperadElement monomial(Field f, const TreeMonomial& t,
                                const Scalar& c);

  Field field() const { return field_; }
  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<TreeMonomial, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const TreeMonomial& t) const;

  /// Adds c * t. Throws ArityError if t has the wrong arity.
  void add(const TreeMonomial& t, const Scalar& c);
  OperadElement& operator+=(const OperadElement& o);
  OperadElement& operator-=(const OperadElement& o);
  OperadElement& operator*=(const Scalar& c);
  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend OperadElement operator*(OperadElement a, const Scalar& c) { return a *= c; }
  friend bool operator==(const OperadElement&, const OperadElement&) = default;

  /// True if every monomial has the same degree and the same weight.
  bool is_homogeneous(const GeneratorSet& gens) const;

  std::string to_string(const GeneratorSet& gens) const;

 private:
  Field field_;
  std::size_t arity_ = 1;
  std::map<TreeMonomial, Scalar> terms_;
};

/// Bilinear extension of partial_compose.
OperadElement compose(const GeneratorSet& gens, const OperadElement& a,
                      std::size_t i, const OperadElement& b);
/// Linear extension of replace_embedded: m_{S,T}(g). Requires arity(g) = arity(T).
OperadElement substitute(const GeneratorSet& gens, const TreeMonomial& s,
                         const Embedding& e, const OperadElement& g);

}  // namespace kgb

#endif
