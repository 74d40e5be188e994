// Text format for presentations.
//
//   # comment
//   [field]
//   q                      (or f2, f<p>)
//   [operad]
//   gen m2 2 0             name arity [degree [weight]]
//   rel m2.1(m2) - m2.2(m2)
//   [constants]
//   x 0                    name [degree [weight]]
//   [algebra-relations]
//   m2.2(y).1(x) - m2.2(x).1(y)
//   [order]
//   kind path-lex          (or pure-lex)
//   alphabet m2 x y        greatest first
//   [bounds]
//   max-arity 8
//   max-weight 9
//   [nhomog]
//   n 3
//   gens x y
//   rel x.x.x - 2/3 x.y.x
//
// Expressions: term := coeff? monomial, monomial := gen | monomial "." slot
// "(" monomial ")", where m2.1(m3) is the partial composite m2 ∘_1 m3.

#ifndef KGB_PRESENTATION_IO_HPP
#define KGB_PRESENTATION_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgb/nhomog.hpp"
#include "kgb/operad_algebra.hpp"
#include "kgb/ordering.hpp"

namespace kgb {

struct PresentationFile {
  Field field;
  OperadPresentation operad;
  std::vector<Generator> constants;
  std::vector<OperadElement> algebra_relations;  // over operad.gens + constants
  MonomialOrder::Kind order_kind = MonomialOrder::Kind::path_lex;
  std::vector<std::string> alphabet;
  Bounds bounds;
  std::optional<NHomogPresentation> nhomog;

  AlgebraPresentation algebra() const;
  MonomialOrder order(const GeneratorSet& gens) const;

  friend bool operator==(const PresentationFile& a, const PresentationFile& b);
};

/// `field` overrides the [field] section. Throws ParseError with the line
/// and column of the offending token.
PresentationFile parse_presentation(std::string_view text,
                                    std::optional<Field> field = std::nullopt);
std::string serialize(const PresentationFile& p);

/// One expression over `gens`; `line` is only used for error positions.
OperadElement parse_expression(const GeneratorSet& gens, Field f, std::string_view text,
                               std::size_t line = 0);
std::string format_expression(const GeneratorSet& gens, const OperadElement& e);
/// Composite form of a single tree monomial and the sign it carries, so that
/// parsing the text gives sign * t.
std::pair<std::string, int> format_monomial(const GeneratorSet& gens, const TreeMonomial& t);

/// Linear combination of words of length n in `names`, e.g. "x.y.x - 2 y.y.y".
SparseVec parse_word_combination(const std::vector<std::string>& names, int n, Field f,
                                 std::string_view text, std::size_t line = 0);
std::string format_word_combination(const std::vector<std::string>& names, int n,
                                    const SparseVec& v);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

}  // namespace kgb

#endif
