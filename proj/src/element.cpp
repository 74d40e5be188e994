#include "kgb/element.hpp"

namespace kgb {

OperadElement OperadElement::monomial(Field f, const TreeMonomial& t,
                                      const Scalar& c) {
  OperadElement e(f, kgb::arity(t));
  e.add(t, c);
  return e;
}

Scalar OperadElement::coefficient(const TreeMonomial& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void OperadElement::add(const TreeMonomial& t, const Scalar& c) {
  if (c.is_zero()) return;
  if (kgb::arity(t) != arity_)
    throw ArityError("term of arity " + std::to_string(kgb::arity(t)) +
                     " added to element of arity " + std::to_string(arity_));
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperadElement& OperadElement::operator+=(const OperadElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

OperadElement& OperadElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

bool OperadElement::is_homogeneous(const GeneratorSet& gens) const {
  if (terms_.empty()) return true;
  const int d = degree(gens, terms_.begin()->first);
  const int w = weight(gens, terms_.begin()->first);
  for (const auto& [t, c] : terms_)
    if (degree(gens, t) != d || weight(gens, t) != w) return false;
  return true;
}

std::string OperadElement::to_string(const GeneratorSet& gens) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms_) {
    std::string coef = c.to_string();
    const bool neg = !coef.empty() && coef[0] == '-';
    if (neg) coef.erase(0, 1);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (coef != "1") s += coef + " ";
    s += to_functional(gens, t);
  }
  return s;
}

OperadElement compose(const GeneratorSet& gens, const OperadElement& a,
                      std::size_t i, const OperadElement& b) {
  if (i < 1 || i > a.arity())
    throw ArityError("slot " + std::to_string(i) + " out of range for arity " +
                     std::to_string(a.arity()));
  OperadElement out(a.field(), a.arity() + b.arity() - 1);
  for (const auto& [s, cs] : a.terms())
    for (const auto& [t, ct] : b.terms()) {
      const auto c = partial_compose(gens, s, i, t);
      out.add(c.result, c.sign > 0 ? cs * ct : -(cs * ct));
    }
  return out;
}

OperadElement substitute(const GeneratorSet& gens, const TreeMonomial& s,
                         const Embedding& e, const OperadElement& g) {
  if (g.arity() != e.leaf_spans.size())
    throw ArityError("substitute: element arity " + std::to_string(g.arity()) +
                     " differs from divisor arity " +
                     std::to_string(e.leaf_spans.size()));
  OperadElement out(g.field(), arity(s));
  for (const auto& [t, c] : g.terms()) {
    const auto r = replace_embedded(gens, s, e, t);
    out.add(r.result, r.sign > 0 ? c : -c);
  }
  return out;
}

}  // namespace kgb
