#include "kgb/operad_algebra.hpp"

namespace kgb {

AlgebraPresentation AlgebraPresentation::over(
    const OperadPresentation& p, const std::vector<Generator>& constants) {
  AlgebraPresentation a;
  a.operad = p;
  a.gens = p.gens;
  for (auto c : constants) {
    if (a.gens.find(c.name) >= 0)
      throw Error("constant '" + c.name + "' clashes with an existing generator");
    c.arity = 0;
    c.constant = true;
    a.gens.add(c);
  }
  return a;
}

std::vector<int> AlgebraPresentation::constant_ids() const {
  std::vector<int> ids;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[static_cast<int>(g)].constant) ids.push_back(static_cast<int>(g));
  return ids;
}

OperadPresentation extension_of_constants(const AlgebraPresentation& a) {
  for (std::size_t g = 0; g < a.operad.gens.size(); ++g) {
    const auto& x = a.operad.gens[static_cast<int>(g)];
    if (g >= a.gens.size() || a.gens[static_cast<int>(g)].name != x.name)
      throw Error("algebra alphabet does not extend the operad alphabet");
  }
  OperadPresentation out;
  out.field = a.operad.field;
  out.gens = a.gens;
  // Operad relations keep their ids, which are a prefix of the extension.
  out.relations = a.operad.relations;
  for (const auto& r : a.relations) {
    if (r.arity() != 0) throw ArityError("algebra relations must have arity 0");
    out.relations.push_back(r);
  }
  return out;
}

GroebnerBasis algebra_groebner(const AlgebraPresentation& a,
                               const MonomialOrder& o,
                               const BuchbergerOptions& opt) {
  const auto ext = extension_of_constants(a);
  return buchberger(ext.gens, ext.relations, o, opt);
}

namespace {

std::map<int, std::vector<TreeMonomial>> arity_zero_normal(const GroebnerBasis& g,
                                                           int max_weight,
                                                           bool with_constants) {
  const auto& gens = g.gens;
  int max_op_weight = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& x = gens[static_cast<int>(k)];
    if (x.constant) continue;
    if (x.arity < 2)
      throw Error("arity-0 enumeration needs operad generators of arity >= 2");
    max_op_weight = std::max(max_op_weight, x.weight);
  }
  if (with_constants && g.complete_up_to.max_weight &&
      (g.complete_up_to.measure != WeightMeasure::potential ||
       *g.complete_up_to.max_weight < max_weight))
    throw BoundsError("basis is certified up to " + g.complete_up_to.to_string() +
                      ", requested algebra weight " + std::to_string(max_weight));
  // A tree with c constant leaves has at most c - 1 operad vertices.
  const int label_bound = max_weight + std::max(0, max_weight - 1) * max_op_weight;
  const auto trees = normal_monomials(g, 0, label_bound);
  std::map<int, std::vector<TreeMonomial>> out;
  for (int w = 1; w <= max_weight; ++w) out[w];
  for (const auto& t : trees) {
    const int cw = constant_weight(gens, t);
    if (with_constants ? (cw < 1 || cw > max_weight) : cw != 0) continue;
    if (!with_constants && weight(gens, t) > max_weight) continue;
    out[with_constants ? cw : weight(gens, t)].push_back(t);
  }
  return out;
}

}  // namespace

std::map<int, std::vector<TreeMonomial>> algebra_normal_basis(
    const GroebnerBasis& g, int max_weight) {
  return arity_zero_normal(g, max_weight, true);
}

std::map<int, std::vector<TreeMonomial>> operad_arity_zero_basis(
    const GroebnerBasis& g, int max_weight) {
  return arity_zero_normal(g, max_weight, false);
}

}  // namespace kgb
