#include "kgb/na2n.hpp"

namespace kgb {

namespace {

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

OperadElement single(Field f, const Composition& c, int extra_sign = 1) {
  return OperadElement::monomial(f, c.result, Scalar(f, static_cast<long>(c.sign * extra_sign)));
}

}  // namespace

OperadPresentation na2n_presentation(int n, Field f) {
  if (n < 3) throw Error("NA_{2,N} needs N >= 3, got " + std::to_string(n));
  OperadPresentation p;
  p.field = f;
  const int m2 = p.gens.add({"m2", 2, 0});
  const int mn = p.gens.add({"m" + std::to_string(n), n, 2 - n});
  const auto& g = p.gens;
  const auto c2 = TreeMonomial::corolla(g, m2);
  const auto cn = TreeMonomial::corolla(g, mn);

  // m2 * m2 = m2 o_1 m2 - m2 o_2 m2
  OperadElement assoc = single(f, partial_compose(g, c2, 1, c2));
  assoc -= single(f, partial_compose(g, c2, 2, c2));
  p.relations.push_back(assoc);

  // f * g = sum_i (-1)^{q(k-1) + (l-1)(i-1)} f o_i g
  OperadElement mixed(f, static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= 2; ++i)
    mixed += single(f, partial_compose(g, c2, static_cast<std::size_t>(i), cn),
                    sign_pow((2 - n) * 1 + (n - 1) * (i - 1)));
  for (int i = 1; i <= n; ++i)
    mixed += single(f, partial_compose(g, cn, static_cast<std::size_t>(i), c2),
                    sign_pow(i - 1));
  p.relations.push_back(mixed);

  for (int i = 1; i <= n; ++i)
    p.relations.push_back(single(f, partial_compose(g, cn, static_cast<std::size_t>(i), cn)));
  return p;
}

OperadElement na2n_relation_on_elements(const OperadPresentation& p, int n) {
  const auto& g = p.gens;
  const Field f = p.field;
  const int m2 = g.id("m2");
  const int mn = g.id("m" + std::to_string(n));
  const auto id = TreeMonomial::identity();
  const auto cn = TreeMonomial::corolla(g, mn);
  const auto c2 = TreeMonomial::corolla(g, m2);
  OperadElement out(f, static_cast<std::size_t>(n + 1));
  out.add(graft(g, m2, {cn, id}), Scalar::one(f));
  out.add(graft(g, m2, {id, cn}), Scalar(f, static_cast<long>(sign_pow(n - 1))));
  for (int i = 1; i <= n; ++i) {
    std::vector<TreeMonomial> args(static_cast<std::size_t>(n), id);
    args[static_cast<std::size_t>(i - 1)] = c2;
    out.add(graft(g, mn, args), Scalar(f, static_cast<long>(sign_pow(i - 1 + n))));
  }
  return out;
}

TreeMonomial mu2_power(const GeneratorSet& gens, std::size_t k) {
  const int m2 = gens.id("m2");
  TreeMonomial t = TreeMonomial::identity();
  for (std::size_t j = 0; j < k; ++j) t = graft(gens, m2, {TreeMonomial::identity(), t});
  return t;
}

OperadElement tower_relation(const OperadPresentation& p, int n, int i, int k) {
  if (i < 1 || i > n - 1 || k < 1) throw Error("tower relation index out of range");
  const auto& g = p.gens;
  const Field f = p.field;
  const auto c2 = TreeMonomial::corolla(g, g.id("m2"));
  const auto cn = TreeMonomial::corolla(g, g.id("m" + std::to_string(n)));
  const auto uk = static_cast<std::size_t>(k);

  // mN o_i (m2^{(k)} o_{k+1} mN)
  const auto inner = partial_compose(g, mu2_power(g, uk), uk + 1, cn);
  const auto lhs = partial_compose(g, cn, static_cast<std::size_t>(i), inner.result);
  // (mN o_N (m2 o_2 mN)) o_i m2^{(k-1)}
  const auto a = partial_compose(g, c2, 2, cn);
  const auto b = partial_compose(g, cn, static_cast<std::size_t>(n), a.result);
  const auto rhs = partial_compose(g, b.result, static_cast<std::size_t>(i), mu2_power(g, uk - 1));

  OperadElement r(f, arity(lhs.result));
  r.add(lhs.result, Scalar(f, static_cast<long>(inner.sign * lhs.sign)));
  r.add(rhs.result, Scalar(f, -static_cast<long>(sign_pow(n * (i - 1)) * a.sign * b.sign * rhs.sign)));
  return r;
}

std::vector<OperadElement> na2n_expected_gb(const OperadPresentation& p, int n,
                                            std::size_t max_arity) {
  std::vector<OperadElement> out = p.relations;
  for (int k = 1; static_cast<std::size_t>(2 * n + k - 1) <= max_arity; ++k)
    for (int i = 1; i <= n - 1; ++i) out.push_back(tower_relation(p, n, i, k));
  return out;
}

std::vector<std::size_t> na2n_basis_counts(int n, std::size_t max_arity) {
  // Compositions of m into N-1 positive parts: C(m-1, N-2).
  const auto compositions = [n](std::size_t m) -> std::size_t {
    const std::size_t parts = static_cast<std::size_t>(n - 1);
    if (m < parts) return 0;
    std::size_t top = m - 1, choose = parts - 1, c = 1;
    for (std::size_t j = 1; j <= choose; ++j) c = c * (top - choose + j) / j;
    return c;
  };
  // f: all basis elements; g: those whose root is not mN (id or m2(id, b)).
  std::vector<std::size_t> f(max_arity + 1, 0), g(max_arity + 1, 0);
  if (max_arity >= 1) f[1] = g[1] = 1;
  for (std::size_t a = 2; a <= max_arity; ++a) {
    g[a] = f[a - 1];
    f[a] = g[a];
    // mN(m2^{(i_1)}, ..., m2^{(i_{N-1})}, b) with b rooted outside mN; the
    // first N-1 slots take a - arity(b) inputs in total.
    for (std::size_t b = 1; b < a; ++b) f[a] += g[b] * compositions(a - b);
  }
  return {f.begin() + 1, f.end()};
}

}  // namespace kgb
