#include <gtest/gtest.h>

#include <random>

#include "kgb/linalg.hpp"
#include "kgb/na2n.hpp"

using namespace kgb;

namespace {

const Field Q = Field::rationals();

OperadPresentation associative() {
  OperadPresentation p;
  p.field = Q;
  p.gens.add({"m", 2, 0});
  const auto c = TreeMonomial::corolla(p.gens, 0);
  OperadElement r(Q, 3);
  r.add(partial_compose(p.gens, c, 1, c).result, Scalar::one(Q));
  r.add(partial_compose(p.gens, c, 2, c).result, Scalar(Q, -1));
  p.relations.push_back(r);
  return p;
}

std::vector<Generator> constants(const std::vector<std::string>& names, int degree = 0) {
  std::vector<Generator> out;
  for (const auto& n : names) out.push_back({n, 0, degree, 1, true});
  return out;
}

TreeMonomial leafc(const AlgebraPresentation& a, const std::string& name) {
  return TreeMonomial::corolla(a.gens, a.gens.id(name));
}

// Product of constants in a binary generator, as a left comb.
TreeMonomial word_tree(const AlgebraPresentation& a, int op, const std::string& w) {
  TreeMonomial t = leafc(a, std::string(1, w[0]));
  for (std::size_t k = 1; k < w.size(); ++k)
    t = graft(a.gens, op, {t, leafc(a, std::string(1, w[k]))});
  return t;
}

Bounds potential(int w) {
  Bounds b;
  b.max_weight = w;
  b.measure = WeightMeasure::potential;
  return b;
}

GroebnerBasis complete(const AlgebraPresentation& a, int w) {
  BuchbergerOptions opt;
  opt.bounds = potential(w);
  return reduce_gb(algebra_groebner(a, MonomialOrder(a.gens), opt));
}

std::vector<std::size_t> dims(const GroebnerBasis& g, int w) {
  std::vector<std::size_t> out;
  for (const auto& [weight, v] : algebra_normal_basis(g, w)) out.push_back(v.size());
  return out;
}

// Dimension of the weight-m component of T(letters)/(relations), with
// relations given as maps word -> coefficient, by row reduction over words.
std::size_t word_quotient_dim(std::size_t letters,
                              const std::vector<std::map<std::string, long>>& rels, int m) {
  std::vector<std::string> words{""};
  for (int k = 0; k < m; ++k) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (std::size_t l = 0; l < letters; ++l) next.push_back(w + static_cast<char>('a' + l));
    words = next;
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  EchelonBasis span(Q, words.size());
  for (const auto& r : rels) {
    const int len = static_cast<int>(r.begin()->first.size());
    if (len > m) continue;
    for (const auto& u : words)
      for (int split = 0; split + len <= m; ++split) {
        const std::string pre = u.substr(0, static_cast<std::size_t>(split));
        const std::string post = u.substr(static_cast<std::size_t>(split + len));
        if (u.substr(static_cast<std::size_t>(split), static_cast<std::size_t>(len)) !=
            r.begin()->first)
          continue;
        std::map<std::size_t, Scalar> v;
        for (const auto& [w, c] : r) v.emplace(index.at(pre + w + post), Scalar(Q, c));
        span.add(to_sparse(v));
      }
  }
  return words.size() - span.rank();
}

// Dimension of the arity-0 part of the extension of constants in constant
// weight m, modulo every relation in every context.
std::size_t tree_quotient_dim(const AlgebraPresentation& a, int m) {
  const auto ext = extension_of_constants(a);
  const MonomialOrder o(ext.gens);
  std::vector<TreeMonomial> cell;
  for (const auto& t : enumerate_tree_monomials(ext.gens, 0, 2 * m - 1, o))
    if (constant_weight(ext.gens, t) == m) cell.push_back(t);
  std::map<TreeMonomial, std::size_t> index;
  for (std::size_t i = 0; i < cell.size(); ++i) index[cell[i]] = i;
  EchelonBasis span(ext.field, cell.size());
  for (const auto& r : ext.relations) {
    const TreeMonomial t0 = r.terms().begin()->first;
    for (const auto& s : cell)
      for (const auto& e : find_divisors(ext.gens, s, t0)) {
        const auto img = substitute(ext.gens, s, e, r);
        std::map<std::size_t, Scalar> v;
        for (const auto& [mono, c] : img.terms())
          v.emplace(index.at(mono), c);
        span.add(to_sparse(v));
      }
  }
  return cell.size() - span.rank();
}

AlgebraPresentation algebra_d(int n, const std::vector<std::string>& names) {
  const auto p = na2n_presentation(n);
  auto a = AlgebraPresentation::over(p, constants(names, 1));
  for (const auto& x : names)
    for (const auto& y : names)
      a.relations.push_back(OperadElement::monomial(
          Q, graft(a.gens, 0, {leafc(a, x), leafc(a, y)}), Scalar::one(Q)));
  return a;
}

}  // namespace

TEST(Extension, GeneratorsAndRelations) {
  const auto a = algebra_d(3, {"e1", "e2"});
  const auto ext = extension_of_constants(a);
  EXPECT_EQ(ext.gens.size(), 4u);
  EXPECT_EQ(ext.relations.size(), 5u + 4u);
  EXPECT_EQ(a.constant_ids(), (std::vector<int>{2, 3}));
  EXPECT_THROW(AlgebraPresentation::over(na2n_presentation(3), constants({"m2"})), Error);
}

TEST(AlgebraD, CompletionAddsOnlyTheSecondLevelMonomials) {
  const auto a = algebra_d(3, {"e1", "e2"});
  const auto g = complete(a, 7);
  std::set<std::string> with_constants;
  for (const auto& e : g.elements)
    if (constant_weight(g.gens, e.lt) > 0) with_constants.insert(e.element.to_string(g.gens));
  std::set<std::string> expected;
  for (std::string x : {"e1", "e2"})
    for (std::string y : {"e1", "e2"}) {
      expected.insert("m2(" + x + "," + y + ")");
      expected.insert("m2(" + x + ",m2(" + y + ",_))");
    }
  EXPECT_EQ(with_constants, expected);
  // The operad part is the tower basis within the same bounds.
  const auto p = na2n_presentation(3);
  BuchbergerOptions opt;
  opt.bounds.max_arity = 7;
  const auto op = reduce_gb(buchberger(p.gens, p.relations, MonomialOrder(p.gens), opt));
  EXPECT_EQ(g.elements.size() - expected.size(), op.elements.size());
}

TEST(AlgebraD, DimensionsFollowTheTensorPattern) {
  for (auto [k, n, w] : {std::tuple{2, 3, 7}, std::tuple{3, 3, 6}, std::tuple{2, 4, 9}}) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("e" + std::to_string(i));
    const auto g = complete(algebra_d(n, names), w);
    std::vector<std::size_t> expected;
    for (int m = 1; m <= w; ++m) {
      std::size_t pw = 1;
      for (int j = 0; j < m; ++j) pw *= static_cast<std::size_t>(k);
      expected.push_back(m % n == 0 || m % n == 1 ? pw : 0);
    }
    EXPECT_EQ(dims(g, w), expected) << k << " " << n;
  }
  EXPECT_EQ(dims(complete(algebra_d(3, {"e1", "e2"}), 7), 7),
            (std::vector<std::size_t>{2, 0, 8, 16, 0, 64, 128}));
}

TEST(AlgebraD, DimensionsMatchTreeOracle) {
  const auto a = algebra_d(3, {"e1", "e2"});
  const auto g = complete(a, 6);
  const auto d = dims(g, 6);
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(d[static_cast<std::size_t>(m - 1)], tree_quotient_dim(a, m)) << m;
}

TEST(AssociativeAlgebra, SquareZeroOneGenerator) {
  auto a = AlgebraPresentation::over(associative(), constants({"x"}));
  a.relations.push_back(OperadElement::monomial(Q, word_tree(a, 0, "xx"), Scalar::one(Q)));
  const auto b = algebra_normal_basis(complete(a, 7), 7);
  EXPECT_EQ(b.at(1), std::vector<TreeMonomial>{leafc(a, "x")});
  for (int m = 2; m <= 7; ++m) EXPECT_TRUE(b.at(m).empty()) << m;
}

TEST(AssociativeAlgebra, MatchesWordOracle) {
  struct Case {
    std::vector<std::string> letters;
    std::vector<std::map<std::string, long>> rels;
  };
  const std::vector<Case> cases{
      {{"a"}, {}},
      {{"a", "b"}, {{{"aa", 1}}}},
      {{"a", "b"}, {{{"ab", 1}, {"ba", -1}}}},
      {{"a", "b"}, {{{"aba", 1}, {"bab", 2}}}},
      {{"a", "b", "c"}, {{{"ab", 1}, {"ba", 1}}, {{"cc", 1}, {"ab", -1}}}},
  };
  for (const auto& c : cases) {
    auto a = AlgebraPresentation::over(associative(), constants(c.letters));
    for (const auto& r : c.rels) {
      OperadElement e(Q, 0);
      for (const auto& [w, coef] : r) e.add(word_tree(a, 0, w), Scalar(Q, coef));
      a.relations.push_back(e);
    }
    const int w = 6;
    const auto d = dims(complete(a, w), w);
    for (int m = 1; m <= w; ++m)
      EXPECT_EQ(d[static_cast<std::size_t>(m - 1)], word_quotient_dim(c.letters.size(), c.rels, m))
          << c.letters.size() << " letters, weight " << m;
  }
}

TEST(AssociativeAlgebra, FreeOnOneConstant) {
  const auto a = AlgebraPresentation::over(associative(), constants({"x"}));
  EXPECT_EQ(dims(complete(a, 8), 8), std::vector<std::size_t>(8, 1));
}

TEST(AssociativeAlgebra, ZeroAlgebra) {
  auto a = AlgebraPresentation::over(associative(), constants({"e"}));
  a.relations.push_back(OperadElement::monomial(Q, leafc(a, "e"), Scalar::one(Q)));
  EXPECT_EQ(dims(complete(a, 6), 6), std::vector<std::size_t>(6, 0));
}

TEST(AssociativeAlgebra, StructureConstantsAreAssociative) {
  auto a = AlgebraPresentation::over(associative(), constants({"a", "b"}));
  OperadElement r(Q, 0);
  r.add(word_tree(a, 0, "ab"), Scalar::one(Q));
  r.add(word_tree(a, 0, "ba"), Scalar(Q, 2));
  r.add(word_tree(a, 0, "aa"), Scalar(Q, -1));
  a.relations.push_back(r);
  const int w = 7;
  const auto g = complete(a, w);
  const auto basis = algebra_normal_basis(g, w);
  const auto m = OperadElement::monomial(Q, TreeMonomial::corolla(g.gens, 0), Scalar::one(Q));
  const auto mult = [&](const OperadElement& x, const OperadElement& y) {
    return reduce(g, compose(g.gens, compose(g.gens, m, 1, x), 1, y));
  };
  std::mt19937_64 rng(3);
  for (int k = 0; k < 40; ++k) {
    std::vector<OperadElement> xs;
    int total = 0;
    for (int j = 0; j < 3; ++j) {
      const int wt = 1 + static_cast<int>(rng() % 2);
      total += wt;
      const auto& v = basis.at(wt);
      xs.push_back(OperadElement::monomial(Q, v[rng() % v.size()], Scalar::one(Q)));
    }
    ASSERT_LE(total, w);
    EXPECT_EQ(mult(mult(xs[0], xs[1]), xs[2]), mult(xs[0], mult(xs[1], xs[2])));
  }
}

TEST(AlgebraBasis, ArityZeroSplitsIntoOperadPartAndAlgebra) {
  const auto a = algebra_d(3, {"e1", "e2"});
  const auto g = complete(a, 6);
  const auto alg = algebra_normal_basis(g, 6);
  const auto op = operad_arity_zero_basis(g, 6);
  for (int m = 1; m <= 6; ++m) {
    // Every normal arity-0 monomial of constant weight m is in the algebra part.
    std::size_t all = 0;
    for (const auto& t : normal_monomials(g, 0, 2 * m - 1))
      all += constant_weight(g.gens, t) == m;
    EXPECT_EQ(all, alg.at(m).size() + op.at(m).size());
    EXPECT_TRUE(op.at(m).empty());
  }
}

TEST(AlgebraBasis, BoundsAreEnforced) {
  const auto a = algebra_d(3, {"e1", "e2"});
  const auto g = complete(a, 4);
  EXPECT_THROW(algebra_normal_basis(g, 5), BoundsError);
  BuchbergerOptions opt;
  opt.bounds.max_weight = 9;  // label measure does not certify algebra weight
  const auto labels = algebra_groebner(a, MonomialOrder(a.gens), opt);
  EXPECT_THROW(algebra_normal_basis(labels, 3), BoundsError);
}
