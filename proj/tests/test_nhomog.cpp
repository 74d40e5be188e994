#include <gtest/gtest.h>

#include <random>

#include "kgb/nhomog.hpp"

using namespace kgb;

namespace {

const Field Q = Field::rationals();

NHomogPresentation presentation(Field f, int n, std::vector<std::string> names,
                                const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = ipow(names.size(), n);
  std::vector<SparseVec> sparse;
  for (const auto& r : rows) {
    SparseVec v;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) v.push_back({j, Scalar(f, r[j])});
    sparse.push_back(v);
  }
  return NHomogPresentation::make(f, n, std::move(names), ExactMatrix::from_rows(f, cols, sparse));
}

NHomogPresentation truncated_polynomial(int n) {
  return presentation(Q, n, {"x"}, {{1}});
}

NHomogPresentation full_relations(std::size_t d, int n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(std::string(1, static_cast<char>('x' + i)));
  const std::size_t cols = ipow(d, n);
  return NHomogPresentation::make(Q, n, names, ExactMatrix::identity(Q, cols));
}

NHomogPresentation no_relations(std::size_t d, int n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(std::string(1, static_cast<char>('x' + i)));
  return NHomogPresentation::make(Q, n, names, ExactMatrix(Q, 0, ipow(d, n)));
}

// dim V^⊗m / Σ V^⊗i ⊗ R ⊗ V^⊗j, reducing every spanning tensor at once.
std::size_t quotient_dim_oracle(const NHomogPresentation& p, int m) {
  const std::size_t d = p.v_dim();
  const std::size_t total = ipow(d, m);
  if (m < p.n) return total;
  EchelonBasis ideal(p.field, total);
  for (int i = 0; i + p.n <= m; ++i) {
    const std::size_t right = ipow(d, m - p.n - i);
    for (std::size_t l = 0; l < ipow(d, i); ++l)
      for (std::size_t r = 0; r < right; ++r)
        for (std::size_t k = 0; k < p.relations.rows(); ++k) {
          SparseVec v;
          for (const auto& e : p.relations.row(k))
            v.push_back({(l * ipow(d, p.n) + e.index) * right + r, e.value});
          std::sort(v.begin(), v.end(),
                    [](const Entry& a, const Entry& b) { return a.index < b.index; });
          ideal.add(v);
        }
  }
  return total - ideal.rank();
}

bool equal_row_spaces(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols()) return false;
  EchelonBasis x(a.field(), a.cols()), y(b.field(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) x.add(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) y.add(b.row(i));
  return x.rref() == y.rref();
}

std::vector<NHomogPresentation> random_family(std::uint64_t seed, Field f = Q) {
  std::mt19937_64 rng(seed);
  std::vector<NHomogPresentation> out;
  for (std::size_t r = 1; r <= 7; ++r) out.push_back(random_presentation(f, 3, 2, r, rng));
  out.push_back(random_presentation(f, 3, 1, 1, rng));
  out.push_back(random_presentation(f, 4, 2, 9, rng));
  out.push_back(random_presentation(f, 2, 2, 2, rng));
  return out;
}

}  // namespace

TEST(DualPresentation, OneLetterHasNoDualRelations) {
  const auto d = dual_presentation(truncated_polynomial(3));
  EXPECT_EQ(d.relation_dim(), 0u);
  EXPECT_EQ(d.names, std::vector<std::string>{"x*"});
}

TEST(DualPresentation, ZeroRelationsGiveEverything) {
  EXPECT_EQ(dual_presentation(no_relations(2, 3)).relation_dim(), 8u);
}

TEST(DualPresentation, RankNullity) {
  const auto a = presentation(Q, 3, {"x", "y"}, {{1, 0, 0, 0, 0, 0, 0, 0}});
  EXPECT_EQ(dual_presentation(a).relation_dim(), 7u);
}

TEST(DualPresentation, IsAnInvolution) {
  for (Field f : {Q, Field::prime(5)})
    for (const auto& a : random_family(3, f)) {
      const auto dd = dual_presentation(dual_presentation(a));
      EXPECT_TRUE(equal_row_spaces(dd.relations, a.relations));
      EXPECT_EQ(dd.relation_dim() + dual_presentation(a).relation_dim(), ipow(a.v_dim(), a.n));
    }
}

TEST(NHomogPresentation, RejectsBadInput) {
  EXPECT_THROW(presentation(Q, 1, {"x"}, {{1}}), Error);
  EXPECT_THROW(NHomogPresentation::make(Q, 3, {}, ExactMatrix(Q, 0, 1)), Error);
  EXPECT_THROW(NHomogPresentation::make(Q, 3, {"x", "y"}, ExactMatrix(Q, 0, 4)), Error);
}

TEST(WeightBasis, BelowNAllWordsSurvive) {
  for (const auto& a : random_family(4))
    for (int m = 0; m < a.n; ++m) EXPECT_EQ(weight_basis(a, m).size(), ipow(a.v_dim(), m));
}

TEST(WeightBasis, TruncatedPolynomial) {
  GradedAlgebraTable t(truncated_polynomial(3), 4);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{1, 1, 1, 0, 0}));
  EXPECT_EQ(weight_basis(truncated_polynomial(3), 2), (std::vector<std::vector<int>>{{0, 0}}));
}

TEST(WeightBasis, FullRelations) {
  GradedAlgebraTable t(full_relations(2, 3), 6);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{1, 2, 4, 0, 0, 0, 0}));
}

TEST(WeightBasis, MatchesSpanningSetOracle) {
  for (Field f : {Q, Field::prime(3)})
    for (const auto& a : random_family(5, f)) {
      const GradedAlgebraTable t(a, 6), u(dual_presentation(a), 6);
      for (int m = 0; m <= 6; ++m) {
        EXPECT_EQ(t.dim(m), quotient_dim_oracle(a, m)) << "weight " << m;
        EXPECT_EQ(u.dim(m), quotient_dim_oracle(dual_presentation(a), m)) << "dual weight " << m;
      }
    }
}

TEST(GradedAlgebraTable, ProductIsAssociative) {
  std::mt19937_64 rng(6);
  for (const auto& a : random_family(7)) {
    const GradedAlgebraTable t(a, 7);
    for (int trial = 0; trial < 60; ++trial) {
      const int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 3),
                r = static_cast<int>(rng() % 2);
      if (!t.dim(p) || !t.dim(q) || !t.dim(r)) continue;
      const SparseVec x = {{rng() % t.dim(p), Scalar::one(Q)}};
      const SparseVec y = {{rng() % t.dim(q), Scalar(Q, 2L)}};
      const SparseVec z = {{rng() % t.dim(r), Scalar(Q, -3L)}};
      EXPECT_EQ(t.multiply(p + q, t.multiply(p, x, q, y), r, z),
                t.multiply(p, x, q + r, t.multiply(q, y, r, z)));
    }
  }
}

TEST(GradedAlgebraTable, ThrowsPastTheBound) {
  const GradedAlgebraTable t(no_relations(2, 3), 3);
  EXPECT_THROW(t.multiply_basis(2, 0, 2, 0), BoundsError);
}

TEST(KoszulDualAlgebra, TruncatedPolynomialIsOneDimensional) {
  for (int n : {3, 4}) {
    const KoszulDualAlgebra e(truncated_polynomial(n), 9);
    for (int m = 0; m <= 9; ++m)
      EXPECT_EQ(e.dim(m), (m % n == 0 || m % n == 1) ? 1u : 0u) << "N=" << n << " m=" << m;
  }
}

TEST(KoszulDualAlgebra, DegreesFollowWeights) {
  EXPECT_EQ(koszul_degree(3, 0), 0);
  EXPECT_EQ(koszul_degree(3, 1), 1);
  EXPECT_FALSE(koszul_degree(3, 2).has_value());
  EXPECT_EQ(koszul_degree(3, 6), 4);
  EXPECT_EQ(koszul_degree(3, 7), 5);
  EXPECT_EQ(koszul_degree(4, 9), 5);
  const KoszulDualAlgebra e(no_relations(2, 3), 7);
  for (const auto& c : e.space()->components())
    EXPECT_EQ(c.degree, *koszul_degree(3, c.weight));
}

TEST(KoszulDualAlgebra, MuNOnGeneratorsSpansWeightN) {
  for (const auto& a : random_family(8)) {
    if (a.n < 3) continue;
    const KoszulDualAlgebra e(a, a.n);
    const std::size_t d = a.v_dim();
    EchelonBasis span(Q, e.space()->dim());
    for (std::size_t w = 0; w < ipow(d, a.n); ++w) {
      std::vector<std::size_t> args;
      for (int l : word_letters(w, d, a.n)) args.push_back(e.index(1, static_cast<std::size_t>(l)));
      const SparseVec y = e.muN()(args);
      for (const auto& t : y) EXPECT_EQ(e.space()->weight_of(t.index), a.n);
      span.add(y);
    }
    EXPECT_EQ(span.rank(), ipow(d, a.n) - dual_presentation(a).relation_dim());
    EXPECT_EQ(span.rank(), e.dim(a.n));
    EXPECT_EQ(e.dim(a.n), a.relation_dim());
  }
}

TEST(KoszulDualAlgebra, Mu2VanishesOnWeightOne) {
  const KoszulDualAlgebra e(no_relations(2, 3), 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(e.mu2()({e.index(1, i), e.index(1, j)}).empty());
}

TEST(KoszulDualAlgebra, UnitActsTrivially) {
  const KoszulDualAlgebra e(random_family(9)[4], 7);
  const std::size_t one = e.index(0, 0);
  for (std::size_t x = 0; x < e.space()->dim(); ++x) {
    const SparseVec ex = {{x, Scalar::one(Q)}};
    EXPECT_EQ(e.mu2()({one, x}), ex);
    EXPECT_EQ(e.mu2()({x, one}), ex);
  }
}

namespace {

// Two-dimensional space in weight 0, degree 0.
std::shared_ptr<GradedSpace> plane() {
  auto s = std::make_shared<GradedSpace>();
  s->add(0, 0, 2);
  return s;
}

MultilinearMap product(std::shared_ptr<const GradedSpace> s,
                       std::map<std::pair<std::size_t, std::size_t>, std::size_t> table) {
  MultilinearMap m;
  m.name = "mu";
  m.field = Q;
  m.space = s;
  m.arity = 2;
  m.on_basis = [table](const std::vector<std::size_t>& a) -> SparseVec {
    auto it = table.find({a[0], a[1]});
    if (it == table.end()) return {};
    return {{it->second, Scalar::one(Q)}};
  };
  return m;
}

}  // namespace

TEST(StarProduct, AssociatorOfABinaryProduct) {
  const auto s = plane();
  // Dual numbers: e0 unit, e1^2 = 0.
  const auto assoc = product(s, {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}});
  EXPECT_TRUE(vanishes(star_product(assoc, assoc), "mu*mu").ok);

  const auto bad = product(s, {{{0, 0}, 1}, {{1, 0}, 0}});
  const auto r = vanishes(star_product(bad, bad), "mu*mu");
  ASSERT_FALSE(r.ok);
  // The star product is the associator (xy)z - x(yz).
  const auto& w = r.witness;
  const auto lhs = evaluate(bad, {bad({w[0], w[1]}), {{w[2], Scalar::one(Q)}}});
  const auto rhs = evaluate(bad, {{{w[0], Scalar::one(Q)}}, bad({w[1], w[2]})});
  SparseVec diff = lhs;
  axpy(diff, Scalar(Q, -1L), rhs);
  EXPECT_EQ(r.value, diff);
}

TEST(StarProduct, IdentityInsertedInEverySlot) {
  auto s = std::make_shared<GradedSpace>();
  s->add(0, 0, 1);
  s->add(1, 1, 2);
  MultilinearMap f;
  f.name = "f";
  f.field = Q;
  f.space = s;
  f.arity = 3;
  f.degree = 1;
  f.on_basis = [](const std::vector<std::size_t>& a) -> SparseVec {
    return {{(a[0] + 2 * a[1] + a[2]) % 3, Scalar(Q, static_cast<long>(a[0] + 1))}};
  };
  const auto g = star_product(f, identity_map(Q, s));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        SparseVec expect = f({i, j, k});
        for (auto& e : expect) e.value *= Scalar(Q, 3L);
        EXPECT_EQ(g({i, j, k}), expect);
      }
}

TEST(StarProduct, RejectsDifferentSpaces) {
  auto line = std::make_shared<GradedSpace>();
  line->add(0, 0, 1);
  const auto a = product(plane(), {});
  const auto b = product(line, {});
  EXPECT_THROW(star_product(a, b), DimensionError);
}

TEST(A2NRelations, HoldOnEveryKoszulDual) {
  for (const auto& a : random_family(10)) {
    if (a.n < 3) continue;
    const KoszulDualAlgebra e(a, 7);
    const auto r = check_a2n_relations(e.mu2(), e.muN());
    EXPECT_TRUE(r.ok) << r.relation;
    EXPECT_TRUE(check_mun_mun_zero(e.muN()).ok);
  }
}

TEST(A2NRelations, CorruptedProductIsCaught) {
  const KoszulDualAlgebra e(random_family(11)[3], 6);
  MultilinearMap mu2 = e.mu2();
  const std::size_t one = e.index(0, 0), x = e.index(1, 0);
  const auto base = mu2.on_basis;
  mu2.on_basis = [=](const std::vector<std::size_t>& a) {
    SparseVec v = base(a);
    if (a[0] == one && a[1] == x)
      for (auto& t : v) t.value = -t.value;
    return v;
  };
  const auto r = check_a2n_relations(mu2, e.muN());
  ASSERT_FALSE(r.ok);
  EXPECT_FALSE(r.witness.empty());
  EXPECT_FALSE(r.value.empty());
}

TEST(A2NRelations, WrongDegreesThrow) {
  const KoszulDualAlgebra e(no_relations(2, 3), 4);
  EXPECT_THROW(check_a2n_relations(e.muN(), e.muN()), Error);
}

TEST(KoszulDualCoalgebra, LowWeights) {
  const auto a = random_family(12)[2];
  const auto c = koszul_dual_coalgebra(a, 4);
  const auto& comps = c.space->components();
  EXPECT_EQ(comps[static_cast<std::size_t>(c.space->find(0))].dim, 1u);
  EXPECT_EQ(comps[static_cast<std::size_t>(c.space->find(1))].dim, a.v_dim());
  EXPECT_EQ(comps[static_cast<std::size_t>(c.space->find(3))].dim, a.relation_dim());
  EXPECT_EQ(c.space->find(2), -1);
}

TEST(KoszulDualCoalgebra, DeltaNIsTheInclusionOfR) {
  for (const auto& a : random_family(13)) {
    if (a.n < 3) continue;
    const auto c = koszul_dual_coalgebra(a, a.n);
    const GradedAlgebraTable dual(dual_presentation(a), a.n);
    const auto& comp = c.space->components()[static_cast<std::size_t>(c.space->find(a.n))];
    const std::size_t w1 = c.space->components()[static_cast<std::size_t>(c.space->find(1))].offset;
    const std::size_t d = a.v_dim();
    EchelonBasis r(Q, ipow(d, a.n));
    for (std::size_t i = 0; i < a.relations.rows(); ++i) r.add(a.relations.row(i));
    EchelonBasis image(Q, ipow(d, a.n));
    // Dual pairing sign of N odd elements.
    const Scalar sign(Q, (a.n * (a.n - 1) / 2) % 2 == 0 ? 1L : -1L);
    for (std::size_t j = 0; j < comp.dim; ++j) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& t : c.deltaN[comp.offset + j]) {
        std::vector<int> letters;
        for (auto p : t.parts) letters.push_back(static_cast<int>(p - w1));
        acc.emplace(word_index(letters, d), t.coef);
      }
      SparseVec v;
      for (const auto& [k, s] : acc) v.push_back({k, s});
      EXPECT_TRUE(r.contains(v));
      image.add(v);
      // Pairing with the normal words of (R^⊥)-quotient is the dual basis.
      for (std::size_t i = 0; i < dual.dim(a.n); ++i) {
        const auto it = acc.find(word_index(dual.word(a.n, i), d));
        const Scalar got = it == acc.end() ? Scalar::zero(Q) : it->second;
        EXPECT_EQ(got, i == j ? sign : Scalar::zero(Q));
      }
    }
    EXPECT_EQ(image.rank(), a.relation_dim());
  }
}

TEST(KoszulDualCoalgebra, RelationsHoldOnRandomPresentations) {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 2);
    const std::size_t r = 1 + rng() % (d == 1 ? 1 : 7);
    const auto a = random_presentation(Q, 3, d, r, rng);
    const auto c = koszul_dual_coalgebra(a, 7);
    const auto rel = check_coalgebra_relations(c);
    EXPECT_TRUE(rel.ok) << rel.relation << " for sample " << k;
  }
}

TEST(PresentationOverNA2N, RelationCount) {
  const auto a = presentation(Q, 3, {"x", "y"}, {{1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0}});
  const auto p = presentation_over_na2n(a);
  EXPECT_EQ(p.relations.size(), 4u + 6u);
  EXPECT_EQ(p.constant_ids().size(), 2u);
}

TEST(PresentationCompare, TruncatedPolynomial) {
  const auto r = presentation_compare(truncated_polynomial(3), 9);
  ASSERT_EQ(r.rows.size(), 9u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.dual_dim, (row.weight % 3 == 0 || row.weight % 3 == 1) ? 1u : 0u);
    EXPECT_TRUE(row.dims_equal && row.isomorphic && row.products_equal) << row.weight;
  }
  EXPECT_TRUE(r.all_equal());
}

TEST(PresentationCompare, FullRelations) {
  const auto r = presentation_compare(full_relations(2, 3), 7);
  std::vector<std::size_t> dims, oracle;
  for (const auto& row : r.rows) {
    dims.push_back(row.presented);
    oracle.push_back((row.weight % 3 == 2) ? 0 : ipow(2, row.weight));
  }
  EXPECT_EQ(dims, oracle);
  EXPECT_EQ(dims, (std::vector<std::size_t>{2, 0, 8, 16, 0, 64, 128}));
  EXPECT_TRUE(r.all_equal());
}

TEST(PresentationCompare, NoRelations) {
  const auto r = presentation_compare(no_relations(2, 3), 7);
  EXPECT_TRUE(r.all_equal());
  for (const auto& row : r.rows) EXPECT_EQ(row.presented, row.weight == 1 ? 2u : 0u);
}

TEST(PresentationCompare, RandomPresentations) {
  std::mt19937_64 rng(15);
  for (std::size_t dr = 1; dr <= 5; ++dr) {
    const auto r = presentation_compare(random_presentation(Q, 3, 2, dr, rng), 7);
    EXPECT_TRUE(r.all_equal()) << "dim R " << dr;
  }
}
