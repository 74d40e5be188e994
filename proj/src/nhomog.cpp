#include "kgb/nhomog.hpp"

#include <algorithm>

namespace kgb {

namespace {

Scalar sign_scalar(Field f, int e) { return Scalar(f, (e % 2 == 0) ? 1L : -1L); }

SparseVec unit_vec(Field f, std::size_t i) { return {{i, Scalar::one(f)}}; }

SparseVec shifted(const SparseVec& x, std::size_t offset) {
  SparseVec out = x;
  for (auto& e : out) e.index += offset;
  return out;
}

}  // namespace

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> word_letters(std::size_t w, std::size_t d, int m) {
  std::vector<int> out(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(w % d);
    w /= d;
  }
  return out;
}

std::size_t word_index(const std::vector<int>& letters, std::size_t d) {
  std::size_t w = 0;
  for (int l : letters) w = w * d + static_cast<std::size_t>(l);
  return w;
}

NHomogPresentation NHomogPresentation::make(Field f, int n, std::vector<std::string> names,
                                            const ExactMatrix& rows) {
  if (n < 2) throw Error("N-homogeneous presentation needs N >= 2, got " + std::to_string(n));
  if (names.empty()) throw Error("N-homogeneous presentation needs at least one generator");
  const std::size_t cols = ipow(names.size(), n);
  if (rows.cols() != cols)
    throw DimensionError("relation rows have length " + std::to_string(rows.cols()) +
                         ", expected " + std::to_string(cols));
  if (!(rows.field() == f)) throw Error("relation matrix is over a different field");
  NHomogPresentation p;
  p.field = f;
  p.n = n;
  p.names = std::move(names);
  p.relations = rows.rows() ? row_reduce(rows).row_basis : ExactMatrix(f, 0, cols);
  return p;
}

NHomogPresentation dual_presentation(const NHomogPresentation& a) {
  std::vector<std::string> names;
  for (const auto& x : a.names) names.push_back(x + "*");
  const std::size_t cols = ipow(a.v_dim(), a.n);
  return NHomogPresentation::make(a.field, a.n, std::move(names),
                                  annihilator(a.relations, cols));
}

NHomogPresentation random_presentation(Field f, int n, std::size_t v_dim,
                                       std::size_t dim_r, std::mt19937_64& rng) {
  const std::size_t cols = ipow(v_dim, n);
  if (dim_r > cols) throw DimensionError("relation space larger than V^⊗N");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v_dim; ++i) names.push_back("x" + std::to_string(i + 1));
  const long lo = f.is_rational() ? -2 : 0;
  const long hi = f.is_rational() ? 2 : static_cast<long>(f.characteristic()) - 1;
  std::uniform_int_distribution<long> coef(lo, hi);
  for (;;) {
    ExactMatrix m(f, dim_r, cols);
    for (std::size_t i = 0; i < dim_r; ++i) {
      SparseVec r;
      for (std::size_t j = 0; j < cols; ++j) {
        Scalar c(f, coef(rng));
        if (!c.is_zero()) r.push_back({j, c});
      }
      m.set_row(i, std::move(r));
    }
    if (rank(m) == dim_r) return NHomogPresentation::make(f, n, std::move(names), m);
  }
}

// ---------------------------------------------------------------------------

GradedAlgebraTable::GradedAlgebraTable(const NHomogPresentation& p, int max_weight)
    : field_(p.field), n_(p.n), max_weight_(max_weight), d_(p.v_dim()) {
  if (max_weight < 0) throw BoundsError("negative weight bound");
  levels_.resize(static_cast<std::size_t>(max_weight) + 1);
  levels_[0].dim = 1;
  levels_[0].words.push_back({});
  for (int m = 1; m <= max_weight; ++m) build_level(m, p.relations);
}

void GradedAlgebraTable::build_level(int m, const ExactMatrix& rel) {
  auto& lv = levels_[static_cast<std::size_t>(m)];
  const auto& prev = levels_[static_cast<std::size_t>(m - 1)];
  const std::size_t cols = prev.dim * d_;
  lv.ideal = std::make_unique<EchelonBasis>(field_, cols);
  if (m >= n_ && rel.rows()) {
    const int base = m - n_;
    for (std::size_t u = 0; u < levels_[static_cast<std::size_t>(base)].dim; ++u) {
      // Classes of u·w' for the prefixes w' of length N-1 that occur in R.
      std::map<std::size_t, SparseVec> prefix_class;
      for (std::size_t r = 0; r < rel.rows(); ++r) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& e : rel.row(r)) {
          const std::size_t pre = e.index / d_;
          const std::size_t v = e.index % d_;
          auto it = prefix_class.find(pre);
          if (it == prefix_class.end()) {
            SparseVec x = unit_vec(field_, u);
            const auto letters = word_letters(pre, d_, n_ - 1);
            for (int k = 0; k < n_ - 1; ++k)
              x = append_letter(base + k, x, letters[static_cast<std::size_t>(k)]);
            it = prefix_class.emplace(pre, std::move(x)).first;
          }
          for (const auto& c : it->second) {
            auto& slot = acc.try_emplace(c.index * d_ + v, Scalar::zero(field_)).first->second;
            slot += c.value * e.value;
          }
        }
        lv.ideal->add(to_sparse(acc));
      }
    }
  }
  lv.coord_of_col.assign(cols, -1);
  for (std::size_t col = 0; col < cols; ++col) {
    if (lv.ideal->is_pivot(col)) continue;
    lv.coord_of_col[col] = static_cast<long>(lv.dim++);
    auto w = prev.words[col / d_];
    w.push_back(static_cast<int>(col % d_));
    lv.words.push_back(std::move(w));
  }
}

std::size_t GradedAlgebraTable::dim(int m) const {
  if (m < 0) return 0;
  if (m > max_weight_)
    throw BoundsError("weight " + std::to_string(m) + " beyond table bound " +
                      std::to_string(max_weight_));
  return levels_[static_cast<std::size_t>(m)].dim;
}

std::vector<std::size_t> GradedAlgebraTable::dims() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.dim);
  return out;
}

const std::vector<int>& GradedAlgebraTable::word(int m, std::size_t i) const {
  return levels_.at(static_cast<std::size_t>(m)).words.at(i);
}

SparseVec GradedAlgebraTable::append_letter(int m, const SparseVec& x, int letter) const {
  if (m + 1 > max_weight_)
    throw BoundsError("product reaches weight " + std::to_string(m + 1) +
                      " beyond table bound " + std::to_string(max_weight_));
  const auto& lv = levels_[static_cast<std::size_t>(m + 1)];
  SparseVec y;
  y.reserve(x.size());
  for (const auto& e : x) y.push_back({e.index * d_ + static_cast<std::size_t>(letter), e.value});
  y = lv.ideal->reduce(std::move(y));
  for (auto& e : y) e.index = static_cast<std::size_t>(lv.coord_of_col[e.index]);
  return y;
}

SparseVec GradedAlgebraTable::word_class(const std::vector<int>& w) const {
  SparseVec x = unit_vec(field_, 0);
  for (std::size_t k = 0; k < w.size(); ++k) x = append_letter(static_cast<int>(k), x, w[k]);
  return x;
}

SparseVec GradedAlgebraTable::multiply_basis(int p, std::size_t i, int q, std::size_t j) const {
  const std::array<std::size_t, 4> key{static_cast<std::size_t>(p), i,
                                       static_cast<std::size_t>(q), j};
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
  }
  if (p + q > max_weight_)
    throw BoundsError("product reaches weight " + std::to_string(p + q) +
                      " beyond table bound " + std::to_string(max_weight_));
  SparseVec x = unit_vec(field_, i);
  const auto& w = word(q, j);
  for (std::size_t k = 0; k < w.size(); ++k) x = append_letter(p + static_cast<int>(k), x, w[k]);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  product_cache_.emplace(key, x);
  return x;
}

SparseVec GradedAlgebraTable::multiply(int p, const SparseVec& x, int q, const SparseVec& y) const {
  std::map<std::size_t, Scalar> acc;
  for (const auto& a : x)
    for (const auto& b : y) accumulate(acc, a.value * b.value, multiply_basis(p, a.index, q, b.index));
  return to_sparse(acc);
}

std::vector<std::vector<int>> weight_basis(const NHomogPresentation& a, int m) {
  GradedAlgebraTable t(a, m);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < t.dim(m); ++i) out.push_back(t.word(m, i));
  return out;
}

// ---------------------------------------------------------------------------

void GradedSpace::add(int weight, int degree, std::size_t dim) {
  parts_.push_back({weight, degree, dim, total_});
  total_ += dim;
}

long GradedSpace::find(int weight) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].weight == weight) return static_cast<long>(i);
  return -1;
}

const GradedComponent& GradedSpace::component_of(std::size_t index) const {
  if (index >= total_) throw DimensionError("basis index outside graded space");
  auto it = std::upper_bound(parts_.begin(), parts_.end(), index,
                             [](std::size_t i, const GradedComponent& c) { return i < c.offset; });
  // Skip empty components sharing the offset.
  --it;
  while (it->dim == 0) --it;
  return *it;
}

int GradedSpace::max_weight() const {
  int w = 0;
  for (const auto& c : parts_) w = std::max(w, c.weight);
  return w;
}

bool operator==(const GradedSpace& a, const GradedSpace& b) {
  if (a.parts_.size() != b.parts_.size()) return false;
  for (std::size_t i = 0; i < a.parts_.size(); ++i) {
    const auto &x = a.parts_[i], &y = b.parts_[i];
    if (x.weight != y.weight || x.degree != y.degree || x.dim != y.dim) return false;
  }
  return true;
}

namespace {

void expand(const MultilinearMap& f, const std::vector<SparseVec>& args, std::size_t pos,
            std::vector<std::size_t>& tuple, const Scalar& coef,
            std::map<std::size_t, Scalar>& acc) {
  if (pos == args.size()) {
    accumulate(acc, coef, f(tuple));
    return;
  }
  for (const auto& e : args[pos]) {
    tuple[pos] = e.index;
    expand(f, args, pos + 1, tuple, coef * e.value, acc);
  }
}

void check_same_space(const MultilinearMap& f, const MultilinearMap& g) {
  if (!(f.field == g.field) || !f.space || !g.space ||
      (f.space != g.space && !(*f.space == *g.space)))
    throw DimensionError("maps '" + f.name + "' and '" + g.name + "' act on different spaces");
}

}  // namespace

SparseVec evaluate(const MultilinearMap& f, const std::vector<SparseVec>& args) {
  if (args.size() != f.arity)
    throw DimensionError("'" + f.name + "' takes " + std::to_string(f.arity) + " arguments");
  std::map<std::size_t, Scalar> acc;
  std::vector<std::size_t> tuple(args.size());
  expand(f, args, 0, tuple, Scalar::one(f.field), acc);
  return to_sparse(acc);
}

MultilinearMap identity_map(Field f, std::shared_ptr<const GradedSpace> space) {
  MultilinearMap m;
  m.name = "id";
  m.field = f;
  m.space = std::move(space);
  m.arity = 1;
  m.degree = 0;
  m.on_basis = [f](const std::vector<std::size_t>& x) { return unit_vec(f, x[0]); };
  return m;
}

MultilinearMap compose_at(const MultilinearMap& f, std::size_t i, const MultilinearMap& g) {
  check_same_space(f, g);
  if (i < 1 || i > f.arity) throw ArityError("slot " + std::to_string(i) + " outside arity");
  MultilinearMap h;
  h.name = f.name + "." + std::to_string(i) + "(" + g.name + ")";
  h.field = f.field;
  h.space = f.space;
  h.arity = f.arity + g.arity - 1;
  h.degree = f.degree + g.degree;
  h.on_basis = [f, g, i](const std::vector<std::size_t>& x) {
    int before = 0;
    for (std::size_t j = 0; j + 1 < i; ++j) before += f.space->degree_of(x[j]);
    const std::vector<std::size_t> inner_args(x.begin() + static_cast<long>(i - 1),
                                              x.begin() + static_cast<long>(i - 1 + g.arity));
    const SparseVec inner = g(inner_args);
    std::map<std::size_t, Scalar> acc;
    std::vector<std::size_t> outer(x.begin(), x.begin() + static_cast<long>(i - 1));
    outer.push_back(0);
    outer.insert(outer.end(), x.begin() + static_cast<long>(i - 1 + g.arity), x.end());
    const Scalar s = sign_scalar(f.field, g.degree * before);
    for (const auto& e : inner) {
      outer[i - 1] = e.index;
      accumulate(acc, s * e.value, f(outer));
    }
    return to_sparse(acc);
  };
  return h;
}

MultilinearMap sum(const MultilinearMap& f, const MultilinearMap& g) {
  check_same_space(f, g);
  if (f.arity != g.arity || f.degree != g.degree)
    throw DimensionError("sum of maps with different arity or degree");
  MultilinearMap h = f;
  h.name = f.name + " + " + g.name;
  h.on_basis = [f, g](const std::vector<std::size_t>& x) {
    SparseVec y = f(x);
    axpy(y, Scalar::one(f.field), g(x));
    return y;
  };
  return h;
}

MultilinearMap star_product(const MultilinearMap& f, const MultilinearMap& g) {
  check_same_space(f, g);
  const int k = static_cast<int>(f.arity), l = static_cast<int>(g.arity), q = g.degree;
  std::vector<MultilinearMap> parts;
  std::vector<Scalar> signs;
  for (int i = 1; i <= k; ++i) {
    parts.push_back(compose_at(f, static_cast<std::size_t>(i), g));
    signs.push_back(sign_scalar(f.field, q * (k - 1) + (l - 1) * (i - 1)));
  }
  MultilinearMap h = parts.front();
  h.name = "(" + f.name + ")*(" + g.name + ")";
  h.on_basis = [parts, signs](const std::vector<std::size_t>& x) {
    SparseVec y;
    for (std::size_t i = 0; i < parts.size(); ++i) axpy(y, signs[i], parts[i](x));
    return y;
  };
  return h;
}

namespace {

// Calls visit(tuple) for every basis tuple of the given length whose total
// weight is at most `budget`.
template <class Visit>
bool for_each_tuple(const GradedSpace& s, std::size_t len, int budget,
                    std::vector<std::size_t>& tuple, Visit&& visit) {
  if (tuple.size() == len) return visit(tuple);
  for (const auto& c : s.components()) {
    if (c.weight > budget || c.dim == 0) continue;
    for (std::size_t j = 0; j < c.dim; ++j) {
      tuple.push_back(c.offset + j);
      const bool go = for_each_tuple(s, len, budget - c.weight, tuple, visit);
      tuple.pop_back();
      if (!go) return false;
    }
  }
  return true;
}

}  // namespace

RelationCheck vanishes(const MultilinearMap& f, const std::string& label) {
  RelationCheck out;
  std::vector<std::size_t> tuple;
  const auto& s = *f.space;
  for_each_tuple(s, f.arity, s.max_weight(), tuple,
                 [&](const std::vector<std::size_t>& x) {
                   // Values of weight absent from the space are zero.
                   int w = 0;
                   for (auto i : x) w += s.weight_of(i);
                   const long c = s.find(w);
                   if (c < 0 || s.components()[static_cast<std::size_t>(c)].dim == 0) return true;
                   SparseVec v = f(x);
                   if (v.empty()) return true;
                   out.ok = false;
                   out.relation = label;
                   out.witness = x;
                   out.value = std::move(v);
                   return false;
                 });
  return out;
}

RelationCheck check_a2n_relations(const MultilinearMap& mu2, const MultilinearMap& muN) {
  const int n = static_cast<int>(muN.arity);
  if (mu2.arity != 2 || mu2.degree != 0)
    throw Error("mu2 must be binary of degree 0");
  if (n < 2 || muN.degree != 2 - n)
    throw Error("muN must have degree 2 - N = " + std::to_string(2 - n));
  auto r = vanishes(star_product(mu2, mu2), "mu2*mu2");
  if (!r.ok) return r;
  r = vanishes(sum(star_product(mu2, muN), star_product(muN, mu2)), "mu2*muN + muN*mu2");
  if (!r.ok) return r;
  return vanishes(star_product(muN, muN), "muN*muN");
}

RelationCheck check_mun_mun_zero(const MultilinearMap& muN) {
  for (std::size_t i = 1; i <= muN.arity; ++i) {
    auto r = vanishes(compose_at(muN, i, muN), "muN o_" + std::to_string(i) + " muN");
    if (!r.ok) return r;
  }
  return {};
}

// ---------------------------------------------------------------------------

std::optional<int> koszul_degree(int n, int m) {
  if (m < 0) return std::nullopt;
  if (m % n == 0) return 2 * m / n;
  if (m % n == 1) return 2 * (m - 1) / n + 1;
  return std::nullopt;
}

namespace {

// Products in A^∨ of sequences of basis elements, memoized by prefix.
class SequenceProducts {
 public:
  SequenceProducts(std::shared_ptr<const GradedAlgebraTable> table,
                   std::shared_ptr<const GradedSpace> space, Field f)
      : table_(std::move(table)), space_(std::move(space)), f_(f) {}

  SparseVec get(const std::vector<std::size_t>& x) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = values_.find(x);
      if (it != values_.end()) return it->second;
    }
    const auto& last = space_->component_of(x.back());
    SparseVec out;
    if (x.size() == 1) {
      out = unit_vec(f_, x[0] - last.offset);
    } else {
      const std::vector<std::size_t> head(x.begin(), x.end() - 1);
      int w = 0;
      for (auto i : head) w += space_->weight_of(i);
      const SparseVec acc = get(head);
      if (!acc.empty())
        out = table_->multiply(w, acc, last.weight, unit_vec(f_, x.back() - last.offset));
    }
    std::lock_guard<std::mutex> lock(mutex_);
    values_.emplace(x, out);
    return out;
  }

 private:
  std::shared_ptr<const GradedAlgebraTable> table_;
  std::shared_ptr<const GradedSpace> space_;
  Field f_;
  std::mutex mutex_;
  std::map<std::vector<std::size_t>, SparseVec> values_;
};

}  // namespace

KoszulDualAlgebra::KoszulDualAlgebra(const NHomogPresentation& a, int bound)
    : field_(a.field), n_(a.n), bound_(bound), dual_(dual_presentation(a)) {
  table_ = std::make_shared<const GradedAlgebraTable>(dual_, bound);
  space_ = std::make_shared<GradedSpace>();
  for (int m = 0; m <= bound; ++m)
    if (auto deg = koszul_degree(n_, m)) space_->add(m, *deg, table_->dim(m));

  const auto table = table_;
  const std::shared_ptr<const GradedSpace> space = space_;
  const int n = n_;
  const auto offset_of = [space](int w) -> std::optional<std::size_t> {
    const long c = space->find(w);
    if (c < 0) return std::nullopt;
    return space->components()[static_cast<std::size_t>(c)].offset;
  };

  mu2_.name = "mu2";
  mu2_.field = field_;
  mu2_.space = space_;
  mu2_.arity = 2;
  mu2_.degree = 0;
  mu2_.on_basis = [table, space, offset_of](const std::vector<std::size_t>& x) -> SparseVec {
    const auto& a = space->component_of(x[0]);
    const auto& b = space->component_of(x[1]);
    if (a.degree % 2 != 0 && b.degree % 2 != 0) return {};
    const int w = a.weight + b.weight;
    if (w > table->max_weight()) return {};
    const auto off = offset_of(w);
    if (!off) return {};
    return shifted(table->multiply_basis(a.weight, x[0] - a.offset, b.weight, x[1] - b.offset),
                   *off);
  };

  muN_.name = "m" + std::to_string(n);
  muN_.field = field_;
  muN_.space = space_;
  muN_.arity = static_cast<std::size_t>(n);
  muN_.degree = 2 - n;
  const Field f = field_;
  auto product = std::make_shared<SequenceProducts>(table, space, f);
  muN_.on_basis = [table, space, offset_of, product](const std::vector<std::size_t>& x) -> SparseVec {
    int w = 0;
    for (auto i : x) {
      const auto& c = space->component_of(i);
      if (c.degree % 2 == 0) return {};
      w += c.weight;
    }
    if (w > table->max_weight()) return {};
    const auto off = offset_of(w);
    if (!off) return {};
    return shifted(product->get(x), *off);
  };
}

std::size_t KoszulDualAlgebra::dim(int m) const {
  const long c = space_->find(m);
  return c < 0 ? 0 : space_->components()[static_cast<std::size_t>(c)].dim;
}

std::size_t KoszulDualAlgebra::index(int m, std::size_t i) const {
  const long c = space_->find(m);
  if (c < 0 || i >= space_->components()[static_cast<std::size_t>(c)].dim)
    throw DimensionError("no basis element " + std::to_string(i) + " in weight " +
                         std::to_string(m));
  return space_->components()[static_cast<std::size_t>(c)].offset + i;
}

KoszulDualAlgebra koszul_dual_algebra(const NHomogPresentation& a, int bound) {
  return KoszulDualAlgebra(a, bound);
}

// ---------------------------------------------------------------------------

namespace {

int pairing_sign(const GradedSpace& s, const std::vector<std::size_t>& x) {
  int e = 0, before = 0;
  for (auto i : x) {
    const int d = s.degree_of(i);
    e += before * d;
    before += d;
  }
  return e;
}

}  // namespace

A2NCoalgebra koszul_dual_coalgebra(const KoszulDualAlgebra& e) {
  A2NCoalgebra c;
  c.field = e.field();
  c.n = e.n();
  c.bound = e.bound();
  c.space = e.space();
  const auto& s = *c.space;
  c.delta2.assign(s.dim(), {});
  c.deltaN.assign(s.dim(), {});
  const int top = e.bound();

  std::vector<std::size_t> tuple;
  for_each_tuple(s, 2, top, tuple, [&](const std::vector<std::size_t>& x) {
    const Scalar sg = sign_scalar(c.field, pairing_sign(s, x));
    for (const auto& t : e.mu2()(x)) c.delta2[t.index].push_back({x, sg * t.value});
    return true;
  });

  // N-tuples of odd elements, extending prefix products one factor at a time.
  const auto& table = e.dual_algebra();
  const Scalar sg = sign_scalar(c.field, e.n() * (e.n() - 1) / 2);
  std::vector<const GradedComponent*> odd;
  for (const auto& comp : s.components())
    if (comp.degree % 2 != 0 && comp.dim) odd.push_back(&comp);
  std::function<void(int, SparseVec)> grow = [&](int w, SparseVec acc) {
    if (acc.empty()) return;
    if (tuple.size() == static_cast<std::size_t>(e.n())) {
      const long tc = s.find(w);
      if (tc < 0) return;
      const std::size_t off = s.components()[static_cast<std::size_t>(tc)].offset;
      for (const auto& t : acc) c.deltaN[off + t.index].push_back({tuple, sg * t.value});
      return;
    }
    for (const auto* comp : odd) {
      if (w + comp->weight > top) continue;
      for (std::size_t j = 0; j < comp->dim; ++j) {
        tuple.push_back(comp->offset + j);
        SparseVec next = tuple.size() == 1
                             ? unit_vec(c.field, j)
                             : table.multiply(w, acc, comp->weight, unit_vec(c.field, j));
        grow(w + comp->weight, std::move(next));
        tuple.pop_back();
      }
    }
  };
  tuple.clear();
  grow(0, unit_vec(c.field, 0));
  return c;
}

A2NCoalgebra koszul_dual_coalgebra(const NHomogPresentation& a, int bound) {
  return koszul_dual_coalgebra(KoszulDualAlgebra(a, bound));
}

namespace {

using TensorAcc = std::map<std::vector<std::size_t>, Scalar>;

void add_term(TensorAcc& acc, const std::vector<std::size_t>& key, const Scalar& v) {
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(key, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

// (δ ⋆ δ')(c) = Σ_i ± (1^{i-1} ⊗ δ' ⊗ 1^{k-i}) δ(c).
void co_star(const A2NCoalgebra& c, const std::vector<std::vector<CoTerm>>& outer, int k,
             const std::vector<std::vector<CoTerm>>& inner, int l, int q, std::size_t x,
             const Scalar& factor, TensorAcc& acc) {
  for (const auto& t : outer[x]) {
    int before = 0;
    for (int i = 1; i <= k; ++i) {
      const std::size_t y = t.parts[static_cast<std::size_t>(i - 1)];
      const Scalar s = factor * t.coef *
                       sign_scalar(c.field, q * (k - 1) + (l - 1) * (i - 1) + q * before);
      for (const auto& u : inner[y]) {
        std::vector<std::size_t> key(t.parts.begin(), t.parts.begin() + (i - 1));
        key.insert(key.end(), u.parts.begin(), u.parts.end());
        key.insert(key.end(), t.parts.begin() + i, t.parts.end());
        add_term(acc, key, s * u.coef);
      }
      before += c.degree_of(y);
    }
  }
}

}  // namespace

RelationCheck check_coalgebra_relations(const A2NCoalgebra& c) {
  const int n = c.n;
  const Scalar one = Scalar::one(c.field);
  const int qn = n - 2;
  for (std::size_t x = 0; x < c.space->dim(); ++x) {
    struct Rel {
      std::string label;
      TensorAcc acc;
    };
    std::vector<Rel> rels(3);
    rels[0].label = "delta2*delta2";
    co_star(c, c.delta2, 2, c.delta2, 2, 0, x, one, rels[0].acc);
    rels[1].label = "delta2*deltaN + deltaN*delta2";
    co_star(c, c.delta2, 2, c.deltaN, n, qn, x, one, rels[1].acc);
    co_star(c, c.deltaN, n, c.delta2, 2, 0, x, one, rels[1].acc);
    rels[2].label = "deltaN*deltaN";
    co_star(c, c.deltaN, n, c.deltaN, n, qn, x, one, rels[2].acc);
    for (auto& r : rels) {
      if (r.acc.empty()) continue;
      RelationCheck out;
      out.ok = false;
      out.relation = r.label;
      out.witness = {x};
      out.witness.insert(out.witness.end(), r.acc.begin()->first.begin(),
                         r.acc.begin()->first.end());
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

bool PresentationCompare::all_equal() const {
  for (const auto& r : rows)
    if (!r.dims_equal || !r.isomorphic || !r.products_equal) return false;
  return true;
}

AlgebraPresentation presentation_over_na2n(const NHomogPresentation& a) {
  const auto op = na2n_presentation(a.n, a.field);
  const auto dual = dual_presentation(a);
  std::vector<Generator> consts;
  for (const auto& name : dual.names) consts.push_back({name, 0, 1, 1, true});
  auto ap = AlgebraPresentation::over(op, consts);
  const auto& g = ap.gens;
  const int m2 = g.id("m2");
  const int mn = g.id("m" + std::to_string(a.n));
  std::vector<TreeMonomial> leaf;
  for (const auto& name : dual.names) leaf.push_back(TreeMonomial::corolla(g, g.id(name)));
  const Field f = a.field;
  for (const auto& x : leaf)
    for (const auto& y : leaf)
      ap.relations.push_back(OperadElement::monomial(f, graft(g, m2, {x, y}), Scalar::one(f)));
  const std::size_t d = a.v_dim();
  for (std::size_t r = 0; r < dual.relations.rows(); ++r) {
    OperadElement e(f, 0);
    for (const auto& t : dual.relations.row(r)) {
      std::vector<TreeMonomial> args;
      for (int l : word_letters(t.index, d, a.n)) args.push_back(leaf[static_cast<std::size_t>(l)]);
      e.add(graft(g, mn, args), t.value);
    }
    ap.relations.push_back(e);
  }
  return ap;
}

namespace {

struct TreeEvaluator {
  const GeneratorSet& gens;
  const KoszulDualAlgebra& e;
  int m2, mn;
  std::map<int, std::size_t> constant_index;

  SparseVec at(const TreeMonomial& t, std::size_t& pos) const {
    const int g = t.code[pos++];
    if (g == TreeMonomial::kLeaf) throw ArityError("evaluation needs an arity-0 tree");
    if (gens[g].constant) return unit_vec(e.field(), e.index(1, constant_index.at(g)));
    std::vector<SparseVec> args;
    for (int k = 0; k < gens.arity(g); ++k) args.push_back(at(t, pos));
    if (g == m2) return evaluate(e.mu2(), args);
    if (g == mn) return evaluate(e.muN(), args);
    throw Error("unexpected generator in evaluation");
  }
  SparseVec operator()(const TreeMonomial& t) const {
    std::size_t pos = 0;
    return at(t, pos);
  }
  SparseVec operator()(const OperadElement& x) const {
    SparseVec out;
    for (const auto& [t, c] : x.terms()) axpy(out, c, (*this)(t));
    return out;
  }
};

}  // namespace

PresentationCompare presentation_compare(const NHomogPresentation& a, int bound,
                                         unsigned threads) {
  if (a.n < 3) throw Error("presentation over NA_{2,N} needs N >= 3");
  const auto ap = presentation_over_na2n(a);
  BuchbergerOptions opt;
  opt.bounds.max_weight = bound;
  opt.bounds.measure = WeightMeasure::potential;
  opt.threads = threads;
  const auto gb = reduce_gb(algebra_groebner(ap, MonomialOrder(ap.gens), opt));
  const auto basis = algebra_normal_basis(gb, bound);
  const KoszulDualAlgebra e(a, bound);
  const auto& g = gb.gens;
  TreeEvaluator phi{g, e, g.id("m2"), g.id("m" + std::to_string(a.n)), {}};
  {
    std::size_t k = 0;
    for (int id : ap.constant_ids()) phi.constant_index[id] = k++;
  }

  PresentationCompare out;
  out.gb_size = gb.elements.size();
  const Field f = a.field;
  const auto reduce_tree = [&](const TreeMonomial& t) {
    return phi(reduce(gb, OperadElement::monomial(f, t, Scalar::one(f))));
  };
  for (int m = 1; m <= bound; ++m) {
    PresentationCompareRow row;
    row.weight = m;
    row.dual_dim = e.dim(m);
    row.presented = basis.at(m).size();
    row.dims_equal = row.dual_dim == row.presented;
    std::vector<SparseVec> images;
    for (const auto& t : basis.at(m)) images.push_back(phi(t));
    row.isomorphic = row.dims_equal &&
                     (images.empty() || rank(ExactMatrix::from_rows(f, e.space()->dim(), images)) ==
                                            row.dual_dim);

    bool ok = true;
    for (int p = 1; p < m && ok; ++p)
      for (const auto& t1 : basis.at(p))
        for (const auto& t2 : basis.at(m - p)) {
          const auto tree = graft(g, phi.m2, {t1, t2});
          if (reduce_tree(tree) != phi(tree)) ok = false;
          if (!ok) break;
        }
    // N-tuples of basis trees with total weight m.
    std::vector<TreeMonomial> args;
    std::function<void(int)> tuples = [&](int left) {
      if (!ok) return;
      if (args.size() == static_cast<std::size_t>(a.n)) {
        if (left != 0) return;
        const auto tree = graft(g, phi.mn, args);
        if (reduce_tree(tree) != phi(tree)) ok = false;
        return;
      }
      const int rest = a.n - static_cast<int>(args.size()) - 1;
      for (int w = 1; w <= left - rest; ++w)
        for (const auto& t : basis.at(w)) {
          args.push_back(t);
          tuples(left - w);
          args.pop_back();
        }
    };
    tuples(m);
    row.products_equal = ok;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace kgb
