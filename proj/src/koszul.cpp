#include "kgb/koszul.hpp"

#include <algorithm>
#include <functional>

namespace kgb {

namespace {

Scalar sign_scalar(Field f, long e) { return Scalar(f, (e % 2 == 0) ? 1L : -1L); }

SparseVec unit_vec(Field f, std::size_t i) { return {{i, Scalar::one(f)}}; }

void check_range(const A2NCoalgebra& c, const GradedAlgebraTable& a) {
  if (c.space->max_weight() > a.max_weight())
    throw BoundsError("coalgebra reaches weight " + std::to_string(c.space->max_weight()) +
                      ", algebra table stops at " + std::to_string(a.max_weight()));
}

void check_images(const A2NCoalgebra& c, const TwistingMorphism& f) {
  if (f.images.size() != c.space->dim())
    throw DimensionError("map has " + std::to_string(f.images.size()) +
                         " images, coalgebra has dimension " + std::to_string(c.space->dim()));
}

}  // namespace

TwistingMorphism TwistingMorphism::zero(const A2NCoalgebra& c, int degree) {
  TwistingMorphism t;
  t.degree = degree;
  t.images.assign(c.space->dim(), {});
  return t;
}

ExactMatrix TwistingMorphism::component(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                        std::size_t comp) const {
  const auto& k = c.space->components().at(comp);
  std::vector<SparseVec> rows(images.begin() + static_cast<long>(k.offset),
                              images.begin() + static_cast<long>(k.offset + k.dim));
  return ExactMatrix::from_rows(c.field, a.dim(k.weight), std::move(rows));
}

TwistingMorphism convolution_star2(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                   const TwistingMorphism& f, const TwistingMorphism& g) {
  check_range(c, a);
  check_images(c, f);
  check_images(c, g);
  TwistingMorphism out = TwistingMorphism::zero(c, f.degree + g.degree);
  for (std::size_t x = 0; x < c.space->dim(); ++x) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& t : c.delta2[x]) {
      const auto &l = t.parts[0], &r = t.parts[1];
      if (f.images[l].empty() || g.images[r].empty()) continue;
      const Scalar s = t.coef * sign_scalar(c.field, static_cast<long>(g.degree) * c.degree_of(l));
      accumulate(acc, s, a.multiply(c.weight_of(l), f.images[l], c.weight_of(r), g.images[r]));
    }
    out.images[x] = to_sparse(acc);
  }
  return out;
}

TwistingMorphism convolution_starN(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                   const std::vector<TwistingMorphism>& fs) {
  check_range(c, a);
  if (fs.size() != static_cast<std::size_t>(c.n))
    throw DimensionError("star_N takes " + std::to_string(c.n) + " maps");
  int degree = 0;
  for (const auto& f : fs) {
    check_images(c, f);
    degree += f.degree;
  }
  TwistingMorphism out = TwistingMorphism::zero(c, degree);
  for (std::size_t x = 0; x < c.space->dim(); ++x) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& t : c.deltaN[x]) {
      long e = 0, before = 0;
      SparseVec prod;
      int w = 0;
      bool zero = false;
      for (std::size_t j = 0; j < t.parts.size() && !zero; ++j) {
        const auto y = t.parts[j];
        e += static_cast<long>(fs[j].degree) * before;
        before += c.degree_of(y);
        const auto& img = fs[j].images[y];
        if (img.empty()) {
          zero = true;
        } else if (j == 0) {
          prod = img;
          w = c.weight_of(y);
        } else {
          prod = a.multiply(w, prod, c.weight_of(y), img);
          w += c.weight_of(y);
          zero = prod.empty();
        }
      }
      if (!zero) accumulate(acc, t.coef * sign_scalar(c.field, e), prod);
    }
    out.images[x] = to_sparse(acc);
  }
  return out;
}

MaurerCartanResult maurer_cartan_check(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                       const TwistingMorphism& alpha) {
  const auto s2 = convolution_star2(c, a, alpha, alpha);
  const auto sn = convolution_starN(c, a, std::vector<TwistingMorphism>(
                                              static_cast<std::size_t>(c.n), alpha));
  MaurerCartanResult out;
  for (std::size_t x = 0; x < c.space->dim(); ++x) {
    SparseVec r = s2.images[x];
    axpy(r, Scalar::one(c.field), sn.images[x]);
    // ∂α = d_A α - (-1)^{|α|} α d_C, with d_A = 0.
    if (!c.d.empty())
      for (const auto& e : c.d[x])
        axpy(r, e.value * sign_scalar(c.field, alpha.degree + 1), alpha.images[e.index]);
    if (r.empty()) continue;
    const int w = c.weight_of(x);
    if (out.ok || w < out.weight) {
      out.ok = false;
      out.weight = w;
      out.element = x;
    }
  }
  return out;
}

TwistingMorphism kappa(const A2NCoalgebra& c, const GradedAlgebraTable& a) {
  TwistingMorphism k = TwistingMorphism::zero(c);
  const long comp = c.space->find(1);
  if (comp < 0) return k;
  const auto& one = c.space->components()[static_cast<std::size_t>(comp)];
  if (one.dim != a.dim(1))
    throw DimensionError("weight-1 components of coalgebra and algebra differ");
  for (std::size_t i = 0; i < one.dim; ++i) k.images[one.offset + i] = unit_vec(c.field, i);
  return k;
}

// ---------------------------------------------------------------------------

namespace {

// c ↦ Σ target ⊗ u·(-), u of weight u_weight in A.
struct TensorTerm {
  std::size_t target;
  int u_weight;
  SparseVec u;
};

TwistedComplex build_tensor_complex(const GradedSpace& cs, int c_bound,
                                    const GradedAlgebraTable& a, int max_weight,
                                    const std::vector<std::vector<TensorTerm>>& terms) {
  if (max_weight > a.max_weight() || max_weight > c_bound)
    throw BoundsError("tensor complex requested to weight " + std::to_string(max_weight) +
                      " beyond stored weights");
  const Field f = a.field();
  TwistedComplex out;
  out.complex = WeightedComplex(f);
  const auto& comps = cs.components();
  for (int m = 0; m <= max_weight; ++m) {
    int top = 0;
    for (const auto& k : comps)
      if (k.weight <= m) top = std::max(top, k.degree);
    std::vector<std::vector<TensorBlock>> layout(static_cast<std::size_t>(top) + 1);
    std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
    std::vector<long> block_of(comps.size(), -1);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].weight > m) continue;
      TensorBlock b;
      b.component = k;
      b.a_weight = m - comps[k].weight;
      b.c_dim = comps[k].dim;
      b.a_dim = a.dim(b.a_weight);
      const auto h = static_cast<std::size_t>(comps[k].degree);
      b.offset = dims[h];
      dims[h] += b.c_dim * b.a_dim;
      block_of[k] = static_cast<long>(layout[h].size());
      layout[h].push_back(b);
    }
    ChainComplex cc(f, dims);
    for (std::size_t h = 1; h < dims.size(); ++h) {
      std::vector<SparseVec> rows(dims[h]);
      for (const auto& b : layout[h]) {
        const auto& comp = comps[b.component];
        for (std::size_t i = 0; i < b.c_dim; ++i) {
          const auto& ts = terms[comp.offset + i];
          for (std::size_t l = 0; l < b.a_dim; ++l) {
            std::map<std::size_t, Scalar> acc;
            for (const auto& t : ts) {
              const auto& tc = cs.component_of(t.target);
              const std::size_t tk = static_cast<std::size_t>(&tc - comps.data());
              if (tc.degree + 1 != comp.degree)
                throw Error("differential term does not lower the degree by one");
              const auto& tb = layout[h - 1][static_cast<std::size_t>(block_of[tk])];
              const SparseVec y = a.multiply(t.u_weight, t.u, b.a_weight, unit_vec(f, l));
              const std::size_t base = tb.offset + (t.target - tc.offset) * tb.a_dim;
              for (const auto& e : y) {
                auto& slot = acc.try_emplace(base + e.index, Scalar::zero(f)).first->second;
                slot += e.value;
              }
            }
            rows[b.offset + i * b.a_dim + l] = to_sparse(acc);
          }
        }
      }
      cc.set_differential(h, ExactMatrix::from_rows(f, dims[h - 1], std::move(rows)));
    }
    out.layout[m] = std::move(layout);
    out.complex.set(static_cast<std::size_t>(m), std::move(cc));
  }
  return out;
}

void assert_square_zero(const WeightedComplex& c, const std::string& what) {
  for (auto w : c.weights()) {
    const long bad = c.at(w).first_nonzero_square();
    if (bad >= 0)
      throw StructureError(what + ": d^2 != 0 in weight " + std::to_string(w) + ", degree " +
                               std::to_string(bad + 1),
                           w, bad + 1);
  }
}

}  // namespace

TwistedComplex twisted_tensor_product(const A2NCoalgebra& c, const GradedAlgebraTable& a,
                                      const TwistingMorphism& alpha, int max_weight) {
  check_images(c, alpha);
  const Field f = c.field;
  const auto& s = *c.space;
  std::vector<std::vector<TensorTerm>> terms(s.dim());
  for (std::size_t x = 0; x < s.dim(); ++x) {
    if (s.weight_of(x) > max_weight) continue;
    auto& ts = terms[x];
    if (!c.d.empty())
      for (const auto& e : c.d[x]) ts.push_back({e.index, 0, {{0, e.value}}});
    for (const auto& t : c.delta2[x]) {
      const auto &l = t.parts[0], &r = t.parts[1];
      if (alpha.images[r].empty()) continue;
      const Scalar sg = t.coef * sign_scalar(f, static_cast<long>(alpha.degree) * s.degree_of(l));
      ts.push_back({l, s.weight_of(r), scaled(alpha.images[r], sg)});
    }
    for (const auto& t : c.deltaN[x]) {
      long e = 0, before = s.degree_of(t.parts[0]);
      SparseVec prod;
      int w = 0;
      for (std::size_t j = 1; j < t.parts.size(); ++j) {
        const auto y = t.parts[j];
        e += static_cast<long>(alpha.degree) * before;
        before += s.degree_of(y);
        const auto& img = alpha.images[y];
        if (img.empty()) {
          prod.clear();
          break;
        }
        prod = j == 1 ? img : a.multiply(w, prod, s.weight_of(y), img);
        w += s.weight_of(y);
        if (prod.empty()) break;
      }
      if (prod.empty()) continue;
      ts.push_back({t.parts[0], w, scaled(prod, t.coef * sign_scalar(f, e))});
    }
  }
  auto out = build_tensor_complex(s, c.bound, a, max_weight, terms);
  assert_square_zero(out.complex, "twisted tensor product (twisting morphism fails Maurer-Cartan)");
  return out;
}

TwistedComplex koszul_complex(const NHomogPresentation& p, int max_weight) {
  const GradedAlgebraTable a(p, max_weight);
  const GradedAlgebraTable dual(dual_presentation(p), max_weight);
  const int n = p.n;
  const std::size_t d = p.v_dim();
  GradedSpace cs;
  for (int m = 0; m <= max_weight; ++m)
    if (auto deg = koszul_degree(n, m)) cs.add(m, *deg, dual.dim(m));
  std::vector<std::vector<TensorTerm>> terms(cs.dim());
  const auto offset = [&](int m) {
    return cs.components()[static_cast<std::size_t>(cs.find(m))].offset;
  };
  // The element dual to the normal word w_j pairs with a word x as the w_j
  // coordinate of the class of x in A^∨; splitting x = u·v gives the
  // coproduct component A^¡_{m-r} ⊗ V^{⊗r}.
  for (int m = 1; m <= max_weight; ++m) {
    if (!koszul_degree(n, m)) continue;
    const int r = (m % n == 1 || n == 2) ? 1 : n - 1;
    const std::size_t words = ipow(d, r);
    std::vector<SparseVec> v_class(words);
    for (std::size_t v = 0; v < words; ++v) v_class[v] = a.word_class(word_letters(v, d, r));
    for (std::size_t u = 0; u < dual.dim(m - r); ++u) {
      for (std::size_t v = 0; v < words; ++v) {
        SparseVec y = unit_vec(p.field, u);
        const auto letters = word_letters(v, d, r);
        for (int k = 0; k < r && !y.empty(); ++k)
          y = dual.append_letter(m - r + k, y, letters[static_cast<std::size_t>(k)]);
        if (v_class[v].empty()) continue;
        for (const auto& e : y)
          terms[offset(m) + e.index].push_back(
              {offset(m - r) + u, r, scaled(v_class[v], e.value)});
      }
    }
  }
  return build_tensor_complex(cs, max_weight, a, max_weight, terms);
}

namespace {

KoszulVerdict koszul_verdict(const NHomogPresentation& p, int max_weight, bool stop_early) {
  const auto kc = koszul_complex(p, max_weight);
  KoszulVerdict v;
  for (int m = 0; m <= max_weight; ++m) {
    auto h = homology_dims(kc.complex, static_cast<std::size_t>(m));
    for (std::size_t i = 1; i < h.size() && v.koszul; ++i)
      if (h[i] != 0) {
        v.koszul = false;
        v.weight = m;
        v.degree = static_cast<int>(i);
      }
    v.homology[m] = std::move(h);
    if (!v.koszul && stop_early) break;
  }
  return v;
}

}  // namespace

KoszulVerdict is_n_koszul(const NHomogPresentation& a, int max_weight) {
  return koszul_verdict(a, max_weight, false);
}

// ---------------------------------------------------------------------------

namespace {

void compositions(int m, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (m == 0) out.push_back(cur);
    return;
  }
  for (int p = 1; p <= m - (parts - 1); ++p) {
    cur.push_back(p);
    compositions(m - p, parts - 1, cur, out);
    cur.pop_back();
  }
}

// Basis of one weight of the bar construction: per degree s, the
// compositions of m into s parts and the offsets of their tensor blocks.
struct BarWeight {
  std::vector<std::vector<std::vector<int>>> comps;  // s -> compositions
  std::vector<std::map<std::vector<int>, std::size_t>> offset;
  std::vector<std::size_t> dims;
};

BarWeight bar_weight(const GradedAlgebraTable& a, int m) {
  BarWeight bw;
  const auto top = static_cast<std::size_t>(m);
  bw.comps.resize(top + 1);
  bw.offset.resize(top + 1);
  bw.dims.assign(top + 1, 0);
  if (m == 0) {
    bw.comps[0].push_back({});
    bw.offset[0][{}] = 0;
    bw.dims[0] = 1;
    return bw;
  }
  for (int s = 1; s <= m; ++s) {
    std::vector<int> cur;
    compositions(m, s, cur, bw.comps[static_cast<std::size_t>(s)]);
    auto& dim = bw.dims[static_cast<std::size_t>(s)];
    for (const auto& c : bw.comps[static_cast<std::size_t>(s)]) {
      bw.offset[static_cast<std::size_t>(s)][c] = dim;
      std::size_t size = 1;
      for (int p : c) size *= a.dim(p);
      dim += size;
    }
  }
  return bw;
}

std::vector<std::size_t> decode(const GradedAlgebraTable& a, const std::vector<int>& comp,
                                std::size_t local) {
  std::vector<std::size_t> out(comp.size());
  for (std::size_t i = comp.size(); i-- > 0;) {
    const std::size_t k = a.dim(comp[i]);
    out[i] = local % k;
    local /= k;
  }
  return out;
}

std::size_t encode(const GradedAlgebraTable& a, const std::vector<int>& comp,
                   const std::vector<std::size_t>& idx) {
  std::size_t local = 0;
  for (std::size_t i = 0; i < comp.size(); ++i) local = local * a.dim(comp[i]) + idx[i];
  return local;
}

}  // namespace

BarConstruction bar_construction(const NHomogPresentation& p, int max_weight,
                                 bool with_coproduct) {
  BarConstruction b;
  auto table = std::make_shared<const GradedAlgebraTable>(p, max_weight);
  b.algebra = table;
  const auto& a = *table;
  const Field f = p.field;
  b.complex = WeightedComplex(f);

  std::vector<BarWeight> weights;
  auto space = std::make_shared<GradedSpace>();
  // (m, s) -> component index in the coalgebra space.
  std::vector<std::vector<std::size_t>> comp_index(static_cast<std::size_t>(max_weight) + 1);
  for (int m = 0; m <= max_weight; ++m) {
    weights.push_back(bar_weight(a, m));
    const auto& bw = weights.back();
    comp_index[static_cast<std::size_t>(m)].assign(bw.dims.size(), 0);
    for (std::size_t s = (m == 0 ? 0 : 1); s < bw.dims.size(); ++s) {
      comp_index[static_cast<std::size_t>(m)][s] = space->components().size();
      space->add(m, static_cast<int>(s), bw.dims[s]);
    }
  }
  const auto global = [&](int m, std::size_t s, std::size_t local) {
    return space->components()[comp_index[static_cast<std::size_t>(m)][s]].offset + local;
  };

  A2NCoalgebra& c = b.coalgebra;
  c.field = f;
  c.n = p.n;
  c.bound = max_weight;
  c.space = space;
  c.delta2.assign(space->dim(), {});
  c.deltaN.assign(space->dim(), {});
  c.d.assign(space->dim(), {});

  for (int m = 0; m <= max_weight; ++m) {
    const auto& bw = weights[static_cast<std::size_t>(m)];
    ChainComplex cc(f, bw.dims);
    for (std::size_t s = 1; s < bw.dims.size(); ++s) {
      std::vector<SparseVec> rows(bw.dims[s]);
      for (const auto& comp : bw.comps[s]) {
        const std::size_t off = bw.offset[s].at(comp);
        std::size_t size = 1;
        for (int q : comp) size *= a.dim(q);
        for (std::size_t local = 0; local < size; ++local) {
          const auto idx = decode(a, comp, local);
          std::map<std::size_t, Scalar> acc;
          for (std::size_t i = 0; i + 1 < comp.size(); ++i) {
            const SparseVec prod = a.multiply_basis(comp[i], idx[i], comp[i + 1], idx[i + 1]);
            if (prod.empty()) continue;
            std::vector<int> merged(comp.begin(), comp.begin() + static_cast<long>(i));
            merged.push_back(comp[i] + comp[i + 1]);
            merged.insert(merged.end(), comp.begin() + static_cast<long>(i + 2), comp.end());
            std::vector<std::size_t> nidx(idx.begin(), idx.begin() + static_cast<long>(i));
            nidx.push_back(0);
            nidx.insert(nidx.end(), idx.begin() + static_cast<long>(i + 2), idx.end());
            const std::size_t noff = bw.offset[s - 1].at(merged);
            const Scalar sg = sign_scalar(f, static_cast<long>(i));
            for (const auto& e : prod) {
              nidx[i] = e.index;
              auto& slot = acc.try_emplace(noff + encode(a, merged, nidx), Scalar::zero(f))
                               .first->second;
              slot += sg * e.value;
            }
          }
          SparseVec row = to_sparse(acc);
          if (s >= 2) {
            SparseVec g = row;
            for (auto& e : g) e.index = global(m, s - 1, e.index);
            c.d[global(m, s, off + local)] = std::move(g);
          }
          rows[off + local] = std::move(row);

          if (with_coproduct) {
            auto& out = c.delta2[global(m, s, off + local)];
            for (std::size_t i = 0; i <= comp.size(); ++i) {
              const std::vector<int> lc(comp.begin(), comp.begin() + static_cast<long>(i));
              const std::vector<int> rc(comp.begin() + static_cast<long>(i), comp.end());
              const std::vector<std::size_t> li(idx.begin(), idx.begin() + static_cast<long>(i));
              const std::vector<std::size_t> ri(idx.begin() + static_cast<long>(i), idx.end());
              int lw = 0;
              for (int q : lc) lw += q;
              const auto& lbw = weights[static_cast<std::size_t>(lw)];
              const auto& rbw = weights[static_cast<std::size_t>(m - lw)];
              out.push_back({{global(lw, lc.size(), lbw.offset[lc.size()].at(lc) + encode(a, lc, li)),
                              global(m - lw, rc.size(),
                                     rbw.offset[rc.size()].at(rc) + encode(a, rc, ri))},
                             Scalar::one(f)});
            }
          }
        }
      }
      cc.set_differential(s, ExactMatrix::from_rows(f, bw.dims[s - 1], std::move(rows)));
    }
    if (m == 0 && with_coproduct) c.delta2[global(0, 0, 0)].push_back({{global(0, 0, 0), global(0, 0, 0)}, Scalar::one(f)});
    b.complex.set(static_cast<std::size_t>(m), std::move(cc));
  }
  assert_square_zero(b.complex, "bar construction");
  for (int m = 0; m <= max_weight; ++m)
    b.ext_dims[m] = homology_dims(b.complex, static_cast<std::size_t>(m));
  return b;
}

TwistingMorphism bar_projection(const BarConstruction& b) {
  TwistingMorphism pi = TwistingMorphism::zero(b.coalgebra);
  const auto& s = *b.coalgebra.space;
  for (const auto& k : s.components()) {
    if (k.degree != 1) continue;
    for (std::size_t i = 0; i < k.dim; ++i)
      pi.images[k.offset + i] = unit_vec(b.coalgebra.field, i);
  }
  return pi;
}

YonedaReport check_yoneda_dims(const NHomogPresentation& p, int max_weight) {
  const auto bar = bar_construction(p, max_weight);
  const GradedAlgebraTable dual(dual_presentation(p), max_weight);
  YonedaReport r;
  for (int m = 0; m <= max_weight; ++m) {
    const auto& ext = bar.ext_dims.at(m);
    std::vector<std::size_t> expected(ext.size(), 0);
    if (auto deg = koszul_degree(p.n, m))
      if (static_cast<std::size_t>(*deg) < expected.size())
        expected[static_cast<std::size_t>(*deg)] = dual.dim(m);
    if (ext != expected && r.match) {
      r.match = false;
      r.first_mismatch = m;
    }
    r.ext[m] = ext;
    r.expected[m] = std::move(expected);
  }
  return r;
}

// ---------------------------------------------------------------------------

WeightedComplex cobar_complex(const A2NCoalgebra& c, int max_weight) {
  const auto& s = *c.space;
  if (max_weight > c.bound)
    throw BoundsError("cobar requested to weight " + std::to_string(max_weight) +
                      " beyond the coalgebra");
  const Field f = c.field;
  // d(s^{-1}x) on a cogenerator, as sequences of cogenerators.
  std::vector<std::vector<std::pair<std::vector<std::size_t>, Scalar>>> dgen(s.dim());
  for (std::size_t x = 0; x < s.dim(); ++x) {
    if (s.weight_of(x) == 0 || s.weight_of(x) > max_weight) continue;
    for (const auto* list : {&c.delta2[x], &c.deltaN[x]})
      for (const auto& t : *list) {
        bool reduced = true;
        long e = 0;
        const long k = static_cast<long>(t.parts.size());
        for (long i = 0; i < k; ++i) {
          const auto y = t.parts[static_cast<std::size_t>(i)];
          if (s.weight_of(y) == 0) reduced = false;
          e += (k - 1 - i) * s.degree_of(y);
        }
        if (reduced) dgen[x].push_back({t.parts, t.coef * sign_scalar(f, e)});
      }
  }

  WeightedComplex out(f);
  std::vector<const GradedComponent*> cogens;
  for (const auto& k : s.components())
    if (k.weight >= 1 && k.dim) cogens.push_back(&k);
  for (int m = 0; m <= max_weight; ++m) {
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
    std::vector<std::vector<std::size_t>> seq;
    std::function<void(int, int)> grow = [&](int left, int deg) {
      if (left == 0) {
        if (index.size() <= static_cast<std::size_t>(deg)) index.resize(static_cast<std::size_t>(deg) + 1);
        auto& idx = index[static_cast<std::size_t>(deg)];
        const std::size_t id = idx.size();
        idx.emplace(seq.back(), id);
        return;
      }
      for (const auto* k : cogens) {
        if (k->weight > left) continue;
        for (std::size_t j = 0; j < k->dim; ++j) {
          auto next = seq.back();
          next.push_back(k->offset + j);
          seq.push_back(std::move(next));
          grow(left - k->weight, deg + k->degree - 1);
          seq.pop_back();
        }
      }
    };
    seq.push_back({});
    grow(m, 0);
    if (index.empty()) index.resize(1);
    // Basis order within a degree: enumeration order.
    std::vector<std::vector<const std::vector<std::size_t>*>> by_pos(index.size());
    std::vector<std::size_t> dims;
    for (std::size_t h = 0; h < index.size(); ++h) {
      dims.push_back(index[h].size());
      by_pos[h].resize(index[h].size());
      for (const auto& [key, id] : index[h]) by_pos[h][id] = &key;
    }
    ChainComplex cc(f, dims);
    for (std::size_t h = 1; h < dims.size(); ++h) {
      std::vector<SparseVec> rows(dims[h]);
      for (std::size_t r = 0; r < dims[h]; ++r) {
        const auto& x = *by_pos[h][r];
        std::map<std::size_t, Scalar> acc;
        long before = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const Scalar sg = sign_scalar(f, before);
          for (const auto& [parts, coef] : dgen[x[i]]) {
            std::vector<std::size_t> y(x.begin(), x.begin() + static_cast<long>(i));
            y.insert(y.end(), parts.begin(), parts.end());
            y.insert(y.end(), x.begin() + static_cast<long>(i + 1), x.end());
            const std::size_t col = index[h - 1].at(y);
            auto& slot = acc.try_emplace(col, Scalar::zero(f)).first->second;
            slot += sg * coef;
          }
          before += s.degree_of(x[i]) - 1;
        }
        rows[r] = to_sparse(acc);
      }
      cc.set_differential(h, ExactMatrix::from_rows(f, dims[h - 1], std::move(rows)));
    }
    out.set(static_cast<std::size_t>(m), std::move(cc));
  }
  assert_square_zero(out, "cobar construction (coalgebra relations fail)");
  return out;
}

// ---------------------------------------------------------------------------

F2Search f2_koszul_search(std::size_t v_dim, int n, std::size_t max_dim_r, int max_weight) {
  const Field f2 = Field::prime(2);
  const std::size_t cols = ipow(v_dim, n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v_dim; ++i) names.push_back(std::string(1, static_cast<char>('x' + i)));
  F2Search out;
  for (std::size_t k = 1; k <= std::min(max_dim_r, cols); ++k) {
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    for (;;) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = piv[r] + 1; j < cols; ++j)
          if (!std::binary_search(piv.begin(), piv.end(), j)) free.push_back({r, j});
      const std::size_t count = std::size_t{1} << free.size();
      for (std::size_t bits = 0; bits < count; ++bits) {
        std::vector<SparseVec> rows(k);
        for (std::size_t r = 0; r < k; ++r) rows[r].push_back({piv[r], Scalar::one(f2)});
        for (std::size_t b = 0; b < free.size(); ++b)
          if (bits >> b & 1) rows[free[b].first].push_back({free[b].second, Scalar::one(f2)});
        const auto p = NHomogPresentation::make(f2, n, names,
                                                ExactMatrix::from_rows(f2, cols, std::move(rows)));
        ++out.examined;
        auto v = koszul_verdict(p, max_weight, true);
        if (!v.koszul) {
          out.witness = p;
          out.verdict = std::move(v);
          return out;
        }
      }
      // Next pivot set in lexicographic order.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == cols - k + (i - 1)) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace kgb
