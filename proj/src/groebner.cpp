#include "kgb/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <thread>

namespace kgb {

int Bounds::measure_of(const GeneratorSet& gens, const TreeMonomial& t) const {
  if (measure == WeightMeasure::potential)
    return static_cast<int>(arity(t)) + constant_weight(gens, t);
  return weight(gens, t);
}

bool Bounds::admits(const GeneratorSet& gens, const TreeMonomial& t) const {
  if (max_arity && arity(t) > *max_arity) return false;
  if (max_weight && measure_of(gens, t) > *max_weight) return false;
  return true;
}

std::string Bounds::to_string() const {
  std::string s = "max_arity=";
  s += max_arity ? std::to_string(*max_arity) : "none";
  s += " max_weight=";
  s += max_weight ? std::to_string(*max_weight) : "none";
  s += measure == WeightMeasure::labels ? " (labels)" : " (potential)";
  return s;
}

std::pair<TreeMonomial, Scalar> leading_term(const GeneratorSet& gens,
                                             const OperadElement& f,
                                             const MonomialOrder& o) {
  if (f.is_zero()) throw Error("leading term of the zero element");
  const std::pair<const TreeMonomial, Scalar>* best = nullptr;
  OrderKey best_key;
  for (const auto& term : f.terms()) {
    auto k = o.key(gens, term.first);
    if (!best || best_key < k) {
      best = &term;
      best_key = std::move(k);
    }
  }
  return {best->first, best->second};
}

GBElement make_monic(const GeneratorSet& gens, const MonomialOrder& o,
                     OperadElement f, std::string origin) {
  auto [lt, c] = leading_term(gens, f, o);
  if (!c.is_one()) f *= c.inverse();
  GBElement e{std::move(f), lt, o.key(gens, lt), std::move(origin)};
  return e;
}

namespace {

std::vector<std::uint16_t> label_counts(const GeneratorSet& gens,
                                        const TreeMonomial& t) {
  std::vector<std::uint16_t> c(gens.size(), 0);
  for (auto x : t.code)
    if (x != TreeMonomial::kLeaf) ++c[static_cast<std::size_t>(x)];
  return c;
}

struct Term {
  TreeMonomial t;
  Scalar c;
};

using WorkMap = std::map<OrderKey, Term, std::greater<>>;

/// Divisor lookup over a fixed list of monic elements, smallest lt first.
class Reducer {
 public:
  Reducer(const GeneratorSet& gens, const MonomialOrder& o)
      : gens_(gens), order_(o) {}

  void set(const std::vector<const GBElement*>& elems) {
    entries_.clear();
    for (auto* e : elems) insert(e);
  }

  void insert(const GBElement* e) {
    Entry en{e, label_counts(gens_, e->lt), vertex_count(e->lt)};
    auto pos = std::lower_bound(
        entries_.begin(), entries_.end(), e->lt_key,
        [](const Entry& a, const OrderKey& k) { return a.elem->lt_key < k; });
    entries_.insert(pos, std::move(en));
  }

  void erase(const GBElement* e) {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const Entry& x) { return x.elem == e; }),
                   entries_.end());
  }

  bool find(const TreeMonomial& s, const GBElement** which, Embedding* emb) const {
    if (entries_.empty()) return false;
    const auto counts = label_counts(gens_, s);
    const std::size_t vc = vertex_count(s);
    for (const auto& en : entries_) {
      if (en.vertices > vc) continue;
      bool fits = true;
      for (std::size_t k = 0; k < counts.size() && fits; ++k)
        fits = en.counts[k] <= counts[k];
      if (!fits) continue;
      const auto root = en.elem->lt.code[0];
      for (std::size_t p = 0; p < s.code.size(); ++p) {
        if (s.code[p] != root) continue;
        if (embed_at(gens_, s, en.elem->lt, p, emb)) {
          *which = en.elem;
          return true;
        }
      }
    }
    return false;
  }

  OperadElement reduce(const OperadElement& f) const {
    OperadElement out(f.field(), f.arity());
    WorkMap work;
    for (const auto& [t, c] : f.terms()) work.emplace(order_.key(gens_, t), Term{t, c});
    while (!work.empty()) {
      auto top = work.begin();
      const GBElement* g = nullptr;
      Embedding emb;
      if (!find(top->second.t, &g, &emb)) {
        out.add(top->second.t, top->second.c);
        work.erase(top);
        continue;
      }
      const OrderKey top_key = top->first;
      const Term lead = top->second;
      work.erase(top);
      const auto lifted = substitute(gens_, lead.t, emb, g->element);
      for (const auto& [t, c] : lifted.terms()) {
        if (t == lead.t) {
          if (!c.is_one()) throw Error("substitution changed the leading coefficient");
          continue;
        }
        auto k = order_.key(gens_, t);
        if (!(k < top_key))
          throw Error("reduction step did not decrease: " + encode(gens_, t) +
                      " is not below " + encode(gens_, lead.t));
        const Scalar delta = -(lead.c * c);
        auto it = work.find(k);
        if (it == work.end()) {
          work.emplace(std::move(k), Term{t, delta});
        } else {
          it->second.c += delta;
          if (it->second.c.is_zero()) work.erase(it);
        }
      }
    }
    return out;
  }

 private:
  struct Entry {
    const GBElement* elem;
    std::vector<std::uint16_t> counts;
    std::size_t vertices;
  };
  const GeneratorSet& gens_;
  const MonomialOrder& order_;
  std::vector<Entry> entries_;
};

std::vector<const GBElement*> pointers(const std::vector<GBElement>& v) {
  std::vector<const GBElement*> p;
  for (const auto& e : v) p.push_back(&e);
  return p;
}

// Merges the subtree of `host` at hp with `guest` rooted at the same vertex.
bool merge_at(const GeneratorSet& gens, const TreeMonomial& host,
              std::size_t& hp, const TreeMonomial& guest, std::size_t& gp,
              std::vector<std::int32_t>& out) {
  const auto h = host.code[hp];
  const auto g = guest.code[gp];
  if (g == TreeMonomial::kLeaf) {
    const std::size_t e = subtree_end(gens, host, hp);
    out.insert(out.end(), host.code.begin() + static_cast<long>(hp),
               host.code.begin() + static_cast<long>(e));
    hp = e;
    ++gp;
    return true;
  }
  if (h == TreeMonomial::kLeaf) {
    const std::size_t e = subtree_end(gens, guest, gp);
    out.insert(out.end(), guest.code.begin() + static_cast<long>(gp),
               guest.code.begin() + static_cast<long>(e));
    gp = e;
    ++hp;
    return true;
  }
  if (h != g) return false;
  out.push_back(h);
  ++hp;
  ++gp;
  for (int c = 0; c < gens.arity(h); ++c)
    if (!merge_at(gens, host, hp, guest, gp, out)) return false;
  return true;
}

// Overlaps with the root of `guest` at a vertex of `host`.
void overlaps_into(const GeneratorSet& gens, const TreeMonomial& host,
                   const TreeMonomial& guest, bool skip_root, bool host_is_s,
                   std::vector<SmallCommonMultiple>& out) {
  for (std::size_t v = skip_root ? 1 : 0; v < host.code.size(); ++v) {
    if (host.code[v] == TreeMonomial::kLeaf || host.code[v] != guest.code[0]) continue;
    std::vector<std::int32_t> code(host.code.begin(), host.code.begin() + static_cast<long>(v));
    std::size_t hp = v, gp = 0;
    if (!merge_at(gens, host, hp, guest, gp, code)) continue;
    code.insert(code.end(), host.code.begin() + static_cast<long>(hp), host.code.end());
    SmallCommonMultiple m;
    m.u.code = std::move(code);
    m.root_s = host_is_s ? 0 : v;
    m.root_t = host_is_s ? v : 0;
    out.push_back(std::move(m));
  }
}

}  // namespace

OperadElement reduce(const GroebnerBasis& basis, const OperadElement& f) {
  Reducer r(basis.gens, basis.order);
  r.set(pointers(basis.elements));
  return r.reduce(f);
}

std::vector<SmallCommonMultiple> small_common_multiples(const GeneratorSet& gens,
                                                        const TreeMonomial& s,
                                                        const TreeMonomial& t,
                                                        bool same) {
  std::vector<SmallCommonMultiple> out;
  if (s.is_identity() || t.is_identity()) return out;
  overlaps_into(gens, s, t, same, true, out);
  if (!same) overlaps_into(gens, t, s, true, false, out);
  return out;
}

OperadElement s_polynomial(const GeneratorSet& gens, const GBElement& f,
                           const GBElement& g, const SmallCommonMultiple& scm) {
  Embedding ef, eg;
  if (!embed_at(gens, scm.u, f.lt, scm.root_s, &ef) ||
      !embed_at(gens, scm.u, g.lt, scm.root_t, &eg))
    throw Error("invalid overlap for S-polynomial");
  auto s = substitute(gens, scm.u, ef, f.element);
  s -= substitute(gens, scm.u, eg, g.element);
  if (!s.coefficient(scm.u).is_zero())
    throw Error("S-polynomial did not cancel its common multiple");
  return s;
}

namespace {

struct Pending {
  std::size_t arity;
  int weight;
  std::uint64_t seq;
  // Either an input polynomial or a pair of element ids with an overlap.
  std::optional<OperadElement> poly;
  std::size_t i = 0, j = 0;
  SmallCommonMultiple scm;
  std::string origin;

  bool operator>(const Pending& o) const {
    if (arity != o.arity) return arity > o.arity;
    if (weight != o.weight) return weight > o.weight;
    return seq > o.seq;
  }
};

class Completion {
 public:
  Completion(const GeneratorSet& gens, const MonomialOrder& o,
             const BuchbergerOptions& opt, Field f)
      : gens_(gens), order_(o), opt_(opt), field_(f), reducer_(gens, o) {}

  void push_input(OperadElement f, std::string origin) {
    if (f.is_zero()) return;
    const auto lt = leading_term(gens_, f, order_).first;
    Pending p{arity(lt), opt_.bounds.measure_of(gens_, lt), seq_++, std::move(f), 0,
              0, {}, std::move(origin)};
    queue_.push(std::move(p));
  }

  void run() {
    while (!queue_.empty()) {
      std::vector<Pending> batch;
      batch.push_back(pop());
      while (!queue_.empty() && queue_.top().arity == batch[0].arity &&
             queue_.top().weight == batch[0].weight)
        batch.push_back(pop());
      process(batch);
    }
  }

  GroebnerBasis result(const Bounds& bounds) const {
    GroebnerBasis g;
    g.gens = gens_;
    g.order = order_;
    g.field = field_;
    for (std::size_t k = 0; k < elems_.size(); ++k)
      if (alive_[k]) g.elements.push_back(elems_[k]);
    std::sort(g.elements.begin(), g.elements.end(),
              [](const GBElement& a, const GBElement& b) { return a.lt_key < b.lt_key; });
    g.complete_up_to = bounds;
    g.stats = stats_;
    return g;
  }

 private:
  Pending pop() {
    Pending p = queue_.top();
    queue_.pop();
    return p;
  }

  std::optional<OperadElement> materialize(const Pending& p) const {
    if (p.poly) return *p.poly;
    if (!alive_[p.i] || !alive_[p.j]) return std::nullopt;
    return s_polynomial(gens_, elems_[p.i], elems_[p.j], p.scm);
  }

  void process(std::vector<Pending>& batch) {
    std::vector<std::optional<OperadElement>> polys(batch.size());
    for (std::size_t k = 0; k < batch.size(); ++k) {
      polys[k] = materialize(batch[k]);
      if (!batch[k].poly) ++stats_.pairs_considered;
    }
    // Optional parallel pre-reduction against a frozen snapshot.
    if (opt_.threads > 1 && batch.size() > 1) {
      std::vector<std::thread> pool;
      const unsigned n = std::min<unsigned>(opt_.threads, static_cast<unsigned>(batch.size()));
      for (unsigned w = 0; w < n; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t k = w; k < polys.size(); k += n)
            if (polys[k]) polys[k] = reducer_.reduce(*polys[k]);
        });
      for (auto& t : pool) t.join();
    }
    // Single sequencing point: admission order is the queue order.
    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (!polys[k]) continue;
      if (!batch[k].poly && (!alive_[batch[k].i] || !alive_[batch[k].j])) continue;
      auto r = reducer_.reduce(*polys[k]);
      if (r.is_zero()) {
        ++stats_.reductions_to_zero;
        continue;
      }
      admit(std::move(r), batch[k].origin);
    }
  }

  void admit(OperadElement r, const std::string& origin) {
    GBElement e = make_monic(gens_, order_, std::move(r), origin);
    // Elements whose leading monomial becomes reducible are re-queued.
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      if (!alive_[k] || !divides(gens_, e.lt, elems_[k].lt)) continue;
      alive_[k] = false;
      reducer_.erase(&elems_[k]);
      ++stats_.elements_removed;
      push_input(elems_[k].element, elems_[k].origin);
    }
    const std::size_t id = elems_.size();
    elems_.push_back(std::move(e));
    alive_.push_back(true);
    ++stats_.elements_added;
    // elems_ is a deque, so pointers held by the reducer stay valid.
    reducer_.insert(&elems_[id]);
    for (std::size_t k = 0; k <= id; ++k) {
      if (!alive_[k]) continue;
      const auto scms = small_common_multiples(gens_, elems_[k].lt, elems_[id].lt, k == id);
      for (const auto& m : scms) {
        if (!opt_.bounds.admits(gens_, m.u)) {
          ++stats_.pairs_beyond_bounds;
          continue;
        }
        Pending p{arity(m.u), opt_.bounds.measure_of(gens_, m.u), seq_++, std::nullopt,
                  k, id, m, "s(" + std::to_string(k) + "," + std::to_string(id) + ")"};
        queue_.push(std::move(p));
      }
    }
  }

  const GeneratorSet& gens_;
  const MonomialOrder& order_;
  const BuchbergerOptions& opt_;
  Field field_;
  Reducer reducer_;
  std::deque<GBElement> elems_;
  std::vector<bool> alive_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  GroebnerStats stats_;
};

}  // namespace

GroebnerBasis buchberger(const GeneratorSet& gens,
                         const std::vector<OperadElement>& relations,
                         const MonomialOrder& o, const BuchbergerOptions& opt) {
  Field f = relations.empty() ? Field::rationals() : relations.front().field();
  for (const auto& r : relations)
    if (!(r.field() == f)) throw Error("relations over different fields");
  Completion c(gens, o, opt, f);
  for (std::size_t k = 0; k < relations.size(); ++k)
    c.push_input(relations[k], "input " + std::to_string(k));
  c.run();
  auto g = c.result(opt.bounds);
  return opt.interreduce ? reduce_gb(g) : g;
}

GroebnerBasis reduce_gb(const GroebnerBasis& g) {
  GroebnerBasis out = g;
  out.elements.clear();
  std::vector<GBElement> sorted = g.elements;
  std::sort(sorted.begin(), sorted.end(),
            [](const GBElement& a, const GBElement& b) { return a.lt_key < b.lt_key; });
  std::vector<GBElement> kept;
  for (auto& e : sorted) {
    bool redundant = false;
    for (const auto& k : kept)
      if (divides(g.gens, k.lt, e.lt)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(e));
  }
  Reducer r(g.gens, g.order);
  r.set(pointers(kept));
  for (const auto& e : kept) {
    OperadElement tail = e.element;
    tail.add(e.lt, -tail.coefficient(e.lt));
    OperadElement f = r.reduce(tail);
    f.add(e.lt, Scalar::one(e.element.field()));
    out.elements.push_back(make_monic(g.gens, g.order, std::move(f), e.origin));
  }
  out.reduced = true;
  return out;
}

GroebnerBasis make_basis(const GeneratorSet& gens, const MonomialOrder& o,
                         Field f, const std::vector<OperadElement>& elements,
                         const Bounds& bounds) {
  GroebnerBasis g;
  g.gens = gens;
  g.order = o;
  g.field = f;
  for (std::size_t k = 0; k < elements.size(); ++k)
    if (!elements[k].is_zero())
      g.elements.push_back(make_monic(gens, o, elements[k], "given " + std::to_string(k)));
  std::sort(g.elements.begin(), g.elements.end(),
            [](const GBElement& a, const GBElement& b) { return a.lt_key < b.lt_key; });
  g.complete_up_to = bounds;
  return g;
}

GroebnerCertificate is_groebner(const GroebnerBasis& g) {
  GroebnerCertificate cert;
  Reducer r(g.gens, g.order);
  r.set(pointers(g.elements));
  for (std::size_t j = 0; j < g.elements.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const auto scms =
          small_common_multiples(g.gens, g.elements[i].lt, g.elements[j].lt, i == j);
      for (const auto& m : scms) {
        if (!g.complete_up_to.admits(g.gens, m.u)) continue;
        ++cert.pairs_checked;
        auto rem = r.reduce(s_polynomial(g.gens, g.elements[i], g.elements[j], m));
        if (!rem.is_zero()) {
          cert.ok = false;
          cert.first = i;
          cert.second = j;
          cert.overlap = m;
          cert.remainder = std::move(rem);
          return cert;
        }
      }
    }
  return cert;
}

std::vector<TreeMonomial> normal_monomials(const GroebnerBasis& g,
                                           std::size_t arity, int max_weight) {
  const auto root_ok = [&](const TreeMonomial& t) {
    for (const auto& e : g.elements)
      if (embed_at(g.gens, t, e.lt, 0, nullptr)) return false;
    return true;
  };
  auto trees = enumerate_trees(g.gens, arity, max_weight, root_ok);
  std::vector<std::pair<OrderKey, TreeMonomial>> keyed;
  for (auto& t : trees) keyed.emplace_back(g.order.key(g.gens, t), std::move(t));
  std::sort(keyed.begin(), keyed.end());
  std::vector<TreeMonomial> out;
  for (auto& [k, t] : keyed) out.push_back(std::move(t));
  return out;
}

}  // namespace kgb
