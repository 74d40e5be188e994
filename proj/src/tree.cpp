#include "kgb/tree.hpp"

#include <algorithm>
#include <sstream>

namespace kgb {

int GeneratorSet::add(Generator g) {
  if (g.name.empty()) throw Error("generator with empty name");
  if (by_name_.count(g.name)) throw Error("duplicate generator '" + g.name + "'");
  if (g.arity < 0) throw ArityError("negative arity for '" + g.name + "'");
  if (g.weight < 1) throw Error("generator weight must be positive: '" + g.name + "'");
  if (g.constant && g.arity != 0)
    throw ArityError("constant '" + g.name + "' must have arity 0");
  const int id = static_cast<int>(gens_.size());
  by_name_[g.name] = id;
  arity_.push_back(g.arity);
  gens_.push_back(std::move(g));
  return id;
}

int GeneratorSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int GeneratorSet::id(const std::string& name) const {
  const int i = find(name);
  if (i < 0) throw Error("unknown generator '" + name + "'");
  return i;
}

bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.gens_[i];
    const auto& y = b.gens_[i];
    if (x.name != y.name || x.arity != y.arity || x.degree != y.degree ||
        x.weight != y.weight || x.constant != y.constant)
      return false;
  }
  return true;
}

TreeMonomial TreeMonomial::corolla(const GeneratorSet& gens, int gen) {
  TreeMonomial t;
  t.code.assign(1, gen);
  t.code.insert(t.code.end(), static_cast<std::size_t>(gens.arity(gen)), kLeaf);
  return t;
}

std::size_t TreeMonomialHash::operator()(const TreeMonomial& t) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : t.code) {
    h ^= static_cast<std::size_t>(x + 2);
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t subtree_end(const GeneratorSet& gens, const TreeMonomial& t,
                        std::size_t pos) {
  long need = 1;
  const auto& c = t.code;
  while (need > 0) {
    if (pos >= c.size()) throw ArityError("truncated tree code");
    need += (c[pos] == TreeMonomial::kLeaf ? 0 : gens.arity(c[pos])) - 1;
    ++pos;
  }
  return pos;
}

void validate(const GeneratorSet& gens, const TreeMonomial& t) {
  for (auto x : t.code)
    if (x != TreeMonomial::kLeaf && (x < 0 || static_cast<std::size_t>(x) >= gens.size()))
      throw ArityError("unknown generator id in tree code");
  if (t.code.empty() || subtree_end(gens, t, 0) != t.code.size())
    throw ArityError("tree code does not describe a single tree");
}

std::size_t arity(const TreeMonomial& t) {
  return static_cast<std::size_t>(
      std::count(t.code.begin(), t.code.end(), TreeMonomial::kLeaf));
}

int weight(const GeneratorSet& gens, const TreeMonomial& t) {
  int w = 0;
  for (auto x : t.code)
    if (x != TreeMonomial::kLeaf) w += gens.weight(x);
  return w;
}

int degree(const GeneratorSet& gens, const TreeMonomial& t) {
  int d = 0;
  for (auto x : t.code)
    if (x != TreeMonomial::kLeaf) d += gens.degree(x);
  return d;
}

std::size_t vertex_count(const TreeMonomial& t) {
  return t.code.size() - arity(t);
}

std::size_t leaf_count(const GeneratorSet& gens, const TreeMonomial& t) {
  std::size_t n = 0;
  for (auto x : t.code)
    if (x == TreeMonomial::kLeaf || gens.arity(x) == 0) ++n;
  return n;
}

int constant_weight(const GeneratorSet& gens, const TreeMonomial& t) {
  int w = 0;
  for (auto x : t.code)
    if (x != TreeMonomial::kLeaf && gens[x].constant) w += gens.weight(x);
  return w;
}

std::size_t slot_position(const TreeMonomial& t, std::size_t i) {
  if (i == 0) throw ArityError("slot indices start at 1");
  std::size_t seen = 0;
  for (std::size_t p = 0; p < t.code.size(); ++p)
    if (t.code[p] == TreeMonomial::kLeaf && ++seen == i) return p;
  throw ArityError("slot " + std::to_string(i) + " out of range for arity " +
                   std::to_string(seen));
}

std::string encode(const GeneratorSet& gens, const TreeMonomial& t) {
  std::string s;
  for (auto x : t.code) {
    if (!s.empty()) s += ' ';
    s += x == TreeMonomial::kLeaf ? std::string("_") : gens[x].name;
  }
  return s;
}

TreeMonomial decode(const GeneratorSet& gens, const std::string& text) {
  std::istringstream in(text);
  TreeMonomial t;
  t.code.clear();
  std::string tok;
  while (in >> tok) {
    if (tok == "_") {
      t.code.push_back(TreeMonomial::kLeaf);
    } else {
      const int id = gens.find(tok);
      if (id < 0) throw ParseError("unknown generator '" + tok + "'");
      t.code.push_back(id);
    }
  }
  validate(gens, t);
  return t;
}

namespace {

void functional_rec(const GeneratorSet& gens, const TreeMonomial& t,
                    std::size_t& pos, std::string& out) {
  const auto x = t.code[pos++];
  if (x == TreeMonomial::kLeaf) {
    out += '_';
    return;
  }
  out += gens[x].name;
  const int k = gens.arity(x);
  if (k == 0) return;
  out += '(';
  for (int c = 0; c < k; ++c) {
    if (c) out += ',';
    functional_rec(gens, t, pos, out);
  }
  out += ')';
}

bool odd(int d) { return (d & 1) != 0; }

}  // namespace

std::string to_functional(const GeneratorSet& gens, const TreeMonomial& t) {
  std::string out;
  std::size_t pos = 0;
  functional_rec(gens, t, pos, out);
  return out;
}

Composition partial_compose(const GeneratorSet& gens, const TreeMonomial& s,
                            std::size_t i, const TreeMonomial& t) {
  const std::size_t p = slot_position(s, i);
  int after = 0;
  for (std::size_t q = p + 1; q < s.code.size(); ++q)
    if (s.code[q] != TreeMonomial::kLeaf) after += gens.degree(s.code[q]);
  Composition c;
  c.sign = odd(after) && odd(degree(gens, t)) ? -1 : 1;
  c.result.code.clear();
  c.result.code.reserve(s.code.size() + t.code.size() - 1);
  c.result.code.insert(c.result.code.end(), s.code.begin(), s.code.begin() + static_cast<long>(p));
  c.result.code.insert(c.result.code.end(), t.code.begin(), t.code.end());
  c.result.code.insert(c.result.code.end(), s.code.begin() + static_cast<long>(p) + 1, s.code.end());
  return c;
}

TreeMonomial graft(const GeneratorSet& gens, int gen,
                   const std::vector<TreeMonomial>& children) {
  if (children.size() != static_cast<std::size_t>(gens.arity(gen)))
    throw ArityError("'" + gens[gen].name + "' expects " +
                     std::to_string(gens.arity(gen)) + " arguments, got " +
                     std::to_string(children.size()));
  TreeMonomial t;
  t.code.assign(1, gen);
  for (const auto& c : children) t.code.insert(t.code.end(), c.code.begin(), c.code.end());
  return t;
}

bool embed_at(const GeneratorSet& gens, const TreeMonomial& s,
              const TreeMonomial& t, std::size_t pos, Embedding* out) {
  const auto& sc = s.code;
  const auto& tc = t.code;
  if (pos >= sc.size() || tc.empty()) return false;
  if (tc[0] != TreeMonomial::kLeaf && sc[pos] != tc[0]) return false;
  if (out) {
    out->root = pos;
    out->vertex_map.clear();
    out->leaf_spans.clear();
  }
  std::size_t sp = pos;
  for (std::size_t tp = 0; tp < tc.size(); ++tp) {
    if (tc[tp] == TreeMonomial::kLeaf) {
      const std::size_t e = subtree_end(gens, s, sp);
      if (out) out->leaf_spans.emplace_back(sp, e);
      sp = e;
    } else {
      if (sp >= sc.size() || sc[sp] != tc[tp]) return false;
      if (out) out->vertex_map.push_back(sp);
      ++sp;
    }
  }
  if (out) out->end = sp;
  return true;
}

std::vector<Embedding> find_divisors(const GeneratorSet& gens,
                                     const TreeMonomial& s,
                                     const TreeMonomial& t) {
  std::vector<Embedding> out;
  if (t.is_identity()) {
    // The identity divides every monomial, once per vertex and slot.
    for (std::size_t p = 0; p < s.code.size(); ++p) {
      Embedding e;
      embed_at(gens, s, t, p, &e);
      out.push_back(std::move(e));
    }
    return out;
  }
  for (std::size_t p = 0; p < s.code.size(); ++p) {
    Embedding e;
    if (embed_at(gens, s, t, p, &e)) out.push_back(std::move(e));
  }
  return out;
}

bool divides(const GeneratorSet& gens, const TreeMonomial& t,
             const TreeMonomial& s) {
  if (t.code.size() > s.code.size() + arity(t)) return false;
  for (std::size_t p = 0; p < s.code.size(); ++p)
    if (embed_at(gens, s, t, p, nullptr)) return true;
  return false;
}

namespace {

// Parity of the sign taking the preorder of `x` to the order
// [before region, after region, divisor vertices, hanging vertices].
bool canonical_parity(const GeneratorSet& gens, const TreeMonomial& x,
                      std::size_t root, std::size_t end,
                      const std::vector<bool>& in_divisor) {
  bool region = false, after = false, inner = false, hanging_before = false;
  for (std::size_t p = root; p < end; ++p) {
    const auto v = x.code[p];
    if (v == TreeMonomial::kLeaf) continue;
    const bool o = odd(gens.degree(v));
    region ^= o;
    if (in_divisor[p - root]) {
      if (o && hanging_before) inner = !inner;
    } else {
      hanging_before ^= o;
    }
  }
  for (std::size_t p = end; p < x.code.size(); ++p)
    if (x.code[p] != TreeMonomial::kLeaf) after ^= odd(gens.degree(x.code[p]));
  return (region && after) != inner;
}

}  // namespace

Composition replace_embedded(const GeneratorSet& gens, const TreeMonomial& s,
                             const Embedding& e, const TreeMonomial& t_new) {
  if (arity(t_new) != e.leaf_spans.size())
    throw ArityError("replacement has arity " + std::to_string(arity(t_new)) +
                     ", embedded divisor has arity " +
                     std::to_string(e.leaf_spans.size()));
  std::vector<bool> old_mask(e.end - e.root, false);
  for (auto p : e.vertex_map) old_mask[p - e.root] = true;

  Composition c;
  auto& out = c.result.code;
  out.clear();
  out.reserve(s.code.size() + t_new.code.size());
  out.insert(out.end(), s.code.begin(), s.code.begin() + static_cast<long>(e.root));
  std::vector<bool> new_mask;
  std::size_t leaf = 0;
  for (auto tok : t_new.code) {
    if (tok == TreeMonomial::kLeaf) {
      const auto [b, en] = e.leaf_spans[leaf++];
      out.insert(out.end(), s.code.begin() + static_cast<long>(b),
                 s.code.begin() + static_cast<long>(en));
      new_mask.insert(new_mask.end(), en - b, false);
    } else {
      out.push_back(tok);
      new_mask.push_back(true);
    }
  }
  const std::size_t new_end = out.size();
  out.insert(out.end(), s.code.begin() + static_cast<long>(e.end), s.code.end());
  const bool p_old = canonical_parity(gens, s, e.root, e.end, old_mask);
  const bool p_new = canonical_parity(gens, c.result, e.root, new_end, new_mask);
  c.sign = p_old != p_new ? -1 : 1;
  return c;
}

bool check_graded_associativity(const GeneratorSet& gens,
                                const TreeMonomial& alpha,
                                const TreeMonomial& beta,
                                const TreeMonomial& gamma, std::size_t i,
                                std::size_t j) {
  const std::size_t n = arity(alpha);
  const std::size_t m = arity(beta);
  const std::size_t r = arity(gamma);
  if (i < 1 || i > n || j < 1 || j > n + m - 1)
    throw ArityError("invalid slots for graded associativity");
  const auto ab = partial_compose(gens, alpha, i, beta);
  const auto lhs = partial_compose(gens, ab.result, j, gamma);
  const int lhs_sign = ab.sign * lhs.sign;
  const int swap =
      odd(degree(gens, beta)) && odd(degree(gens, gamma)) ? -1 : 1;
  int rhs_sign;
  TreeMonomial rhs;
  if (j + 1 <= i) {
    const auto ag = partial_compose(gens, alpha, j, gamma);
    const auto x = partial_compose(gens, ag.result, i + r - 1, beta);
    rhs_sign = swap * ag.sign * x.sign;
    rhs = x.result;
  } else if (j <= i + m - 1) {
    const auto bg = partial_compose(gens, beta, j - i + 1, gamma);
    const auto x = partial_compose(gens, alpha, i, bg.result);
    rhs_sign = bg.sign * x.sign;
    rhs = x.result;
  } else {
    const auto ag = partial_compose(gens, alpha, j - m + 1, gamma);
    const auto x = partial_compose(gens, ag.result, i, beta);
    rhs_sign = swap * ag.sign * x.sign;
    rhs = x.result;
  }
  return rhs == lhs.result && rhs_sign == lhs_sign;
}

namespace {

class TreeEnumerator {
 public:
  TreeEnumerator(const GeneratorSet& gens,
                 const std::function<bool(const TreeMonomial&)>& root_ok)
      : gens_(gens), root_ok_(root_ok) {}

  const std::vector<TreeMonomial>& exact(std::size_t a, int w) {
    const auto key = std::make_pair(a, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<TreeMonomial> out;
    if (w == 0) {
      if (a == 1) out.push_back(TreeMonomial::identity());
    } else {
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const int gw = gens_.weight(static_cast<int>(g));
        if (gw > w) continue;
        std::vector<std::int32_t> code{static_cast<std::int32_t>(g)};
        children(static_cast<int>(g), gens_.arity(static_cast<int>(g)), a,
                 w - gw, code, out);
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void children(int gen, int left, std::size_t a, int w,
                std::vector<std::int32_t>& code,
                std::vector<TreeMonomial>& out) {
    if (left == 0) {
      if (a != 0 || w != 0) return;
      TreeMonomial t;
      t.code = code;
      if (!root_ok_ || root_ok_(t)) out.push_back(std::move(t));
      return;
    }
    for (std::size_t ca = 0; ca <= a; ++ca) {
      for (int cw = 0; cw <= w; ++cw) {
        // std::map keeps references valid while exact() inserts.
        const std::vector<TreeMonomial>& sub = exact(ca, cw);
        for (const auto& c : sub) {
          const std::size_t mark = code.size();
          code.insert(code.end(), c.code.begin(), c.code.end());
          children(gen, left - 1, a - ca, w - cw, code, out);
          code.resize(mark);
        }
      }
    }
  }

  const GeneratorSet& gens_;
  const std::function<bool(const TreeMonomial&)>& root_ok_;
  std::map<std::pair<std::size_t, int>, std::vector<TreeMonomial>> memo_;
};

}  // namespace

std::vector<TreeMonomial> enumerate_trees(
    const GeneratorSet& gens, std::size_t arity, int max_weight,
    const std::function<bool(const TreeMonomial&)>& root_ok) {
  TreeEnumerator en(gens, root_ok);
  std::vector<TreeMonomial> out;
  for (int w = 0; w <= max_weight; ++w) {
    const auto& part = en.exact(arity, w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace kgb
