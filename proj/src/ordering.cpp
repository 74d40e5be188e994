#include "kgb/ordering.hpp"

#include <algorithm>

namespace kgb {

MonomialOrder::MonomialOrder(const GeneratorSet& gens,
                             const std::vector<std::string>& alphabet, Kind kind)
    : kind_(kind), rank_(gens.size(), 0) {
  std::vector<bool> listed(gens.size(), false);
  std::vector<int> ops, consts;
  for (const auto& name : alphabet) {
    const int id = gens.find(name);
    if (id < 0) throw Error("order mentions unknown generator '" + name + "'");
    if (listed[static_cast<std::size_t>(id)])
      throw Error("order lists '" + name + "' twice");
    listed[static_cast<std::size_t>(id)] = true;
    (gens[id].constant ? consts : ops).push_back(id);
  }
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!listed[g]) (gens[static_cast<int>(g)].constant ? consts : ops).push_back(static_cast<int>(g));
  std::vector<int> all = consts;
  all.insert(all.end(), ops.begin(), ops.end());
  for (std::size_t k = 0; k < all.size(); ++k) {
    rank_[static_cast<std::size_t>(all[k])] = static_cast<int>(all.size() - k);
    alphabet_.push_back(gens[all[k]].name);
  }
}

std::vector<std::vector<int>> leaf_word_sequence(const GeneratorSet& gens,
                                                 const TreeMonomial& t) {
  std::vector<std::vector<int>> words;
  std::vector<int> path;
  std::vector<int> remaining;
  auto finish_child = [&] {
    while (!remaining.empty()) {
      if (--remaining.back() > 0) return;
      remaining.pop_back();
      path.pop_back();
    }
  };
  for (auto tok : t.code) {
    if (tok == TreeMonomial::kLeaf) {
      words.push_back(path);
      finish_child();
    } else if (gens.arity(tok) == 0) {
      words.push_back(path);
      words.back().push_back(tok);
      finish_child();
    } else {
      path.push_back(tok);
      remaining.push_back(gens.arity(tok));
    }
  }
  return words;
}

OrderKey MonomialOrder::key(const GeneratorSet& gens,
                            const TreeMonomial& t) const {
  OrderKey k;
  k.reserve(2 * t.code.size() + 4);
  // Same traversal as leaf_word_sequence, emitting ranks directly.
  std::vector<int> path;
  std::vector<int> remaining;
  std::int32_t leaves = 0;
  if (kind_ == Kind::path_lex) k.push_back(0);
  auto emit = [&](int extra) {
    ++leaves;
    const std::size_t len = path.size() + (extra >= 0 ? 1 : 0);
    if (kind_ == Kind::path_lex) k.push_back(static_cast<std::int32_t>(len));
    for (int g : path) k.push_back(rank_[static_cast<std::size_t>(g)]);
    if (extra >= 0) k.push_back(rank_[static_cast<std::size_t>(extra)]);
    if (kind_ == Kind::pure_lex) k.push_back(0);
    while (!remaining.empty()) {
      if (--remaining.back() > 0) return;
      remaining.pop_back();
      path.pop_back();
    }
  };
  for (auto tok : t.code) {
    if (tok == TreeMonomial::kLeaf) {
      emit(-1);
    } else if (gens.arity(tok) == 0) {
      emit(tok);
    } else {
      path.push_back(tok);
      remaining.push_back(gens.arity(tok));
    }
  }
  if (kind_ == Kind::path_lex) k[0] = leaves;
  return k;
}

int MonomialOrder::compare(const GeneratorSet& gens, const TreeMonomial& a,
                           const TreeMonomial& b) const {
  if (a == b) return 0;
  const auto ka = key(gens, a);
  const auto kb = key(gens, b);
  if (ka < kb) return -1;
  if (kb < ka) return 1;
  return 0;
}

std::string MonomialOrder::name() const {
  return kind_ == Kind::path_lex ? "path-lex" : "pure-lex";
}

std::vector<TreeMonomial> enumerate_tree_monomials(const GeneratorSet& gens,
                                                   std::size_t arity,
                                                   int max_weight,
                                                   const MonomialOrder& o) {
  auto trees = enumerate_trees(gens, arity, max_weight);
  std::vector<std::pair<OrderKey, TreeMonomial>> keyed;
  keyed.reserve(trees.size());
  for (auto& t : trees) keyed.emplace_back(o.key(gens, t), std::move(t));
  std::sort(keyed.begin(), keyed.end());
  std::vector<TreeMonomial> out;
  out.reserve(keyed.size());
  for (auto& [k, t] : keyed) out.push_back(std::move(t));
  return out;
}

std::optional<AdmissibilityWitness> check_admissible(
    const GeneratorSet& gens, const MonomialComparator& cmp,
    const std::vector<std::pair<TreeMonomial, TreeMonomial>>& pairs,
    const std::vector<TreeMonomial>& contexts) {
  for (auto [a, b] : pairs) {
    if (arity(a) != arity(b)) continue;
    const int c = cmp(a, b);
    if (c == 0) continue;
    if (c > 0) std::swap(a, b);
    for (const auto& ctx : contexts) {
      for (std::size_t i = 1; i <= arity(ctx); ++i) {
        const auto x = partial_compose(gens, ctx, i, a).result;
        const auto y = partial_compose(gens, ctx, i, b).result;
        if (cmp(x, y) >= 0) return AdmissibilityWitness{a, b, ctx, i, true};
      }
      for (std::size_t i = 1; i <= arity(a); ++i) {
        const auto x = partial_compose(gens, a, i, ctx).result;
        const auto y = partial_compose(gens, b, i, ctx).result;
        if (cmp(x, y) >= 0) return AdmissibilityWitness{a, b, ctx, i, false};
      }
    }
  }
  return std::nullopt;
}

namespace {

void random_rec(const GeneratorSet& gens, int budget, std::mt19937_64& rng,
                std::vector<std::int32_t>& code) {
  std::vector<int> fits;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens.weight(static_cast<int>(g)) <= budget) fits.push_back(static_cast<int>(g));
  if (fits.empty() || std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    code.push_back(TreeMonomial::kLeaf);
    return;
  }
  const int g = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
  code.push_back(g);
  int left = budget - gens.weight(g);
  const int k = gens.arity(g);
  for (int c = 0; c < k; ++c) {
    const int share = c + 1 == k ? left : std::uniform_int_distribution<int>(0, left)(rng);
    const std::size_t mark = code.size();
    random_rec(gens, share, rng, code);
    int used = 0;
    for (std::size_t p = mark; p < code.size(); ++p)
      if (code[p] != TreeMonomial::kLeaf) used += gens.weight(code[p]);
    left -= used;
  }
}

}  // namespace

TreeMonomial random_tree(const GeneratorSet& gens, int max_weight,
                         std::mt19937_64& rng) {
  TreeMonomial t;
  t.code.clear();
  random_rec(gens, max_weight, rng, t.code);
  return t;
}

}  // namespace kgb
