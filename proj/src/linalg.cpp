#include "kgb/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace kgb {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  if (a.is_zero() || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->index < j->index)) {
      out.push_back(std::move(*i++));
    } else if (i == y.end() || j->index < i->index) {
      out.push_back({j->index, a * j->value});
      ++j;
    } else {
      Scalar s = i->value + a * j->value;
      if (!s.is_zero()) out.push_back({i->index, std::move(s)});
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
  if (a.is_zero()) return {};
  SparseVec out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back({e.index, e.value * a});
  return out;
}

Scalar dot(const SparseVec& x, const SparseVec& y, Field f) {
  Scalar s = Scalar::zero(f);
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (i->index < j->index) {
      ++i;
    } else if (j->index < i->index) {
      ++j;
    } else {
      s += i->value * j->value;
      ++i;
      ++j;
    }
  }
  return s;
}

SparseVec to_sparse(const std::map<std::size_t, Scalar>& m) {
  SparseVec out;
  out.reserve(m.size());
  for (const auto& [k, v] : m)
    if (!v.is_zero()) out.push_back({k, v});
  return out;
}

void accumulate(std::map<std::size_t, Scalar>& acc, const Scalar& a,
                const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& e : x) {
    auto [it, inserted] = acc.try_emplace(e.index, a * e.value);
    if (!inserted) {
      it->second += a * e.value;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), cols_(cols), rows_(rows) {}

ExactMatrix ExactMatrix::identity(Field f, std::size_t n) {
  ExactMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i] = {{i, Scalar::one(f)}};
  return m;
}

ExactMatrix ExactMatrix::from_rows(Field f, std::size_t cols,
                                   std::vector<SparseVec> rows) {
  ExactMatrix m(f, 0, cols);
  m.rows_.reserve(rows.size());
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

ExactMatrix ExactMatrix::from_dense(Field f,
                                    const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(f, 0, cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("ragged dense matrix");
    SparseVec v;
    for (std::size_t j = 0; j < cols; ++j)
      if (r[j] != 0) v.push_back({j, Scalar(f, r[j])});
    m.append_row(std::move(v));
  }
  return m;
}

void ExactMatrix::set_row(std::size_t i, SparseVec v) {
  std::sort(v.begin(), v.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVec clean;
  clean.reserve(v.size());
  for (auto& e : v) {
    if (e.index >= cols_)
      throw DimensionError("column index " + std::to_string(e.index) +
                           " out of range " + std::to_string(cols_));
    if (!clean.empty() && clean.back().index == e.index) {
      clean.back().value += e.value;
      if (clean.back().value.is_zero()) clean.pop_back();
    } else if (!e.value.is_zero()) {
      clean.push_back(std::move(e));
    }
  }
  rows_.at(i) = std::move(clean);
}

void ExactMatrix::append_row(SparseVec v) {
  rows_.emplace_back();
  set_row(rows_.size() - 1, std::move(v));
}

Scalar ExactMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(
      r.begin(), r.end(), j,
      [](const Entry& e, std::size_t c) { return e.index < c; });
  if (it != r.end() && it->index == j) return it->value;
  return Scalar::zero(field_);
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  if (j >= cols_) throw DimensionError("column out of range");
  auto& r = rows_.at(i);
  auto it = std::lower_bound(
      r.begin(), r.end(), j,
      [](const Entry& e, std::size_t c) { return e.index < c; });
  if (it != r.end() && it->index == j) {
    if (value.is_zero())
      r.erase(it);
    else
      it->value = value;
  } else if (!value.is_zero()) {
    r.insert(it, {j, value});
  }
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const SparseVec& r) { return r.empty(); });
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(field_, cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& e : rows_[i]) t.rows_[e.index].push_back({i, e.value});
  return t;
}

SparseVec ExactMatrix::left_apply(const SparseVec& v) const {
  std::map<std::size_t, Scalar> acc;
  for (const auto& e : v) {
    if (e.index >= rows_.size())
      throw DimensionError("vector longer than matrix row count");
    accumulate(acc, e.value, rows_[e.index]);
  }
  return to_sparse(acc);
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matrix product shape mismatch: " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  ExactMatrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) c.rows_[i] = b.left_apply(a.rows_[i]);
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(Field f, std::size_t cols)
    : field_(f), cols_(cols), pivot_row_(cols, -1) {}

SparseVec EchelonBasis::reduce_leading(SparseVec v) const {
  while (!v.empty()) {
    const long r = pivot_row_[v.front().index];
    if (r < 0) break;
    const Scalar c = -v.front().value;
    axpy(v, c, rows_[static_cast<std::size_t>(r)]);
  }
  return v;
}

bool EchelonBasis::add(SparseVec v) {
  for (const auto& e : v)
    if (e.index >= cols_) throw DimensionError("vector longer than ambient");
  v = reduce_leading(std::move(v));
  if (v.empty()) return false;
  const Scalar inv = v.front().value.inverse();
  if (!inv.is_one()) v = scaled(v, inv);
  pivot_row_[v.front().index] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  // Eliminate pivot columns in increasing order; stored rows only touch
  // columns to the right of their pivot, so one left-to-right sweep suffices.
  std::size_t pos = 0;
  while (pos < v.size()) {
    const long r = pivot_row_[v[pos].index];
    if (r < 0) {
      ++pos;
      continue;
    }
    const std::size_t col = v[pos].index;
    const Scalar c = -v[pos].value;
    axpy(v, c, rows_[static_cast<std::size_t>(r)]);
    pos = static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), col,
                         [](const Entry& e, std::size_t k) { return e.index < k; }) -
        v.begin());
  }
  return v;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& r : rows_) p.push_back(r.front().index);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<SparseVec> EchelonBasis::rref() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows_[a].front().index < rows_[b].front().index;
  });
  // Back substitution from the rightmost pivot.
  std::vector<SparseVec> out(rows_.size());
  std::vector<long> done(cols_, -1);
  for (std::size_t k = order.size(); k-- > 0;) {
    SparseVec v = rows_[order[k]];
    std::size_t pos = 1;
    while (pos < v.size()) {
      const long r = done[v[pos].index];
      if (r < 0) {
        ++pos;
        continue;
      }
      const std::size_t col = v[pos].index;
      axpy(v, -v[pos].value, out[static_cast<std::size_t>(r)]);
      pos = static_cast<std::size_t>(
          std::lower_bound(v.begin(), v.end(), col,
                           [](const Entry& e, std::size_t c) { return e.index < c; }) -
          v.begin());
    }
    done[v.front().index] = static_cast<long>(k);
    out[k] = std::move(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

RowReduction finish(Field f, std::size_t cols, std::vector<SparseVec> rref) {
  RowReduction out;
  out.rank = rref.size();
  std::vector<bool> is_pivot(cols, false);
  for (const auto& r : rref) {
    out.pivots.push_back(r.front().index);
    is_pivot[r.front().index] = true;
  }
  ExactMatrix kernel(f, 0, cols);
  // For each free column j: x_j = 1, x_{pivot(r)} = -rref[r][j].
  std::vector<std::vector<Entry>> by_free(cols);
  for (std::size_t r = 0; r < rref.size(); ++r)
    for (const auto& e : rref[r])
      if (!is_pivot[e.index]) by_free[e.index].push_back({out.pivots[r], -e.value});
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    SparseVec v = std::move(by_free[j]);
    v.push_back({j, Scalar::one(f)});
    kernel.append_row(std::move(v));
  }
  out.row_basis = ExactMatrix::from_rows(f, cols, std::move(rref));
  out.kernel_basis = std::move(kernel);
  return out;
}

}  // namespace

RowReduction row_reduce_sparse(const ExactMatrix& m) {
  EchelonBasis eb(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) eb.add(m.row(i));
  return finish(m.field(), m.cols(), eb.rref());
}

RowReduction row_reduce_dense(const ExactMatrix& m) {
  const Field f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Scalar>> a(rows,
                                     std::vector<Scalar>(cols, Scalar::zero(f)));
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& e : m.row(i)) a[i][e.index] = e.value;

  // Gauss-Jordan: lowest column with a nonzero entry, then lowest row.
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[next]);
    const Scalar inv = a[next][c].inverse();
    for (std::size_t j = c; j < cols; ++j) a[next][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == next || a[i][c].is_zero()) continue;
      const Scalar factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[next][j].is_zero()) a[i][j] -= factor * a[next][j];
    }
    ++next;
  }
  std::vector<SparseVec> rref;
  for (std::size_t i = 0; i < next; ++i) {
    SparseVec v;
    for (std::size_t j = 0; j < cols; ++j)
      if (!a[i][j].is_zero()) v.push_back({j, a[i][j]});
    rref.push_back(std::move(v));
  }
  return finish(f, cols, std::move(rref));
}

RowReduction row_reduce(const ExactMatrix& m) {
  return m.cols() < 64 ? row_reduce_dense(m) : row_reduce_sparse(m);
}

namespace {

std::size_t echelon_rank(Field f, std::size_t cols, const std::vector<SparseVec>& rows) {
  EchelonBasis eb(f, cols);
  for (const auto& r : rows) eb.add(r);
  return eb.rank();
}

// Rank of a block, reducing along its shorter side.
std::size_t block_rank(Field f, std::size_t cols, std::vector<SparseVec> rows) {
  if (rows.size() >= cols) return echelon_rank(f, cols, rows);
  std::vector<SparseVec> t(cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) t[e.index].push_back({i, e.value});
  return echelon_rank(f, rows.size(), t);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  if (m.cols() < 64) return row_reduce_dense(m).rank;
  // Columns linked by a common row form one block; blocks are ranked apart.
  std::vector<std::size_t> parent(m.cols());
  for (std::size_t j = 0; j < parent.size(); ++j) parent[j] = j;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    for (std::size_t k = 1; k < r.size(); ++k) {
      const auto a = find_root(parent, r[0].index), b = find_root(parent, r[k].index);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<long> block_of(m.cols(), -1);
  std::vector<std::size_t> local(m.cols());
  std::vector<std::size_t> width;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto root = find_root(parent, j);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<long>(width.size());
      width.push_back(0);
    }
    block_of[j] = block_of[root];
    local[j] = width[static_cast<std::size_t>(block_of[j])]++;
  }
  std::vector<std::vector<SparseVec>> blocks(width.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    if (r.empty()) continue;
    SparseVec v;
    v.reserve(r.size());
    for (const auto& e : r) v.push_back({local[e.index], e.value});
    blocks[static_cast<std::size_t>(block_of[r[0].index])].push_back(std::move(v));
  }
  std::size_t total = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (!blocks[b].empty()) total += block_rank(m.field(), width[b], std::move(blocks[b]));
  return total;
}

ExactMatrix annihilator(const ExactMatrix& subspace, std::size_t ambient_dim) {
  if (subspace.cols() != ambient_dim)
    throw DimensionError("annihilator: rows have length " +
                         std::to_string(subspace.cols()) + ", ambient is " +
                         std::to_string(ambient_dim));
  return row_reduce(subspace).kernel_basis;
}

bool same_row_space(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return row_reduce(a).row_basis == row_reduce(b).row_basis;
}

}  // namespace kgb
