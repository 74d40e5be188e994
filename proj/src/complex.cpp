#include "kgb/complex.hpp"

namespace kgb {

ChainComplex::ChainComplex(Field f, std::vector<std::size_t> component_dims)
    : field(f), dims(std::move(component_dims)) {
  d.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i)
    d.emplace_back(f, dims[i], i == 0 ? 0 : dims[i - 1]);
}

void ChainComplex::set_differential(std::size_t degree, ExactMatrix m) {
  if (degree == 0 || degree >= dims.size())
    throw DimensionError("differential degree " + std::to_string(degree) +
                         " outside complex");
  if (m.rows() != dims[degree] || m.cols() != dims[degree - 1])
    throw DimensionError(
        "differential d_" + std::to_string(degree) + " has shape " +
        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
        ", expected " + std::to_string(dims[degree]) + "x" +
        std::to_string(dims[degree - 1]));
  d[degree] = std::move(m);
}

long ChainComplex::first_nonzero_square() const {
  for (std::size_t i = 1; i + 1 < dims.size(); ++i)
    if (!(d[i + 1] * d[i]).is_zero()) return static_cast<long>(i);
  return -1;
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    chi += (i % 2 ? -1 : 1) * static_cast<long>(dims[i]);
  return chi;
}

void WeightedComplex::set(std::size_t weight, ChainComplex c) {
  if (!(c.field == field_)) throw Error("complex over a different field");
  parts_.insert_or_assign(weight, std::move(c));
}

const ChainComplex& WeightedComplex::at(std::size_t weight) const {
  auto it = parts_.find(weight);
  if (it == parts_.end())
    throw Error("no component stored in weight " + std::to_string(weight));
  return it->second;
}

std::vector<std::size_t> WeightedComplex::weights() const {
  std::vector<std::size_t> w;
  for (const auto& [k, v] : parts_) w.push_back(k);
  return w;
}

std::vector<std::size_t> homology_dims(const ChainComplex& c,
                                       std::size_t weight) {
  const long bad = c.first_nonzero_square();
  if (bad >= 0)
    throw StructureError("d_" + std::to_string(bad) + " d_" +
                             std::to_string(bad + 1) + " != 0 in weight " +
                             std::to_string(weight),
                         weight, bad);
  const std::size_t n = c.dims.size();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t i = 1; i < n; ++i) ranks[i] = rank(c.d[i]);
  std::vector<std::size_t> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = c.dims[i] - ranks[i] - ranks[i + 1];
  return h;
}

std::vector<std::size_t> homology_dims(const WeightedComplex& c,
                                       std::size_t weight) {
  return homology_dims(c.at(weight), weight);
}

}  // namespace kgb
