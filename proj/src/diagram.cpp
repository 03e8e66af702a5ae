#include "qhv/diagram.hpp"

#include <numeric>
#include <string>

#include "qhv/error.hpp"

namespace qhv {

std::int64_t Diagram::cells() const {
  return std::accumulate(layers.begin(), layers.end(), std::int64_t{0});
}

Diagram make_diagram(std::vector<std::int64_t> layers) {
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const auto c = layers[j];
    if (c < 0 || c > static_cast<std::int64_t>(j + 1))
      throw Error(ErrorCode::InvalidLayer, "layer " + std::to_string(j + 1) + " has size " +
                                               std::to_string(c));
  }
  while (!layers.empty() && layers.back() == 0) layers.pop_back();
  return Diagram{std::move(layers)};
}

Diagram bar_diagram(std::int64_t a, const std::vector<std::int64_t>& tail) {
  if (a < 0) throw Error(ErrorCode::InvalidLayer, "negative bar prefix");
  std::vector<std::int64_t> layers(static_cast<std::size_t>(a));
  std::iota(layers.begin(), layers.end(), std::int64_t{1});
  layers.insert(layers.end(), tail.begin(), tail.end());
  return make_diagram(std::move(layers));
}

Diagram triangle(std::int64_t a) { return bar_diagram(a, {}); }

std::int64_t staircase_prefix(const Diagram& d) {
  std::int64_t a = 0;
  while (a < static_cast<std::int64_t>(d.layers.size()) && d.layers[a] == a + 1) ++a;
  return a;
}

bool subset(const Diagram& d, const Diagram& bigger) {
  for (std::size_t j = 0; j < d.layers.size(); ++j) {
    const auto other = j < bigger.layers.size() ? bigger.layers[j] : 0;
    if (d.layers[j] > other) return false;
  }
  return true;
}

std::vector<Monomial> monomials(const Diagram& d) {
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(d.cells()));
  for (std::size_t j = 0; j < d.layers.size(); ++j)
    for (int b = 0; b < d.layers[j]; ++b) out.push_back({static_cast<int>(j) - b, b});
  return out;
}

}  // namespace qhv
