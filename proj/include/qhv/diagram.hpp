#pragma once

#include <cstdint>
#include <vector>

namespace qhv {

/// Staircase support set. Layer j (1-based) holds the monomials
/// x^a y^b with a + b = j - 1 and b < layers[j-1]; validity is c_j <= j.
struct Diagram {
  std::vector<std::int64_t> layers;

  bool operator==(const Diagram&) const = default;
  auto operator<=>(const Diagram&) const = default;

  std::int64_t cells() const;
  std::size_t size() const { return layers.size(); }
  bool empty() const { return cells() == 0; }
};

/// Validates c_j in [0, j] and trims trailing zero layers.
Diagram make_diagram(std::vector<std::int64_t> layers);

/// (bar a, a_1, ..., a_k) = (1, 2, ..., a, a_1, ..., a_k).
Diagram bar_diagram(std::int64_t a, const std::vector<std::int64_t>& tail);

/// (bar a): support of all polynomials of degree < a.
Diagram triangle(std::int64_t a);

/// Length of the longest prefix of the form 1, 2, ..., a.
std::int64_t staircase_prefix(const Diagram& d);

/// Layerwise containment D <= D'.
bool subset(const Diagram& d, const Diagram& bigger);

/// Monomial exponents (a, b) of D, layer by layer.
struct Monomial {
  int a;
  int b;
};
std::vector<Monomial> monomials(const Diagram& d);

}  // namespace qhv
