#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhv/diagram.hpp"
#include "qhv/prime_field.hpp"
#include "qhv/verdict.hpp"

namespace qhv {

/// Dense row-major matrix of residues modulo `p`.
struct FpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t p = kMersenne31;
  std::vector<std::uint32_t> data;

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c, std::uint64_t prime)
      : rows(r), cols(c), p(prime), data(r * c, 0) {}

  std::uint32_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  static FpMatrix identity(std::size_t n, std::uint64_t prime);
};

struct FpPoint {
  std::uint32_t x;
  std::uint32_t y;
};

/// Interpolation matrix of V(D;M): rows are the conditions d^(a+b)f/dx^a dy^b
/// (p_j) = 0 for a + b < m_j, grouped by point; columns follow monomials(D).
FpMatrix build_matrix(const Diagram& d, const std::vector<std::int64_t>& mults,
                      const std::vector<FpPoint>& points, std::uint64_t p);

std::size_t rank(const FpMatrix& a);

/// rank of the first i+1 rows, for every i.
std::vector<std::size_t> prefix_ranks(const FpMatrix& a);

/// `count` points with pairwise distinct x and pairwise distinct y.
std::vector<FpPoint> sample_points(std::size_t count, const PrimeFieldConfig& cfg,
                                   const std::string& task_key, int attempt);

/// Stable per-task key: the canonical text of (D, M).
std::string space_key(const Diagram& d, const std::vector<std::int64_t>& mults);

std::string space_subject(const Diagram& d, const std::vector<std::int64_t>& mults);

/// One-sided certificate: full rank at random points proves V(D;M)
/// non-special with dim = cols - rank. Deficient rank only ever yields
/// Inconclusive.
Verdict certify_nonspecial_rank(const Diagram& d, const std::vector<std::int64_t>& mults,
                                const PrimeFieldConfig& cfg);

/// Certifies V(D; M[0..c)) for each c in `point_counts` from a single
/// matrix (the conditions of a prefix of points are a prefix of rows).
std::vector<Verdict> certify_nonspecial_rank_nested(const Diagram& d,
                                                    const std::vector<std::int64_t>& mults,
                                                    const std::vector<std::size_t>& point_counts,
                                                    const PrimeFieldConfig& cfg);

}  // namespace qhv
