#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhv/classify.hpp"
#include "qhv/diagram.hpp"

namespace qhv {

/// k > 0: diagrams (bar a, a^k, a_1, ..., a_{m-1}), a >= a_1 >= ... >= 0.
/// k = 0: diagrams (bar a, a_1, ..., a_{m-1}), a >= a_1 - 1 >= ... >=
///        a_{m-1} - (m-1), 0 <= a_j <= a + j.
struct FamilySpec {
  int m = 0;
  int a = 0;
  int k = 0;

  void validate() const;
};

/// Tails (a_1, ..., a_{m-1}) in lexicographic order.
void for_each_tail(const FamilySpec& spec,
                   const std::function<void(const std::vector<std::int64_t>&)>& visit);

Diagram family_diagram(const FamilySpec& spec, const std::vector<std::int64_t>& tail);

std::vector<Diagram> enumerate_family(const FamilySpec& spec);

/// Throwout test on consecutive pairs (s_i, s_{i+1}) of (a, a_1, ..., a_{m-1})
/// with s_{i+1} > 0:  s_i + (s_i - s_{i+1} + b' - a') m >= a', where the source
/// pair is (a, a) for k > 0 and (a + i, a + i + 1) for k = 0.
bool throwout_keep(const FamilySpec& spec, const std::vector<std::int64_t>& tail);
bool throwout_filter(const Diagram& d, const FamilySpec& spec);

struct FamilyCounts {
  std::uint64_t total = 0;
  std::uint64_t kept = 0;
  std::int64_t max_p_plus_1 = 0;
};

/// Counting pass without storing diagrams or building matrices.
FamilyCounts count_family(const FamilySpec& spec);

struct PassStats {
  int s = 0;
  std::uint64_t candidates = 0;
  std::uint64_t reduced = 0;      // diagrams with red_m^s defined
  std::uint64_t distinct = 0;     // distinct reduced diagrams certified
  std::uint64_t done = 0;         // originals settled at this level
};

struct InitialCasesReport {
  FamilySpec spec;
  int s = 2;
  std::uint64_t total_diagrams = 0;
  std::uint64_t filtered_out = 0;
  std::int64_t max_p_plus_1 = 0;
  bool ok = false;
  std::optional<Diagram> counterexample;
  std::string failure;
  std::vector<PassStats> passes;
  std::uint64_t rank_computations = 0;
  double seconds = 0;
};

InitialCasesReport run_initial_cases(const FamilySpec& spec, int s, int jobs,
                                     const ClassifyConfig& cfg = {});

}  // namespace qhv
