#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qhv/diagram.hpp"
#include "qhv/linear_system.hpp"
#include "qhv/prime_field.hpp"
#include "qhv/verdict.hpp"

namespace qhv {

struct ClassifyConfig {
  PrimeFieldConfig field;
  std::size_t max_cols = 2000;  // larger matrices are refused (Inconclusive)
  /// Off forces the computational stages even where an axiom would settle it.
  bool use_axioms = true;
  bool use_reduction = true;
  bool use_rank = true;
  /// Also accept "at most nine points of multiplicity >= 2" as an axiom.
  bool simple_points_axiom = false;
};

/// Standard form, negative multiplicity rules, axioms, reduction chain on
/// (bar d+1), enlargement, rank. `dim` of the result is projective.
Verdict classify(const LinearSystem& system, const ClassifyConfig& cfg = {});

/// Reduction, enlargement and rank stages for V(D;M); `dim` is the vector
/// space dimension.
Verdict classify_space(const Diagram& d, const std::vector<std::int64_t>& mults,
                       const ClassifyConfig& cfg = {});

/// L(d-1; M) when vdim of it is >= -1: certifying that one non-special
/// certifies L non-special as well.
std::optional<LinearSystem> dim_lower_bound_step(const LinearSystem& system);

/// Lifts a certificate for L(d-1; M) to L(d; M).
Verdict certify_by_degree_drop(const LinearSystem& system, const Verdict& lower);

/// Converts a verdict on V((bar d+1); M) into one on L(d; M).
Verdict space_to_system(const LinearSystem& system, const Verdict& space);

}  // namespace qhv
