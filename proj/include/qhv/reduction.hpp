#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qhv/diagram.hpp"

namespace qhv {

struct ReductionStep {
  std::int64_t m = 0;
  std::vector<std::int64_t> v;  // subtracted from the last m layers, first to last
  Diagram result;
};

/// One m-reduction of D. Returns nothing when D is not m-reducible; throws
/// TooShort when D has fewer than m layers.
std::optional<ReductionStep> reduce_m(const Diagram& d, std::int64_t m);

/// Vector space dimension count #D - sum C(m+1, 2).
std::int64_t vdim_space(const Diagram& d, const std::vector<std::int64_t>& mults);

/// floor(#D / C(m+1, 2)).
std::int64_t p_of(const Diagram& d, std::int64_t m);

struct ReductionTrace {
  Diagram initial;
  std::vector<ReductionStep> steps;
  std::vector<std::int64_t> residual_mults;  // not consumed, in input order

  const Diagram& final_diagram() const {
    return steps.empty() ? initial : steps.back().result;
  }
  /// Every condition consumed: V(D;M) is non-special of dimension #final.
  bool certifies() const { return residual_mults.empty(); }
  /// The chain emptied the diagram, so V(D;M) = 0 whatever is left over.
  bool reaches_empty() const { return final_diagram().empty(); }
};

/// Reduces by each multiplicity in the given order and stops at the first
/// failure. Zero multiplicities are skipped.
ReductionTrace reduce_chain(const Diagram& d, const std::vector<std::int64_t>& mults);

struct EnlargeCertificate {
  Diagram enlarged;
  ReductionTrace trace;
};

/// Searches the minimal triangles containing D for one whose reduction chain
/// by `mults` ends in the empty diagram, which certifies V(D;M) = 0.
std::optional<EnlargeCertificate> try_empty_by_enlarge(const Diagram& d,
                                                       const std::vector<std::int64_t>& mults);

}  // namespace qhv
