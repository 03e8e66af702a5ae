#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhv/verdict.hpp"

namespace qhv {

using Int = std::int64_t;

/// L(d; m_1, ..., m_r): plane curves of degree d through r general points
/// with the given multiplicities. Degree and multiplicities may be negative.
struct LinearSystem {
  Int degree = 0;
  std::vector<Int> mults;

  LinearSystem() = default;
  LinearSystem(Int d, std::vector<Int> m) : degree(d), mults(std::move(m)) {}

  /// Exact (ordered) equality; use `equivalent` for the canonical one.
  bool operator==(const LinearSystem&) const = default;
};

/// C(m+1, 2) = m(m+1)/2, evaluated as a polynomial for every integer m.
constexpr Int conditions(Int m) { return m * (m + 1) / 2; }

/// Drops zero multiplicities and sorts the rest non-increasingly.
LinearSystem canonical(const LinearSystem& system);
bool equivalent(const LinearSystem& a, const LinearSystem& b);

Int vdim(const LinearSystem& system);
Int edim(const LinearSystem& system);

/// Quadratic transformation based at positions i, j, l (zero-based).
/// Missing positions are treated as zero multiplicities and materialized.
LinearSystem cremona_at(const LinearSystem& system, std::size_t i, std::size_t j,
                        std::size_t l);
/// Cremona transformation based at the first three points; never sorts.
LinearSystem cremona(const LinearSystem& system);

/// Stable non-increasing sort of the multiplicities.
LinearSystem sorted(const LinearSystem& system);

bool is_standard_form(const LinearSystem& system);

struct StandardForm {
  LinearSystem system;
  std::vector<TraceStep> chain;
};

/// Alternates sorting and Cremona transformations until the system is in
/// standard form or has negative degree.
StandardForm standard_form(const LinearSystem& system);

struct StripResult {
  LinearSystem system;
  /// k_j = -m_j for every multiplicity m_j <= -2 (multiple fixed components).
  std::vector<Int> fixed_components;
  std::size_t simple_fixed = 0;  // entries equal to -1
  TraceStep step;
};

/// Zeroes negative multiplicities of a standard-form system with d >= 0.
/// vdim(L) = vdim(L') + sum (k - k^2)/2 over the recorded components.
StripResult strip_negative_mults(const LinearSystem& system);

/// Non-specialty from the axiom base (at most nine points, or all
/// multiplicities at most 11). Requires standard form, d >= 0 and
/// non-negative multiplicities.
std::optional<Verdict> classify_by_axioms(const LinearSystem& system);

/// Like `classify_by_axioms` but also accepts systems whose points of
/// multiplicity >= 2 number at most nine (the rest being simple points).
std::optional<Verdict> classify_by_simple_points(const LinearSystem& system);

struct GlueResult {
  LinearSystem glued;
  LinearSystem small;  // L(k; m^s)
  Int vdim_before = 0;
  Int vdim_after = 0;
  Int vdim_small = 0;
  TraceStep step;
};

/// Replaces s points of multiplicity m by one point of multiplicity k+1,
/// given a certificate that L(k; m^s) is non-special. The new point takes
/// the position of the first replaced one.
GlueResult glue(const LinearSystem& system, std::size_t s, Int m, Int k,
                const Verdict& small_certificate);

/// Non-specialty of L from a split into L1 = L(k; m_1..m_s) and
/// L2 = L(d; m_{s+1}..m_r, k+1).
Verdict verify_split(const LinearSystem& whole, const LinearSystem& first,
                     const LinearSystem& second, const Verdict& first_certificate,
                     const Verdict& second_certificate);

}  // namespace qhv
