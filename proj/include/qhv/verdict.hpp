#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qhv {

enum class VerdictKind { NonSpecial, Empty, MinusOneSpecial, Inconclusive };

/// Imported results that certify non-specialty without computation.
enum class Axiom {
  MultLe11,      // all multiplicities bounded by 11
  PointsLe9,     // at most nine base points
  SimplePoints,  // general simple points impose independent conditions
};

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Axiom axiom);
std::optional<VerdictKind> verdict_kind_from_string(std::string_view text);

/// One replayable step of a derivation. `before`/`after` hold canonical
/// notation of the object the step acts on (system or diagram); `params`
/// is a comma separated key=value list.
struct TraceStep {
  std::string op;
  std::string params;
  std::string before;
  std::string after;

  bool operator==(const TraceStep&) const = default;
};

struct RankCertificate {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  int attempt = 0;  // 1-based

  bool operator==(const RankCertificate&) const = default;
};

/// Classification result. For linear systems `dim` is the projective
/// dimension (-1 for empty); for spaces V(D;M) it is the vector space
/// dimension.
struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<std::int64_t> dim;
  std::string subject;
  std::vector<TraceStep> trace;
  std::vector<Axiom> axioms;
  std::vector<std::string> methods;
  std::optional<RankCertificate> rank;
  std::vector<std::int64_t> fixed_components;
  std::vector<Verdict> children;
  std::string reason;

  /// Empty systems are never special, so both kinds certify non-specialty.
  bool non_special() const {
    return kind == VerdictKind::NonSpecial || kind == VerdictKind::Empty;
  }
  bool conclusive() const { return kind != VerdictKind::Inconclusive; }

  void add_method(std::string_view method);
  void add_axiom(Axiom axiom);
};

Verdict inconclusive(std::string subject, std::string reason);

}  // namespace qhv
