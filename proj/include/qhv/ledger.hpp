#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhv/classify.hpp"
#include "qhv/expression.hpp"
#include "qhv/linear_system.hpp"
#include "qhv/verdict.hpp"

namespace qhv {

/// L(expr; item, ...) where an item is `expr` or `expr^count`.
struct SystemPattern {
  struct Item {
    Expr mult;
    std::optional<Expr> count;
  };
  Expr degree;
  std::vector<Item> items;
  std::string text;

  /// Throws OutOfRange when a repeat count evaluates negative.
  LinearSystem instantiate(const Env& env) const;
  std::set<std::string> variables() const;
};

SystemPattern parse_system_pattern(std::string_view text);

enum class StepOp {
  Glue,                      // GLUE(s, m, new): s points of mult m -> one of mult new
  Cremona,                   // at the first three points
  CremonaOn,                 // CREMONA_ON(x, y, z): first points with these mults
  CremonaPairs,              // CREMONA_PAIRS(t): point 0 with pairs of t-points
  Crst,                      // standard form
  DegreeDrop,                // L(d;M) -> L(d-1;M)
  KnownIf,                   // KNOWN_IF(cond): settle by axioms and stop
  ReduceChain,               // reduction and enlargement only
  Rank,                      // rank only
  LowMults,                  // CrSt, few big points, simple points axiom
  ExpectStandardNonSpecial,  // CrSt and negative-multiplicity rules end in an axiom case
  ExpectEmpty,
  ExpectMinusOne,
};

std::string_view to_string(StepOp op);

struct ScriptStep {
  StepOp op = StepOp::Crst;
  std::vector<Expr> args;
  std::string text;
};

/// Expected system after the given (1-based) script step.
struct Midpoint {
  int step = 0;
  std::optional<Expr> guard;
  SystemPattern system;
};

struct LedgerEntry {
  std::string id;
  std::string method;
  std::string anchor;
  SystemPattern pattern;
  std::vector<Expr> constraints;
  std::vector<Expr> skips;  // instances matching any of these are flagged, not run
  std::vector<ScriptStep> script;
  std::vector<Midpoint> midpoints;
  int line = 0;

  /// Variables of the pattern; empty for a concrete system.
  std::set<std::string> variables() const { return pattern.variables(); }
};

/// One record per non-comment line:
///   id | method | anchor | pattern | constraints | script | midpoints
/// List fields are ';'-separated (at bracket depth 0).
std::vector<LedgerEntry> parse_ledger(std::string_view text);
std::vector<LedgerEntry> load_ledger(const std::string& path);

struct LedgerRange {
  std::int64_t m_min = 12;
  std::int64_t m_max = 20;
  std::int64_t k_max = 60;
  std::int64_t r_max = 30;
};

struct Instance {
  Env env;
  LinearSystem system;
  bool skipped = false;
};

/// Enumerates m, k, r over the range (only those used by the pattern) and
/// keeps assignments satisfying every constraint. Concrete entries yield
/// exactly one instance regardless of the range.
std::vector<Instance> instantiate(const LedgerEntry& entry, const LedgerRange& range);

struct GlueRecord {
  LinearSystem before;
  LinearSystem after;
  LinearSystem small;
  std::int64_t vdim_before = 0;
  std::int64_t vdim_after = 0;
  std::int64_t vdim_small = 0;
};

struct InstanceResult {
  std::string entry;
  std::string method;
  Env env;
  LinearSystem system;
  bool skipped = false;
  bool passed = false;
  std::string failure;
  Verdict verdict;  // for `system`
  std::vector<GlueRecord> glues;
  std::size_t midpoints_checked = 0;
};

/// Certificates for the small systems used by glueing, shared across
/// instances and threads.
class SmallSystemCache {
 public:
  Verdict certify(const LinearSystem& small, const ClassifyConfig& cfg);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Verdict> certs_;
};

InstanceResult run_instance(const LedgerEntry& entry, const Instance& instance,
                            const ClassifyConfig& cfg, SmallSystemCache& cache);

struct LedgerRunOptions {
  LedgerRange range;
  std::string entry;  // id or method name; empty runs everything
  int jobs = 1;
};

struct LedgerReport {
  std::size_t entries = 0;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::vector<InstanceResult> results;
  /// Systems reached by two instances with different verdict kinds.
  std::vector<std::string> conflicts;

  bool ok() const { return failed == 0 && conflicts.empty(); }
};

LedgerReport verify_ledger(const std::vector<LedgerEntry>& entries, const LedgerRunOptions& opts,
                           const ClassifyConfig& cfg = {});

}  // namespace qhv
