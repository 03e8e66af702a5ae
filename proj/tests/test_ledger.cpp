#include <gtest/gtest.h>

#include <set>

#include "qhv/error.hpp"
#include "qhv/ledger.hpp"
#include "qhv/notation.hpp"

using namespace qhv;

namespace {

const std::vector<LedgerEntry>& ledger() {
  static const auto entries = load_ledger(QHV_LEDGER_PATH);
  return entries;
}

const LedgerEntry& entry(const std::string& id) {
  for (const auto& e : ledger())
    if (e.id == id) return e;
  throw std::runtime_error("no entry " + id);
}

// One cell of the "cases to be considered separately" table:
// L(m+k; m, t^r) for k in ks, r in rs. Open ranges are closed at the window.
struct Cell {
  std::int64_t t;
  std::vector<std::int64_t> ks;
  std::vector<std::int64_t> rs;
};

std::vector<std::int64_t> span(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (auto x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

constexpr std::int64_t kMMax = 20, kKMax = 40, kRMax = 30;

std::vector<Cell> remaining_cases() {
  return {
      {7, span(17, kKMax), {9, 10, 11}},
      {7, {14, 15, 16}, {9, 10}},
      {7, {12, 13}, {9}},
      {7, {11}, {9, 10, 11}},
      {7, {10}, {9, 10}},
      {7, {9}, span(9, 13)},
      {7, span(0, 8), span(9, kRMax)},
      {8, span(20, kKMax), span(9, 12)},
      {8, {12, 15, 16, 17}, {9, 10}},
      {8, {11, 18, 19}, {9, 10, 11}},
      {8, {13, 14}, {9}},
      {8, {10}, span(9, 17)},
      {8, span(0, 9), span(9, kRMax)},
      {9, span(23, kKMax), span(9, 12)},
      {9, {13, 14, 19, 20, 21, 22}, span(9, 11)},
      {9, {16, 17, 18}, {9, 10}},
      {9, {15}, {9}},
      {9, {12}, span(9, 13)},
      {9, {11}, span(9, 21)},
      {9, span(0, 10), span(9, kRMax)},
      {10, span(25, kKMax), span(9, 12)},
      {10, {15, 16, 17, 22, 23, 24}, span(9, 11)},
      {10, {19, 20, 21}, {9, 10}},
      {10, {18}, {9}},
      {10, {14}, span(9, 12)},
      {10, {13}, span(9, 15)},
      {10, {12}, span(9, 23)},
      {10, span(0, 11), span(9, kRMax)},
  };
}

}  // namespace

TEST(LedgerFile, LoadsWithUniqueIds) {
  const auto& es = ledger();
  EXPECT_GE(es.size(), 100u);
  std::set<std::string> ids;
  for (const auto& e : es) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_FALSE(e.anchor.empty()) << e.id;
    EXPECT_FALSE(e.script.empty()) << e.id;
  }
}

TEST(LedgerFile, EveryMethodIsPresent) {
  std::set<std::string> methods;
  for (const auto& e : ledger()) methods.insert(e.method);
  for (const char* m :
       {"GLUE", "DOUBLE_GLUE", "GLUE_CREMONA", "DOUBLE_GLUE_CREMONA", "GLUE_CREMONAS",
        "DOUBLE_GLUE_CREMONAS", "GLUE_CREMONA_GLUE_CREMONA", "CREMONA_EVEN_GLUE",
        "CREMONA_EVEN_MULTI_GLUE", "CREMONA_EVEN_GLUE_CREMONAS", "CREMONA_EVEN_MULTI_GLUE_CREMONAS",
        "CREMONA_ODD_GLUE_CREMONAS", "CREMONA_ODD_MULTI_GLUE_CREMONAS", "NEGATIVE_GLUE",
        "LOW_MULTS", "ADHOC", "DIRECT"})
    EXPECT_TRUE(methods.count(m)) << m;
}

TEST(LedgerCoverage, EveryRemainingCaseHasAnEntry) {
  LedgerRange range{12, kMMax, kKMax, kRMax};
  std::set<std::string> covered;
  for (const auto& e : ledger())
    for (const auto& inst : instantiate(e, range))
      if (!inst.skipped) covered.insert(format(canonical(inst.system)));
  std::size_t cells = 0;
  for (const auto& c : remaining_cases())
    for (auto k : c.ks)
      for (auto r : c.rs)
        for (std::int64_t m = 12; m <= kMMax; ++m) {
          LinearSystem s(m + k, std::vector<std::int64_t>{m});
          s.mults.insert(s.mults.end(), static_cast<std::size_t>(r), c.t);
          ++cells;
          EXPECT_TRUE(covered.count(format(canonical(s))))
              << format(s) << " (t=" << c.t << ", k=" << k << ", r=" << r << ")";
        }
  EXPECT_GT(cells, 10000u);
}

TEST(LedgerParse, RecordFields) {
  auto es = parse_ledger(
      "# comment\n"
      "x-1 | GLUE | glueing | L(m+k;m,7^r) | k>=22; r in {9,10}; skip m==13 | GLUE(4,7,15); CRST; "
      "EXPECT_STANDARD_NONSPECIAL | 1 [r==9] L(m+k;m,15,7^(r-4))\n");
  ASSERT_EQ(es.size(), 1u);
  const auto& e = es[0];
  EXPECT_EQ(e.id, "x-1");
  EXPECT_EQ(e.constraints.size(), 2u);
  EXPECT_EQ(e.skips.size(), 1u);
  ASSERT_EQ(e.script.size(), 3u);
  EXPECT_EQ(e.script[0].op, StepOp::Glue);
  EXPECT_EQ(e.script[0].args.size(), 3u);
  ASSERT_EQ(e.midpoints.size(), 1u);
  EXPECT_EQ(e.midpoints[0].step, 1);
  EXPECT_TRUE(e.midpoints[0].guard);
  EXPECT_EQ(e.line, 2);
  EXPECT_EQ(e.variables(), (std::set<std::string>{"k", "m", "r"}));
}

TEST(LedgerParse, Rejections) {
  auto bad = [](const char* text) {
    EXPECT_THROW(parse_ledger(text), Error) << text;
  };
  bad("a | B | c | L(1;1) | | RANK\n");                                  // six fields
  bad("a | B | c | L(1;1) | | FOO | \n");                                // unknown step
  bad("a | B | c | L(1;1) | | CRST | \n");                               // no terminal step
  bad("a | B | c | L(1;1) | | RANK; CRST | \n");                         // terminal not last
  bad("a | B | c | L(1;1) | | GLUE(1,2); RANK | \n");                    // arity
  bad("a | B | c | L(q;1) | | RANK | \n");                               // unknown variable
  bad("a | B | c | L(1;1) | | RANK | 3 L(1;1)\n");                       // midpoint range
  bad("a | B | c | L(1;1) | | RANK | \na | B | c | L(1;1) | | RANK | \n");  // duplicate id
  EXPECT_THROW(load_ledger("/nonexistent/ledger.txt"), Error);
}

TEST(LedgerPattern, InstantiatesExpressions) {
  auto p = parse_system_pattern("L(m+2*k-22; m+k-22, k-7, (k-15)^2, 7^(r-5))");
  Env env{{"m", 12}, {"k", 17}, {"r", 9}};
  EXPECT_EQ(p.instantiate(env), parse_system("L(24;7,10,2^2,7^4)"));
  env["r"] = 3;
  EXPECT_THROW(p.instantiate(env), Error);
}

TEST(LedgerInstantiate, RespectsConstraintsAndSkips) {
  LedgerRange range{12, 20, 60, 30};
  auto insts = instantiate(entry("cr-even-glue-crs-10-a"), range);
  ASSERT_EQ(insts.size(), 9u);
  std::size_t skipped = 0;
  for (const auto& i : insts) {
    EXPECT_EQ(i.env.at("k"), 19);
    EXPECT_EQ(i.env.at("r"), 10);
    if (i.skipped) {
      ++skipped;
      EXPECT_EQ(i.env.at("m"), 17);
    }
  }
  EXPECT_EQ(skipped, 1u);
  // concrete entries ignore the window
  EXPECT_EQ(instantiate(entry("direct-28-12-8"), LedgerRange{12, 12, 1, 1}).size(), 1u);
}

TEST(LedgerRun, GlueCremonaMidpoint) {
  // m = 12, k = 17, r = 9 passes through L(24;7,10,2,7^4)
  SmallSystemCache cache;
  Instance inst{{{"m", 12}, {"k", 17}, {"r", 9}}, parse_system("L(29;12,7^9)"), false};
  auto res = run_instance(entry("glue-cr-7"), inst, {}, cache);
  EXPECT_TRUE(res.passed) << res.failure;
  EXPECT_EQ(res.midpoints_checked, 1u);
  ASSERT_EQ(res.glues.size(), 1u);
  EXPECT_EQ(res.glues[0].vdim_after - res.glues[0].vdim_before, -(res.glues[0].vdim_small + 1));
}

TEST(LedgerRun, NegativeGlueIsEmpty) {
  SmallSystemCache cache;
  Instance inst{{}, parse_system("L(32;13,9^11)"), false};
  auto res = run_instance(entry("neg-glue-32-13-9"), inst, {}, cache);
  EXPECT_TRUE(res.passed) << res.failure;
  EXPECT_EQ(res.verdict.kind, VerdictKind::Empty);
  EXPECT_EQ(res.midpoints_checked, 2u);
}

TEST(LedgerRun, WrongMidpointFails) {
  auto es = parse_ledger("w | ADHOC | x | L(31;13,9^9) | | DEGREE_DROP; CRST; "
                         "EXPECT_STANDARD_NONSPECIAL | 2 L(26;9^3,8^7)\n");
  SmallSystemCache cache;
  Instance inst{{}, parse_system("L(31;13,9^9)"), false};
  auto res = run_instance(es[0], inst, {}, cache);
  EXPECT_FALSE(res.passed);
  EXPECT_NE(res.failure.find("expected"), std::string::npos);
}

TEST(LedgerRun, WrongVerdictFails) {
  auto es = parse_ledger("w | X | x | L(32;13,9^11) | | GLUE(4,9,18); CRST; EXPECT_MINUS_ONE |\n");
  SmallSystemCache cache;
  Instance inst{{}, parse_system("L(32;13,9^11)"), false};
  EXPECT_FALSE(run_instance(es[0], inst, {}, cache).passed);
}

TEST(LedgerRun, SmallWindowIsGreen) {
  LedgerRunOptions opts;
  opts.range = {12, 13, 40, 20};
  opts.jobs = 2;
  auto rep = verify_ledger(ledger(), opts);
  EXPECT_EQ(rep.failed, 0u);
  EXPECT_TRUE(rep.conflicts.empty());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.entries, ledger().size());
  for (const auto& r : rep.results)
    if (!r.passed && !r.skipped) ADD_FAILURE() << r.entry << " " << format(r.system) << ": " << r.failure;
}

TEST(LedgerRun, SelectByMethodOrId) {
  LedgerRunOptions opts;
  opts.range = {12, 12, 40, 20};
  opts.entry = "DIRECT";
  auto rep = verify_ledger(ledger(), opts);
  EXPECT_EQ(rep.entries, 16u);
  EXPECT_EQ(rep.passed, 16u);
  opts.entry = "adhoc-32-12-10";
  rep = verify_ledger(ledger(), opts);
  ASSERT_EQ(rep.results.size(), 1u);
  EXPECT_EQ(rep.results[0].verdict.kind, VerdictKind::Empty);
  opts.entry = "no-such-entry";
  EXPECT_THROW(verify_ledger(ledger(), opts), Error);
}
