#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qhv/fp_matrix.hpp"
#include "qhv/ledger.hpp"
#include "qhv/linear_system.hpp"
#include "qhv/notation.hpp"
#include "qhv/reduction.hpp"

using namespace qhv;

namespace {

// m-reduction straight from the set-based definition
std::optional<Diagram> reduce_by_definition(const Diagram& d, std::int64_t m) {
  std::set<std::int64_t> v;
  for (std::int64_t i = 1; i <= m; ++i) v.insert(i);
  std::vector<std::int64_t> layers = d.layers;
  const auto base = layers.size() - static_cast<std::size_t>(m);
  std::vector<std::int64_t> sub(static_cast<std::size_t>(m));
  for (std::int64_t j = m; j >= 1; --j) {
    const auto a = layers[base + static_cast<std::size_t>(j - 1)];
    const std::int64_t top = v.empty() ? 0 : *v.rbegin();
    const std::int64_t vj = (a < m && top >= a) ? a : top;
    sub[static_cast<std::size_t>(j - 1)] = vj;
    v.erase(vj);
  }
  if (!v.empty()) return std::nullopt;
  for (std::size_t j = 0; j < sub.size(); ++j) layers[base + j] -= sub[j];
  while (!layers.empty() && layers.back() == 0) layers.pop_back();
  return Diagram{layers};
}

Diagram random_diagram(std::mt19937_64& rng, std::size_t max_layers) {
  const auto n = 1 + rng() % max_layers;
  std::vector<std::int64_t> layers(n);
  for (std::size_t j = 0; j < n; ++j) layers[j] = static_cast<std::int64_t>(rng() % (j + 2));
  layers.back() = std::max<std::int64_t>(layers.back(), 1);
  return make_diagram(layers);
}

bool valid(const Diagram& d) {
  for (std::size_t j = 0; j < d.layers.size(); ++j)
    if (d.layers[j] < 0 || d.layers[j] > static_cast<std::int64_t>(j + 1)) return false;
  return d.layers.empty() || d.layers.back() > 0;
}

}  // namespace

TEST(Property, CremonaIsAnInvolutionAndKeepsVdim) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 10000; ++i) {
    LinearSystem s;
    s.degree = static_cast<std::int64_t>(rng() % 60);
    const auto n = 3 + rng() % 10;
    for (std::size_t j = 0; j < n; ++j) s.mults.push_back(static_cast<std::int64_t>(rng() % 25));
    const auto c = cremona(s);
    ASSERT_EQ(vdim(c), vdim(s)) << format(s);
    ASSERT_EQ(cremona(c), s) << format(s);
    const std::size_t a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
    std::size_t e = rng() % n;
    while (e == a || e == b) e = (e + 1) % n;
    const auto c2 = cremona_at(s, a, b, e);
    ASSERT_EQ(vdim(c2), vdim(s));
    ASSERT_EQ(cremona_at(c2, a, b, e), s);
  }
}

TEST(Property, ReductionMatchesDefinitionAndKeepsBookkeeping) {
  std::mt19937_64 rng(202);
  std::size_t reducible = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto d = random_diagram(rng, 16);
    const auto m = 1 + static_cast<std::int64_t>(rng() % d.layers.size());
    const auto got = reduce_m(d, m);
    const auto want = reduce_by_definition(d, m);
    ASSERT_EQ(got.has_value(), want.has_value()) << format(d) << " m=" << m;
    if (!got) continue;
    ++reducible;
    ASSERT_EQ(got->result, *want) << format(d) << " m=" << m;
    ASSERT_TRUE(valid(got->result)) << format(d);
    ASSERT_EQ(got->result.cells(), d.cells() - m * (m + 1) / 2);
    std::int64_t sum = 0;
    for (auto x : got->v) sum += x;
    ASSERT_EQ(sum, m * (m + 1) / 2);
  }
  EXPECT_GT(reducible, 1000u);
}

TEST(Property, LongTailsAreReducible) {
  // b_j >= b_{j+1} >= m on the touched layers
  for (std::int64_t m = 1; m <= 9; ++m)
    for (std::int64_t b = m; b <= m + 4; ++b) {
      std::vector<std::int64_t> tail(static_cast<std::size_t>(m), b);
      EXPECT_TRUE(reduce_m(bar_diagram(b, tail), m)) << m << " " << b;
    }
}

TEST(Property, ReductionAgreesWithRank) {
  std::mt19937_64 rng(303);
  PrimeFieldConfig cfg;
  std::size_t checked = 0, disagreements = 0;
  for (int trial = 0; checked < 250 && trial < 200000; ++trial) {
    const auto d = random_diagram(rng, 10);
    if (d.cells() > 60 || d.cells() == 0) continue;
    std::vector<std::int64_t> mults(1 + rng() % 5);
    for (auto& x : mults) x = 1 + static_cast<std::int64_t>(rng() % 4);
    const auto t = reduce_chain(d, mults);
    if (!t.certifies()) continue;
    ++checked;
    const auto pts = sample_points(mults.size(), cfg, "property-" + std::to_string(trial), 0);
    const auto a = build_matrix(d, mults, pts, cfg.p);
    const auto dim = static_cast<std::int64_t>(a.cols - rank(a));
    const auto expect = std::max<std::int64_t>(vdim_space(d, mults), 0);
    if (dim != expect || t.final_diagram().cells() != expect) {
      ++disagreements;
      ADD_FAILURE() << format(d) << " " << format_mults(mults) << ": rank dim " << dim
                    << ", reduction " << t.final_diagram().cells();
    }
  }
  EXPECT_GE(checked, 200u);
  EXPECT_EQ(disagreements, 0u);
}

TEST(Property, SubsetMonotonicity) {
  std::mt19937_64 rng(404);
  PrimeFieldConfig cfg;
  for (int i = 0; i < 100; ++i) {
    const auto d = random_diagram(rng, 9);
    std::vector<std::int64_t> bigger = d.layers;
    for (std::size_t j = 0; j < bigger.size(); ++j)
      bigger[j] = std::min<std::int64_t>(static_cast<std::int64_t>(j + 1), bigger[j] + rng() % 2);
    const auto e = make_diagram(bigger);
    ASSERT_TRUE(subset(d, e));
    std::vector<std::int64_t> mults(1 + rng() % 4);
    for (auto& x : mults) x = 1 + static_cast<std::int64_t>(rng() % 3);
    const auto pts = sample_points(mults.size(), cfg, "mono-" + std::to_string(i), 0);
    const auto a = build_matrix(d, mults, pts, cfg.p);
    const auto b = build_matrix(e, mults, pts, cfg.p);
    EXPECT_LE(a.cols - rank(a), b.cols - rank(b)) << format(d) << " in " << format(e);
  }
}

TEST(Property, GlueBookkeepingOnLedgerSteps) {
  const auto entries = load_ledger(QHV_LEDGER_PATH);
  LedgerRunOptions opts;
  opts.range = {12, 14, 40, 20};
  opts.jobs = 2;
  const auto rep = verify_ledger(entries, opts);
  std::size_t glues = 0;
  for (const auto& r : rep.results)
    for (const auto& g : r.glues) {
      ++glues;
      EXPECT_EQ(g.vdim_before, vdim(g.before));
      EXPECT_EQ(g.vdim_after, vdim(g.after));
      EXPECT_EQ(g.vdim_small, vdim(g.small));
      EXPECT_EQ(g.vdim_after, g.vdim_before - g.vdim_small - 1) << format(g.before);
      EXPECT_EQ(g.after.degree, g.before.degree);
      EXPECT_EQ(g.after.mults.size() + g.small.mults.size(), g.before.mults.size() + 1);
    }
  EXPECT_GT(glues, 500u);
}
