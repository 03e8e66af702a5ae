#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qhv/error.hpp"
#include "qhv/fp_matrix.hpp"
#include "qhv/notation.hpp"
#include "qhv/prime_field.hpp"
#include "rational_oracle.hpp"

using namespace qhv;

namespace {

bool prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(PrimeField, ArithmeticMatchesWideIntegers) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {kMersenne31, std::uint64_t{1000003}, std::uint64_t{4294967291ULL}}) {
    PrimeField f(p);
    for (int i = 0; i < 2000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() % p);
      const auto b = static_cast<std::uint32_t>(rng() % p);
      EXPECT_EQ(f.add(a, b), (std::uint64_t{a} + b) % p);
      EXPECT_EQ(f.sub(a, b), (std::uint64_t{a} + p - b) % p);
      EXPECT_EQ(f.mul(a, b), static_cast<std::uint64_t>((unsigned __int128){a} * b % p));
      if (a != 0) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    }
    EXPECT_EQ(f.from_int(-1), p - 1);
    EXPECT_EQ(f.pow(3, 0), 1u);
  }
}

TEST(PrimeField, PrimalityAgainstTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), prime_by_trial(n)) << n;
  EXPECT_TRUE(is_prime(kMersenne31));
  EXPECT_FALSE(is_prime(kMersenne31 + 2));  // 2^31 + 1 = 3 * 715827883
  EXPECT_TRUE(is_prime(4294967291ULL));
}

TEST(PrimeField, ConfigValidation) {
  PrimeFieldConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.p = 1000;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.p = 2147483649ULL;  // composite
  EXPECT_THROW(cfg.validate(), Error);
  cfg.p = kMersenne31;
  cfg.attempts = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Rank, RandomIntegerMatricesAgainstRationalElimination) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    FpMatrix a(rows, cols, kMersenne31);
    PrimeField f(kMersenne31);
    std::vector<std::vector<oracle::Q>> q(rows, std::vector<oracle::Q>(cols));
    // low-rank products show up often enough to matter
    const bool product = trial % 3 == 0;
    const std::size_t inner = 1 + rng() % 3;
    std::vector<std::vector<std::int64_t>> u(rows, std::vector<std::int64_t>(inner)),
        w(inner, std::vector<std::int64_t>(cols));
    for (auto& r : u)
      for (auto& x : r) x = static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& r : w)
      for (auto& x : r) x = static_cast<std::int64_t>(rng() % 7) - 3;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::int64_t v = 0;
        if (product) {
          for (std::size_t t = 0; t < inner; ++t) v += u[i][t] * w[t][j];
        } else {
          v = static_cast<std::int64_t>(rng() % 11) - 5;
        }
        a.at(i, j) = f.from_int(v);
        q[i][j] = v;
      }
    EXPECT_EQ(rank(a), oracle::rank(q)) << "trial " << trial;
    auto pr = prefix_ranks(a);
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::vector<oracle::Q>> head(q.begin(), q.begin() + static_cast<long>(i + 1));
      EXPECT_EQ(pr[i], oracle::rank(head));
    }
  }
  EXPECT_EQ(rank(FpMatrix::identity(5, kMersenne31)), 5u);
  EXPECT_EQ(rank(FpMatrix(0, 3, kMersenne31)), 0u);
}

TEST(Matrix, InterpolationRankMatchesRationalOracle) {
  // small integer points: the matrix is the reduction of an integer matrix
  const std::vector<std::pair<std::int64_t, std::int64_t>> pts{{2, 5}, {-3, 1}, {7, -2}, {4, 9},
                                                               {-6, -5}};
  struct Case {
    const char* diagram;
    std::vector<std::int64_t> mults;
  };
  for (const auto& c : {Case{"(~5)", {2, 2, 2, 2, 2}}, Case{"(~6)", {3, 2, 2}},
                        Case{"(~4,3,2)", {2, 2, 1}}, Case{"(1,2,2,2)", {2, 1}}}) {
    const auto d = parse_diagram(c.diagram);
    std::vector<FpPoint> fp;
    PrimeField f(kMersenne31);
    for (std::size_t i = 0; i < c.mults.size(); ++i)
      fp.push_back({f.from_int(pts[i].first), f.from_int(pts[i].second)});
    const auto a = build_matrix(d, c.mults, fp, kMersenne31);
    EXPECT_EQ(a.cols, static_cast<std::size_t>(d.cells()));
    EXPECT_EQ(rank(a), oracle::rank(oracle::interpolation_matrix(d, c.mults, pts))) << c.diagram;
  }
}

TEST(Matrix, RejectsBadInput) {
  const auto d = parse_diagram("(~3)");
  EXPECT_THROW(build_matrix(d, {1, 1}, {{1, 2}}, kMersenne31), Error);
  EXPECT_THROW(build_matrix(d, {1, 1}, {{1, 2}, {1, 2}}, kMersenne31), Error);
  EXPECT_THROW(build_matrix(d, {-1}, {{1, 2}}, kMersenne31), Error);
}

TEST(Sampling, DeterministicAndDistinct) {
  PrimeFieldConfig cfg;
  auto a = sample_points(200, cfg, "task", 0);
  auto b = sample_points(200, cfg, "task", 0);
  auto c = sample_points(200, cfg, "task", 1);
  auto e = sample_points(200, cfg, "other", 0);
  ASSERT_EQ(a.size(), 200u);
  std::set<std::uint32_t> xs, ys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].y, b[i].y);
    EXPECT_LT(a[i].x, cfg.p);
    xs.insert(a[i].x);
    ys.insert(a[i].y);
  }
  EXPECT_EQ(xs.size(), 200u);
  EXPECT_EQ(ys.size(), 200u);
  EXPECT_NE(a[0].x, c[0].x);
  EXPECT_NE(a[0].x, e[0].x);
}

TEST(Certificate, ThirteenFiveFourNine) {
  PrimeFieldConfig cfg;
  std::vector<std::int64_t> m{5, 4, 4, 4, 4, 4, 4, 4, 4, 4};
  auto v = certify_nonspecial_rank(triangle(14), m, cfg);
  ASSERT_EQ(v.kind, VerdictKind::NonSpecial);
  ASSERT_TRUE(v.rank);
  EXPECT_EQ(v.rank->rows, 105u);
  EXPECT_EQ(v.rank->cols, 105u);
  EXPECT_EQ(v.rank->rank, 105u);
  EXPECT_EQ(v.rank->attempt, 1);
  EXPECT_EQ(v.dim, 0);
}

TEST(Certificate, DeficientRankIsNeverSpecial) {
  // conics through five double points: the double conic, one dimension too many
  PrimeFieldConfig cfg;
  auto v = certify_nonspecial_rank(triangle(5), {2, 2, 2, 2, 2}, cfg);
  EXPECT_EQ(v.kind, VerdictKind::Inconclusive);
  EXPECT_FALSE(v.rank);
}

TEST(Certificate, NestedPrefixes) {
  PrimeFieldConfig cfg;
  // all five points would be special: L(8;4^5) is four times a conic
  std::vector<std::int64_t> m{4, 4, 4, 4, 4};
  auto vs = certify_nonspecial_rank_nested(triangle(9), m, {1, 2, 4, 5}, cfg);
  ASSERT_EQ(vs.size(), 4u);
  EXPECT_EQ(vs[0].dim, 45 - 10);
  EXPECT_EQ(vs[1].dim, 45 - 20);
  EXPECT_EQ(vs[2].dim, 45 - 40);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(vs[i].non_special());
  EXPECT_FALSE(vs[3].conclusive());
  EXPECT_THROW(certify_nonspecial_rank_nested(triangle(9), m, {6}, cfg), Error);
}
