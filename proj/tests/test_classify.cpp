#include <gtest/gtest.h>

#include <algorithm>

#include "qhv/classify.hpp"
#include "qhv/error.hpp"
#include "qhv/notation.hpp"

using namespace qhv;

namespace {

LinearSystem L(const char* text) { return parse_system(text); }

bool has_method(const Verdict& v, const std::string& m) {
  return std::find(v.methods.begin(), v.methods.end(), m) != v.methods.end();
}

}  // namespace

TEST(Classify, AxiomSettlesThirteen) {
  auto v = classify(L("L(13;5,4^9)"));
  EXPECT_EQ(v.kind, VerdictKind::Empty);
  EXPECT_EQ(v.dim, -1);
  EXPECT_TRUE(has_method(v, "AXIOM"));
}

TEST(Classify, RankWithoutAxioms) {
  ClassifyConfig cfg;
  cfg.use_axioms = false;
  auto v = classify(L("L(13;5,4^9)"), cfg);
  EXPECT_EQ(v.kind, VerdictKind::Empty);
  ASSERT_TRUE(v.rank);
  EXPECT_EQ(v.rank->rank, 105u);
  EXPECT_EQ(v.rank->attempt, 1);
  EXPECT_TRUE(has_method(v, "RANK"));
}

TEST(Classify, ReductionCertifiesThirtyOne) {
  ClassifyConfig cfg;
  cfg.use_axioms = false;
  auto v = classify(L("L(31;12,9^9)"), cfg);
  EXPECT_EQ(v.kind, VerdictKind::NonSpecial);
  EXPECT_EQ(v.dim, vdim(L("L(31;12,9^9)")));
  EXPECT_TRUE(has_method(v, "REDUCTION"));
  EXPECT_FALSE(has_method(v, "RANK"));
  EXPECT_EQ(v.trace.back().after, "(~6,6^2,5^2,2)");
}

TEST(Classify, EnlargementEmpties) {
  auto v = classify(L("L(32;12,10^9)"));
  EXPECT_EQ(v.kind, VerdictKind::Empty);
  EXPECT_TRUE(has_method(v, "ENLARGE"));
  auto it = std::find_if(v.trace.begin(), v.trace.end(),
                         [](const TraceStep& s) { return s.op == "ENLARGE"; });
  ASSERT_NE(it, v.trace.end());
  EXPECT_EQ(it->after, "(~10)");
}

TEST(Classify, NegativeDegreeIsEmpty) {
  auto v = classify(L("L(-2;1)"));
  EXPECT_EQ(v.kind, VerdictKind::Empty);
  v = classify(L("L(4;3,3,3)"));
  EXPECT_EQ(v.kind, VerdictKind::Empty);
  EXPECT_TRUE(has_method(v, "CRST"));
}

TEST(Classify, DoubleConicIsMinusOneSpecial) {
  // L(4;2^5) = 2C: vdim -1 but not empty
  auto v = classify(L("L(4;2^5)"));
  EXPECT_EQ(v.kind, VerdictKind::MinusOneSpecial);
  EXPECT_EQ(v.dim, 0);
  EXPECT_EQ(v.fixed_components, std::vector<std::int64_t>{2});
}

TEST(Classify, SimpleFixedCurvesDoNotChangeTheVerdict) {
  // L(2;1^5) is the conic, -1 entries appear after Cremona and are dropped
  auto v = classify(L("L(2;1^5)"));
  EXPECT_EQ(v.kind, VerdictKind::NonSpecial);
  EXPECT_EQ(v.dim, 0);
  EXPECT_TRUE(v.fixed_components.empty());
}

TEST(Classify, MaxColsRefuses) {
  ClassifyConfig cfg;
  cfg.use_axioms = false;
  cfg.use_reduction = false;
  cfg.max_cols = 50;
  auto v = classify(L("L(13;5,4^9)"), cfg);
  EXPECT_EQ(v.kind, VerdictKind::Inconclusive);
  EXPECT_FALSE(v.reason.empty());
}

TEST(Classify, NothingEnabledIsInconclusive) {
  ClassifyConfig cfg;
  cfg.use_axioms = cfg.use_reduction = cfg.use_rank = false;
  EXPECT_EQ(classify(L("L(13;5,4^9)"), cfg).kind, VerdictKind::Inconclusive);
}

TEST(ClassifySpace, RejectsNegative) {
  EXPECT_THROW(classify_space(triangle(3), {-1}), Error);
}

TEST(SpaceToSystem, ShiftsDimension) {
  Verdict s;
  s.kind = VerdictKind::NonSpecial;
  s.dim = 1;
  auto v = space_to_system(L("L(1;1,1)"), s);
  EXPECT_EQ(v.kind, VerdictKind::NonSpecial);
  EXPECT_EQ(v.dim, 0);
  s.dim = 0;
  EXPECT_EQ(space_to_system(L("L(1;1,1,1)"), s).kind, VerdictKind::Empty);
  EXPECT_FALSE(space_to_system(L("L(1;1)"), inconclusive("x", "y")).conclusive());
}

TEST(DegreeDrop, LiftsCertificate) {
  // vdim L(30;13,9^9) = -1 and it is non-special, so L(31;13,9^9) is too
  auto whole = L("L(31;13,9^9)");
  auto lower = dim_lower_bound_step(whole);
  ASSERT_TRUE(lower);
  EXPECT_EQ(*lower, L("L(30;13,9^9)"));
  EXPECT_EQ(vdim(*lower), -1);
  auto lv = classify(*lower);
  ASSERT_TRUE(lv.non_special());
  auto v = certify_by_degree_drop(whole, lv);
  EXPECT_EQ(v.kind, VerdictKind::NonSpecial);
  EXPECT_EQ(v.dim, vdim(whole));
  EXPECT_THROW(certify_by_degree_drop(L("L(40;1)"), lv), Error);
  EXPECT_FALSE(dim_lower_bound_step(L("L(13;5,4^9)")));
}
