#include <gtest/gtest.h>

#include <random>

#include "qlc/construct.hpp"
#include "qlc/verify.hpp"
#include "support.hpp"

using qlc::Matrix;
using qlc::SignVector;

namespace {

void expect_rate(const qlc::RatePoint& p, double nu, double lambda) {
  EXPECT_DOUBLE_EQ(p.nu, nu);
  EXPECT_DOUBLE_EQ(p.lambda, lambda);
}

}  // namespace

TEST(Trivial, ParityOnlyForAllPlus) {
  const auto p = qlc::trivial_protocol(2);
  const auto a = p.decode(SignVector::parse("++"));
  EXPECT_EQ(a.support(), std::vector<int>{2});
  EXPECT_EQ(a.coefficients(), std::vector<double>{1.0});
}

TEST(Trivial, ParityPlusOneCorrection) {
  const auto p = qlc::trivial_protocol(3);
  const auto a = p.decode(SignVector::parse("++-"));
  EXPECT_EQ(a.support(), (std::vector<int>{2, 3}));
  EXPECT_EQ(a.coefficients(), (std::vector<double>{-2.0, 1.0}));
}

TEST(Trivial, WorstCaseAccess) {
  for (int k = 1; k <= 12; ++k) {
    const auto r = qlc::verify_protocol(qlc::trivial_protocol(k));
    EXPECT_TRUE(r.ok) << k;
    EXPECT_EQ(r.max_access, k / 2 + 1) << k;
    EXPECT_EQ(r.max_residual, 0.0);
  }
}

TEST(Trivial, RatePointApproachesOneHalf) {
  expect_rate(qlc::trivial_protocol(9).rate_point(), 10.0 / 9, 5.0 / 9);
  const auto far = qlc::trivial_block(20).rate_point();
  EXPECT_NEAR(far.nu, 1.0, 0.06);
  EXPECT_NEAR(far.lambda, 0.5, 0.06);
}

TEST(Nonsystematic, RatePoints) {
  for (int k0 = 1; k0 <= 8; ++k0) {
    const auto spec = qlc::nonsystematic_block(k0);
    EXPECT_EQ(spec.n0, 1 << (k0 - 1));
    EXPECT_EQ(spec.ell0, 1);
    expect_rate(spec.rate_point(), static_cast<double>(1 << (k0 - 1)) / k0, 1.0 / k0);
  }
  expect_rate(qlc::nonsystematic_block(3).rate_point(), 4.0 / 3, 1.0 / 3);
  expect_rate(qlc::nonsystematic_block(4).rate_point(), 2.0, 0.25);
  expect_rate(qlc::nonsystematic_block(2).rate_point(), 1.0, 0.5);
}

TEST(Nonsystematic, DecodesAsSignedColumn) {
  const auto spec = qlc::nonsystematic_block(2);
  for (const auto& w : qlc::enumerate_sign_vectors(2)) {
    const auto& a = spec.decode(w);
    ASSERT_EQ(a.access(), 1);
    EXPECT_EQ(std::abs(a.coefficients()[0]), 1.0);
  }
}

TEST(CoveringBlock, FullCubeHasAccessOne) {
  const auto spec = qlc::covering_code_block(qlc::CoveringCode::full_cube(3));
  EXPECT_EQ(spec.ell0, 1);
  for (const auto& w : qlc::enumerate_sign_vectors(3)) EXPECT_EQ(spec.decode(w).access(), 1);
  EXPECT_TRUE(qlc::verify_protocol(qlc::expand_blocks(spec, 1)).ok);
}

TEST(CoveringBlock, RepetitionPairs) {
  const auto five = qlc::covering_code_block(qlc::CoveringCode::repetition(5));
  expect_rate(five.rate_point(), 6.0 / 5, 3.0 / 5);
  const auto r5 = qlc::verify_protocol(qlc::expand_blocks(five, 1));
  EXPECT_TRUE(r5.ok);
  EXPECT_EQ(r5.max_access, 3);
  const auto three = qlc::covering_code_block(qlc::CoveringCode::repetition(3));
  expect_rate(three.rate_point(), 4.0 / 3, 2.0 / 3);
  EXPECT_TRUE(qlc::verify_protocol(qlc::expand_blocks(three, 1)).ok);
}

TEST(CoveringBlock, GreedyCodesVerify) {
  for (int k0 = 2; k0 <= 8; ++k0)
    for (int r = 0; r <= k0 / 2; ++r) {
      const auto code = qlc::greedy_covering_code(k0, r);
      const auto spec = qlc::covering_code_block(code);
      const auto report = qlc::verify_protocol(qlc::expand_blocks(spec, 1));
      EXPECT_TRUE(report.ok) << k0 << "," << r;
      EXPECT_LE(report.max_access, code.radius() + 1);
    }
}

TEST(CustomBlock, FiveBySixAtTwo) {
  const auto spec = qlc::custom_block(qlc::five_by_six_matrix(), 2);
  expect_rate(spec.rate_point(), 1.2, 0.4);
  const auto r = qlc::verify_protocol(qlc::expand_blocks(spec, 1));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.max_access, 2);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(CustomBlock, FiveBySixAtOneFailsWithWitness) {
  try {
    qlc::custom_block(qlc::five_by_six_matrix(), 1);
    FAIL() << "expected ContractError";
  } catch (const qlc::ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("w = "), std::string::npos);
  }
}

TEST(CustomBlock, Identity) {
  for (int k = 1; k <= 5; ++k) {
    const auto spec = qlc::custom_block(Matrix::identity(k), k);
    EXPECT_TRUE(qlc::verify_protocol(qlc::expand_blocks(spec, 1)).ok);
    if (k > 1) {
      EXPECT_THROW(qlc::custom_block(Matrix::identity(k), k - 1), qlc::ContractError);
    }
  }
}

TEST(CustomBlock, AgreesWithSubsetOracleOnRandomMatrices) {
  std::mt19937_64 rng(99);
  int successes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k0 = 2 + static_cast<int>(rng() % 3);
    const int n0 = k0 + static_cast<int>(rng() % 3);
    const auto d = oracle::random_dense(k0, n0, 2, rng);
    const int need = oracle::min_access(d);
    const Matrix M = to_matrix(d);
    if (need < 0) {
      EXPECT_THROW(qlc::min_access_for_M(M), qlc::ContractError);
      continue;
    }
    EXPECT_EQ(qlc::min_access_for_M(M), need);
    const auto spec = qlc::custom_block(M, need);
    EXPECT_TRUE(qlc::verify_protocol(qlc::expand_blocks(spec, 1)).ok);
    if (need > 1) {
      EXPECT_THROW(qlc::custom_block(M, need - 1), qlc::ContractError);
    }
    ++successes;
  }
  EXPECT_GT(successes, 10);
}

TEST(ExpandBlocks, SingleBlockMatchesSpec) {
  const auto spec = qlc::custom_block(qlc::five_by_six_matrix(), 2);
  const auto p = qlc::expand_blocks(spec, 1);
  EXPECT_EQ(p.encoder(), spec.M);
  for (const auto& w : qlc::enumerate_sign_vectors(5)) EXPECT_EQ(p.decode(w), spec.decode(w));
}

TEST(ExpandBlocks, NonsystematicThreeBlocks) {
  const auto p = qlc::expand_blocks(qlc::nonsystematic_block(2), 3);
  EXPECT_EQ(p.k(), 6);
  EXPECT_EQ(p.n(), 6);
  EXPECT_EQ(p.ell(), 3);
  EXPECT_TRUE(qlc::verify_protocol(p).ok);
}

TEST(ExpandBlocks, FiveBySixTwoBlocks) {
  const auto p = qlc::expand_blocks(qlc::custom_block(qlc::five_by_six_matrix(), 2), 2);
  EXPECT_EQ(p.k(), 10);
  EXPECT_EQ(p.n(), 12);
  EXPECT_EQ(p.ell(), 4);
  const auto r = qlc::verify_protocol(p);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.checked, 1024u);
}

TEST(ExpandBlocks, RatePointIndependentOfBlockCount) {
  const auto spec = qlc::nonsystematic_block(3);
  for (int m = 1; m <= 5; ++m) {
    const auto p = qlc::expand_blocks(spec, m);
    EXPECT_DOUBLE_EQ(p.rate_point().nu, spec.rate_point().nu);
    EXPECT_DOUBLE_EQ(p.rate_point().lambda, spec.rate_point().lambda);
  }
}
