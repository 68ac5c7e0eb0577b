// Acceptance suite: one test per criterion, one PASS/FAIL line per test.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "qlc/qlc.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool has_point(const qlc::BoundCurve& c, double nu, double lambda) {
  for (const auto& p : c.points)
    if (std::abs(p.nu - nu) < 1e-12 && std::abs(p.lambda - lambda) < 1e-12) return true;
  return false;
}

}  // namespace

TEST(Acceptance, C01_FiveBySixBlockVerifies) {
  const auto start = Clock::now();
  const qlc::Matrix M = qlc::five_by_six_matrix();
  EXPECT_EQ(qlc::min_access_for_M(M), 2);
  const auto spec = qlc::custom_block(M, 2);
  for (int m : {1, 2}) {
    const auto p = qlc::expand_blocks(spec, m);
    const auto r = qlc::verify_protocol(p);
    EXPECT_TRUE(r.ok) << "m=" << m;
    EXPECT_EQ(r.checked, std::uint64_t{1} << (5 * m));
    EXPECT_EQ(r.max_access, 2 * m);
    EXPECT_EQ(r.max_residual, 0.0);
    EXPECT_DOUBLE_EQ(p.rate_point().nu, 1.2);
    EXPECT_DOUBLE_EQ(p.rate_point().lambda, 0.4);
  }
  EXPECT_TRUE(qlc::SpanTester(M).exact());
  EXPECT_LT(seconds_since(start), 5.0);
}

TEST(Acceptance, C02_NonsystematicBlocks) {
  for (int k0 = 2; k0 <= 5; ++k0) {
    const auto spec = qlc::nonsystematic_block(k0);
    const auto r = qlc::verify_protocol(qlc::expand_blocks(spec, 1));
    EXPECT_TRUE(r.ok) << k0;
    EXPECT_EQ(r.max_access, 1) << k0;
    EXPECT_EQ(spec.rate_point().nu, static_cast<double>(1 << (k0 - 1)) / k0);
    EXPECT_EQ(spec.rate_point().lambda, 1.0 / k0);
  }
}

TEST(Acceptance, C03_RepetitionCoveringBlock) {
  const auto code = qlc::CoveringCode::repetition(5);
  ASSERT_EQ(code.radius(), 2);
  const auto spec = qlc::covering_code_block(code);
  const auto r = qlc::verify_protocol(qlc::expand_blocks(spec, 1));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.max_access, 3);
  EXPECT_DOUBLE_EQ(spec.rate_point().nu, 6.0 / 5);
  EXPECT_DOUBLE_EQ(spec.rate_point().lambda, 3.0 / 5);
}

TEST(Acceptance, C04_TrivialParity) {
  for (int k = 3; k <= 10; ++k) {
    const auto r = qlc::verify_protocol(qlc::trivial_protocol(k));
    EXPECT_TRUE(r.ok) << k;
    EXPECT_EQ(r.max_access, k / 2 + 1) << k;
  }
}

TEST(Acceptance, C05_CoveringDesignBoundDominates) {
  const auto start = Clock::now();
  int exceptions = 0, strict = 0, points = 0;
  for (int k = 20; k <= 60; ++k)
    for (int li = 1; li <= 10; ++li)
      for (int ni = 0; ni <= 15; ++ni) {
        const int ell = static_cast<int>(std::lround(0.05 * li * k));
        const int n = static_cast<int>(std::lround((1.0 + 0.1 * ni) * k));
        const bool t1 = qlc::thm1_admissible(k, n, ell);
        const bool t2 = qlc::thm2_admissible(k, n, ell).admissible;
        exceptions += t2 && !t1;
        strict += t1 && !t2;
        ++points;
      }
  std::printf("  grid points %d, thm2 without thm1 %d, thm1 without thm2 %d\n", points,
              exceptions, strict);
  EXPECT_EQ(exceptions, 0);
  EXPECT_GE(strict, 1);
  EXPECT_LT(seconds_since(start), 30.0);
}

TEST(Acceptance, C06_EntropyCurve) {
  EXPECT_NEAR(qlc::cor1_lambda_min(1.0), 0.5, 1e-9);
  double prev = qlc::cor1_lambda_min(1.0);
  for (int i = 1; i <= 400; ++i) {
    const double cur = qlc::cor1_lambda_min(1.0 + 0.01 * i);
    EXPECT_LT(cur, prev) << "nu=" << 1.0 + 0.01 * i;
    prev = cur;
  }
}

TEST(Acceptance, C07_BlockBoundCorner) {
  for (int k0 = 2; k0 <= 10; ++k0) {
    const auto r = qlc::block_bound_admissible(k0, 1 << (k0 - 1), 1);
    EXPECT_TRUE(r.admissible) << k0;
    EXPECT_EQ(r.lhs, static_cast<double>(k0)) << k0;
  }
  EXPECT_TRUE(qlc::block_bound_admissible(5, 6, 2).admissible);
  EXPECT_FALSE(qlc::block_bound_admissible(5, 6, 1).admissible);
  EXPECT_TRUE(has_point(qlc::block_bound_curve(5, 32), 1.2, 0.4));
}

TEST(Acceptance, C08_SubspaceCap) {
  int matrices = 0, violations = 0;
  std::uint64_t worst_ratio_num = 0, worst_ratio_den = 1;
  for (int k = 6; k <= 10; ++k)
    for (int ell = 1; ell <= 5; ++ell) {
      const auto r = qlc::subspace_cap_audit(k, ell, 20, 1000 + 10 * k + ell);
      matrices += r.trials;
      violations += r.violations;
      if (r.max_observed * worst_ratio_den > worst_ratio_num * r.bound) {
        worst_ratio_num = r.max_observed;
        worst_ratio_den = r.bound;
      }
    }
  std::printf("  matrices %d, largest count/2^ell %llu/%llu\n", matrices,
              static_cast<unsigned long long>(worst_ratio_num),
              static_cast<unsigned long long>(worst_ratio_den));
  EXPECT_EQ(matrices, 500);
  EXPECT_EQ(violations, 0);
}

TEST(Acceptance, C09_CoveringApproximationIsTight) {
  const auto rep = qlc::CoveringCode::repetition(5);
  const auto b1 = qlc::approx_covering(rep, 1);
  EXPECT_NEAR(b1.epsilon_bound, 0.6, 1e-12);
  EXPECT_NEAR(qlc::measure_epsilon_exhaustive(b1.protocol), 0.6, 1e-9);
  const auto code_only = qlc::approx_covering_codeonly(rep);
  EXPECT_NEAR(qlc::measure_epsilon_exhaustive(code_only.protocol), 0.96, 1e-9);
  const auto b0 = qlc::approx_covering(rep, 0);
  EXPECT_NEAR(qlc::measure_epsilon_exhaustive(b0.protocol), 0.0, 1e-12);
}

TEST(Acceptance, C10_DiscardingBeatsExactBound) {
  const auto a = qlc::discard_blocks(qlc::custom_block(qlc::five_by_six_matrix(), 2), 0.1, 10);
  const double eps = qlc::measure_epsilon(a.protocol);
  EXPECT_EQ(eps, 0.1);
  const auto rate = a.protocol.rate_point();
  EXPECT_NEAR(rate.nu, 1.08, 1e-12);
  EXPECT_NEAR(rate.lambda, 0.36, 1e-12);
  const double floor = qlc::cor1_lambda_min(rate.nu);
  std::printf("  (%.12g, %.12g) against exact-scheme bound %.12g\n", rate.nu, rate.lambda, floor);
  EXPECT_LT(rate.lambda, floor);
}

TEST(Acceptance, C11_Ksvd) {
  const auto start = Clock::now();
  qlc::KsvdOptions opt;
  opt.k = 6;
  opt.n = 12;
  opt.ell = 2;
  opt.seed = 7;
  const auto r = qlc::ksvd(opt);
  ASSERT_FALSE(r.stages.empty());
  for (const auto& s : r.stages) EXPECT_LE(s.after, s.before + 1e-9) << "iteration " << s.iteration;

  qlc::KsvdOptions half;
  half.k = 4;
  half.n = 8;
  half.ell = 1;
  const auto h = qlc::ksvd(half);
  EXPECT_NEAR(h.epsilon_measured, 0.0, 1e-12);
  EXPECT_LT(seconds_since(start), 60.0);
}

TEST(Acceptance, C12_GreedyCoveringDesigns) {
  int designs = 0;
  for (int n = 1; n <= 10; ++n)
    for (int t = 1; t <= std::min(6, n); ++t)
      for (int ell = 1; ell <= std::min(3, t); ++ell) {
        const auto d = qlc::greedy_covering_design(n, t, ell);
        EXPECT_TRUE(qlc::is_covering_design(d)) << n << "," << t << "," << ell;
        EXPECT_LE(static_cast<double>(d.size()), std::ceil(qlc::erdos_spencer_bound(n, t, ell)))
            << n << "," << t << "," << ell;
        ++designs;
      }
  std::printf("  designs checked %d\n", designs);
}

namespace {

const std::map<std::string, std::string> kDescriptions{
    {"C01_FiveBySixBlockVerifies", "5x6 block: min access 2, m=1,2 verify with zero residual"},
    {"C02_NonsystematicBlocks", "non-systematic k0=2..5: access 1, rate (2^(k0-1)/k0, 1/k0)"},
    {"C03_RepetitionCoveringBlock", "repetition covering block k0=5: access 3, rate (6/5, 3/5)"},
    {"C04_TrivialParity", "parity scheme k=3..10: access floor(k/2)+1"},
    {"C05_CoveringDesignBoundDominates", "covering-design bound implies counting bound, strictly"},
    {"C06_EntropyCurve", "entropy curve: 0.5 at nu=1, strictly decreasing on [1,5]"},
    {"C07_BlockBoundCorner", "block bound: equality corner, (5,6,2) in, (5,6,1) out"},
    {"C08_SubspaceCap", "500 random matrices: at most 2^ell sign vectors in span"},
    {"C09_CoveringApproximationIsTight", "covering approximation: 0.6, code-only 0.96, b=0 exact"},
    {"C10_DiscardingBeatsExactBound", "discarding: eps 0.1 at (1.08, 0.36), below exact bound"},
    {"C11_Ksvd", "K-SVD: monotone updates, exact at k=4 n=8 ell=1"},
    {"C12_GreedyCoveringDesigns", "greedy designs n<=10: valid, within the greedy bound"},
};

class CriterionPrinter : public ::testing::EmptyTestEventListener {
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const std::string name = info.name();
    const auto it = kDescriptions.find(name);
    const std::string number = name.substr(1, 2);
    std::printf("%s criterion %s: %s (%.3f s)\n", info.result()->Passed() ? "PASS" : "FAIL",
                number.c_str(), it == kDescriptions.end() ? name.c_str() : it->second.c_str(),
                static_cast<double>(info.result()->elapsed_time()) / 1000.0);
    std::fflush(stdout);
  }
};

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new CriterionPrinter);
  return RUN_ALL_TESTS();
}
