// Compares construction rate points against the exact-scheme lower bound.

#include <cstdio>

#include "qlc/qlc.hpp"

int main() {
  for (const auto& point : qlc::construction_points()) {
    const double floor = point.point.nu >= 1.0 ? qlc::cor1_lambda_min(point.point.nu) : 0.0;
    std::printf("%-28s nu=%.4f lambda=%.4f  bound=%.4f\n", point.label.c_str(), point.point.nu,
                point.point.lambda, floor);
  }
  for (int k0 = 3; k0 <= 8; ++k0) {
    const auto code = qlc::greedy_covering_code(k0, 1);
    const auto spec = qlc::covering_code_block(code);
    const auto rate = spec.rate_point();
    std::printf("greedy radius-1 code k0=%d: %zu words, rate (%.4f, %.4f)\n", k0, code.size(),
                rate.nu, rate.lambda);
  }
}
