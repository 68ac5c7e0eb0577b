// Worst-case error against rate for the approximate schemes.

#include <cstdio>

#include "qlc/qlc.hpp"

namespace {

void show(const char* name, const qlc::ApproxProtocol& a) {
  const auto rate = a.protocol.rate_point();
  std::printf("%-24s nu=%.4f lambda=%.4f eps_bound=%.4f eps_measured=%.4f\n", name, rate.nu,
              rate.lambda, a.epsilon_bound, qlc::measure_epsilon(a.protocol));
}

}  // namespace

int main() {
  const auto rep5 = qlc::CoveringCode::repetition(5);
  show("covering rep5 b=1", qlc::approx_covering(rep5, 1));
  show("code only rep5", qlc::approx_covering_codeonly(rep5));
  show("discard 5x6 eps=0.1", qlc::discard_blocks(qlc::custom_block(qlc::five_by_six_matrix(), 2), 0.1, 10));

  qlc::KsvdOptions opt;
  opt.k = 6;
  opt.n = 12;
  opt.ell = 2;
  opt.seed = 7;
  const auto learned = qlc::ksvd(opt);
  show("k-svd k=6 n=12 ell=2", learned.to_approx_protocol(opt.ell));
}
