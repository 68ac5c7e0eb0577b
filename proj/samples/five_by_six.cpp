// Builds the 5x6 block scheme, checks it, and prints a few decodings.

#include <cstdio>

#include "qlc/qlc.hpp"

int main() {
  const qlc::BlockSpec spec = qlc::custom_block(qlc::five_by_six_matrix(), 2);
  const qlc::Protocol p = qlc::expand_blocks(spec, 2);
  const auto report = qlc::verify_protocol(p);
  const auto rate = p.rate_point();
  std::printf("k=%d n=%d ell=%d  rate (%.4g, %.4g)  verified=%s over %llu vectors\n", p.k(),
              p.n(), p.ell(), rate.nu, rate.lambda, report.ok ? "yes" : "no",
              static_cast<unsigned long long>(report.checked));

  for (const char* text : {"+++++", "+-+-+", "---++"}) {
    const auto w = qlc::SignVector::parse(text);
    const auto& a = spec.decode(w);
    std::printf("%s =", text);
    for (std::size_t i = 0; i < a.support().size(); ++i)
      std::printf(" %+g*col%d", a.coefficients()[i], a.support()[i]);
    std::printf("\n");
  }
  return report.ok ? 0 : 1;
}
