#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qlc/approx.hpp"
#include "qlc/bounds.hpp"
#include "qlc/construct.hpp"
#include "qlc/covering.hpp"

namespace qlc {

// Rate points of the shipped exact constructions.
inline std::vector<LabeledPoint> construction_points() {
  std::vector<LabeledPoint> out;
  // The parity scheme's rate point (1 + 1/k, (floor(k/2) + 1)/k) tends to (1, 1/2).
  out.push_back({"trivial parity (limit)", {1.0, 0.5}});
  out.push_back({"block 5x6", custom_block(five_by_six_matrix(), 2).rate_point()});
  for (int k0 : {3, 4})
    out.push_back({"nonsystematic k0=" + std::to_string(k0),
                   nonsystematic_block(k0).rate_point()});
  out.push_back({"covering repetition k0=5",
                 covering_code_block(CoveringCode::repetition(5)).rate_point()});
  return out;
}

// Rate points of the approximate schemes, labelled with their epsilon.
inline std::vector<LabeledPoint> approximation_points(double eps = 0.1, int blocks = 10) {
  std::vector<LabeledPoint> out;
  const auto label = [](const std::string& name, double e) {
    return name + " eps=" + format_number(e);
  };
  for (int k0 : {5, 7}) {
    const CoveringCode rep = CoveringCode::repetition(k0);
    for (int b = 1; b < rep.radius(); ++b) {
      const auto a = approx_covering(rep, b);
      out.push_back({label("approx covering k0=" + std::to_string(k0) + " b=" +
                               std::to_string(b),
                           a.epsilon_bound),
                     a.protocol.rate_point()});
    }
    const auto c = approx_covering_codeonly(rep);
    out.push_back({label("code only k0=" + std::to_string(k0), c.epsilon_bound),
                   c.protocol.rate_point()});
  }
  const auto d = discard_blocks(custom_block(five_by_six_matrix(), 2), eps, blocks);
  out.push_back({label("discard 5x6", d.epsilon_bound), d.protocol.rate_point()});
  return out;
}

struct RegionOptions {
  std::vector<double> grid = nu_grid(1.0, 3.0, 0.01);
  std::vector<int> block_sizes = {4, 5, 6};
  bool include_approx = false;
};

// Curves and points for the access-redundancy region plot.
inline std::string region_csv(const RegionOptions& opt) {
  std::vector<BoundCurve> curves{cor1_curve(opt.grid), thm1_curve(opt.grid)};
  for (int k0 : opt.block_sizes) curves.push_back(block_bound_curve(k0, 1 << k0));
  auto points = construction_points();
  if (opt.include_approx) {
    auto extra = approximation_points();
    points.insert(points.end(), extra.begin(), extra.end());
  }
  return region_export(curves, points);
}

}  // namespace qlc
