#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qlc/errors.hpp"
#include "qlc/protocol.hpp"

namespace qlc {

// Relative slack for bound comparisons, so that exact equalities at corner
// points classify as admissible.
inline constexpr double kBoundSlack = 1e-9;

// log2 C(n, k): exact when the binomial fits in 64 bits, log-gamma otherwise.
inline double log2_binomial(std::int64_t n, std::int64_t k) {
  detail::require(0 <= k && k <= n, "log2_binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  std::uint64_t value = 1;
  bool fits = true;
  for (std::int64_t i = 0; i < k && fits; ++i) {
    // value * (n - i) is divisible by (i + 1).
    unsigned __int128 wide = static_cast<unsigned __int128>(value) *
                             static_cast<std::uint64_t>(n - i);
    wide /= static_cast<std::uint64_t>(i + 1);
    if (wide > UINT64_MAX) fits = false;
    value = static_cast<std::uint64_t>(wide);
  }
  if (fits) return std::log2(static_cast<double>(value));
  const double ln = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0);
  return ln / std::log(2.0);
}

// H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0.
inline double binary_entropy(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {

inline bool at_least(double value, double target) {
  return value >= target - kBoundSlack * std::max(1.0, std::abs(target));
}

}  // namespace detail

// C(n, ell) 2^ell >= 2^k.
inline bool thm1_admissible(int k, int n, int ell) {
  detail::require(0 <= ell && ell <= n, "thm1_admissible: need 0 <= ell <= n");
  return detail::at_least(log2_binomial(n, ell) + ell, k);
}

// log2 of [1 + ln C(t, ell)] C(n, ell) / C(t, ell) 2^t.
inline double covering_design_rhs_log2(int n, int ell, int t) {
  detail::require(0 <= ell && ell <= t && t <= n,
                  "covering design bound needs ell <= t <= n");
  const double log2_ct = log2_binomial(t, ell);
  return std::log2(1.0 + log2_ct * std::log(2.0)) + log2_binomial(n, ell) -
         log2_ct + t;
}

inline bool thm2_holds_at(int k, int n, int ell, int t) {
  return detail::at_least(covering_design_rhs_log2(n, ell, t), k);
}

struct Thm2Result {
  bool admissible = false;
  int best_t = 0;         // t minimizing the right-hand side (smallest on ties)
  double best_rhs = 0.0;  // that minimum, in log2 units
};

// The covering-design bound must hold for every t in [ell, n]; the
// strongest test is the t minimizing the right-hand side. At t = ell it
// coincides with thm1_admissible.
inline Thm2Result thm2_admissible(int k, int n, int ell) {
  detail::require(0 <= ell && ell <= n, "thm2_admissible: need 0 <= ell <= n");
  Thm2Result out{false, ell, covering_design_rhs_log2(n, ell, ell)};
  for (int t = ell + 1; t <= n; ++t) {
    const double rhs = covering_design_rhs_log2(n, ell, t);
    if (rhs < out.best_rhs) {
      out.best_rhs = rhs;
      out.best_t = t;
    }
  }
  out.admissible = detail::at_least(out.best_rhs, k);
  return out;
}

// nu H(lambda/nu) - r lambda H(1/r) + r lambda.
inline double asymptotic_lhs(double nu, double lambda, double r) {
  detail::require(lambda > 0.0 && lambda <= nu,
                  "asymptotic_lhs: need 0 < lambda <= nu");
  detail::require(r >= 1.0, "asymptotic_lhs: need r >= 1");
  return nu * binary_entropy(lambda / nu) - r * lambda * binary_entropy(1.0 / r) +
         r * lambda;
}

namespace detail {

// 1 - H(p), accurate near p = 1/2 where H is flat.
inline double one_minus_entropy(double p) {
  const double u = 1.0 - 2.0 * p;  // p = (1 - u) / 2
  if (u == 0.0) return 0.0;
  if (p == 0.0 || p == 1.0) return 1.0;
  return ((1.0 + u) * std::log1p(u) + (1.0 - u) * std::log1p(-u)) / (2.0 * std::log(2.0));
}

}  // namespace detail

// Smallest lambda in (0, nu/2] with asymptotic_lhs(nu, lambda, r) >= 1,
// by bisection on lambda/nu to absolute tolerance 1e-12 in lambda.
// r = 1 is the asymptotic form of thm1, r = 2 the entropy curve cor1.
inline double asymptotic_lambda_min(double nu, double r) {
  detail::require(nu > 0.0, "asymptotic_lambda_min: nu must be positive");
  detail::require(r >= 1.0, "asymptotic_lambda_min: need r >= 1");
  // lhs >= 1 rearranged as nu (1 - H(p)) - nu p r (1 - H(1/r)) <= nu - 1,
  // which keeps precision where H(p) is close to 1.
  const double penalty = r * detail::one_minus_entropy(1.0 / r);
  auto passes = [&](double p) {
    return nu * detail::one_minus_entropy(p) - nu * p * penalty <= nu - 1.0;
  };
  detail::require(passes(0.5), "asymptotic_lambda_min: no lambda <= nu/2 satisfies the bound");
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200 && nu * (hi - lo) > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  return nu * hi;
}

// Smallest lambda with H(lambda/nu) >= 1/nu.
inline double cor1_lambda_min(double nu) {
  detail::require(nu >= 1.0, "cor1_lambda_min: need nu >= 1");
  return asymptotic_lambda_min(nu, 2.0);
}

struct BlockBoundResult {
  bool admissible = true;
  bool hypothesis_met = true;  // 2 ell0 <= n0
  double lhs = 0.0;            // 2 ell0 + log2 C(n0, ell0) - log2 C(2 ell0, ell0)
};

// 2 ell0 + log2 C(n0, ell0) - log2 C(2 ell0, ell0) >= k0, for 2 ell0 <= n0.
// Outside the hypothesis the point is reported as unconstrained.
inline BlockBoundResult block_bound_admissible(int k0, int n0, int ell0) {
  detail::require(k0 >= 1 && ell0 >= 1 && ell0 <= n0,
                  "block_bound_admissible: need 1 <= ell0 <= n0");
  if (2 * ell0 > n0) return {true, false, 0.0};
  const double lhs =
      2.0 * ell0 + log2_binomial(n0, ell0) - log2_binomial(2 * ell0, ell0);
  return {detail::at_least(lhs, k0), true, lhs};
}

struct BoundCurve {
  std::string label;
  std::vector<RatePoint> points;  // sorted by nu
};

inline std::vector<double> nu_grid(double lo, double hi, double step) {
  detail::require(step > 0.0 && hi >= lo, "grid needs step > 0 and max >= min");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

// Parses "MIN:MAX:STEP".
inline std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':')
    throw FormatError("grid must be MIN:MAX:STEP, got '" + spec + "'");
  std::string rest;
  if (in >> rest) throw FormatError("trailing characters in grid '" + spec + "'");
  return nu_grid(lo, hi, step);
}

inline BoundCurve cor1_curve(const std::vector<double>& grid) {
  BoundCurve out{"cor1", {}};
  for (double nu : grid) out.points.push_back({nu, cor1_lambda_min(nu)});
  return out;
}

// Asymptotic form of thm1: nu H(lambda/nu) + lambda >= 1.
inline BoundCurve thm1_curve(const std::vector<double>& grid) {
  BoundCurve out{"thm1", {}};
  for (double nu : grid) out.points.push_back({nu, asymptotic_lambda_min(nu, 1.0)});
  return out;
}

// Finite-k evaluation of the covering-design bound: for n = round(nu k),
// the smallest ell passing thm2_admissible, reported as ell / k.
inline BoundCurve thm2_curve(int k, const std::vector<double>& grid) {
  detail::require(k >= 1, "thm2_curve: k must be positive");
  BoundCurve out{"thm2 k=" + std::to_string(k), {}};
  for (double nu : grid) {
    const int n = static_cast<int>(std::lround(nu * k));
    detail::require(n >= 1, "thm2_curve: nu * k must round to at least 1");
    for (int ell = 0; ell <= n; ++ell)
      if (thm2_admissible(k, n, ell).admissible) {
        out.points.push_back({nu, static_cast<double>(ell) / k});
        break;
      }
  }
  return out;
}

// For each ell0 in 1..floor(k0/2), the smallest n0 <= n0_max meeting the
// block bound, as the point (n0/k0, ell0/k0).
inline BoundCurve block_bound_curve(int k0, int n0_max) {
  detail::require(k0 >= 1 && n0_max >= 1, "block_bound_curve: bad arguments");
  BoundCurve out{"block k0=" + std::to_string(k0), {}};
  for (int ell0 = 1; ell0 <= k0 / 2; ++ell0) {
    for (int n0 = 2 * ell0; n0 <= n0_max; ++n0) {
      if (block_bound_admissible(k0, n0, ell0).admissible) {
        out.points.push_back({static_cast<double>(n0) / k0,
                              static_cast<double>(ell0) / k0});
        break;
      }
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const RatePoint& a, const RatePoint& b) {
              return a.nu < b.nu || (a.nu == b.nu && a.lambda < b.lambda);
            });
  return out;
}

// ---------------------------------------------------------------------------
// Region CSV: "label,nu,lambda", 12 significant digits.

struct LabeledPoint {
  std::string label;
  RatePoint point;
};

struct RegionRow {
  std::string label;
  double nu = 0.0;
  double lambda = 0.0;
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string region_export(const std::vector<BoundCurve>& curves,
                                 const std::vector<LabeledPoint>& points) {
  auto check_label = [](const std::string& label) {
    detail::require(label.find_first_of(",\"\n\r") == std::string::npos,
                    "CSV labels must not contain commas, quotes or newlines");
  };
  std::string out = "label,nu,lambda\n";
  auto row = [&](const std::string& label, const RatePoint& p) {
    out += label + ',' + format_number(p.nu) + ',' + format_number(p.lambda) + '\n';
  };
  for (const auto& curve : curves) {
    check_label(curve.label);
    for (const auto& p : curve.points) row(curve.label, p);
  }
  for (const auto& p : points) {
    check_label(p.label);
    row(p.label, p.point);
  }
  return out;
}

inline std::vector<RegionRow> parse_region_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "label,nu,lambda")
    throw FormatError("region CSV must start with the header 'label,nu,lambda'");
  std::vector<RegionRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c2 = line.rfind(',');
    const auto c1 = c2 == std::string::npos ? c2 : line.rfind(',', c2 - 1);
    if (c1 == std::string::npos) throw FormatError("bad region CSV row: " + line);
    RegionRow row;
    row.label = line.substr(0, c1);
    try {
      std::size_t used = 0;
      const std::string nu = line.substr(c1 + 1, c2 - c1 - 1);
      const std::string lambda = line.substr(c2 + 1);
      row.nu = std::stod(nu, &used);
      if (used != nu.size()) throw FormatError("bad number");
      row.lambda = std::stod(lambda, &used);
      if (used != lambda.size()) throw FormatError("bad number");
    } catch (const std::exception&) {
      throw FormatError("bad number in region CSV row: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qlc
