#pragma once

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qlc/matrix.hpp"

inline qlc::Matrix to_matrix(const oracle::Dense& d) {
  return qlc::Matrix(d.rows, d.cols, std::vector<double>(d.a.begin(), d.a.end()));
}

inline oracle::Dense to_dense(const qlc::Matrix& m) {
  const auto e = m.entries();
  return {m.rows(), m.cols(), std::vector<long double>(e.begin(), e.end())};
}
