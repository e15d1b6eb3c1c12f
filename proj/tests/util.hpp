#pragma once

#include "hxray/common.hpp"

#include <random>

namespace testutil {

inline hxray::Vec random_vec(std::mt19937_64 &rng, int d, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  hxray::Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = nd(rng);
  return v;
}

inline hxray::Vec unit(std::mt19937_64 &rng, int d) { return random_vec(rng, d).normalized(); }

inline hxray::Vec vec(std::initializer_list<double> xs) {
  hxray::Vec v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace testutil
