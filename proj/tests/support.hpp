#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace sgtest {

// Fixed seed so property runs are reproducible.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20241016u);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

template <class A, class B>
double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace sgtest
