#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sgspec/address.hpp"
#include "sgspec/rational.hpp"

namespace sg {

/// Values at (F_w q_0, F_w q_1, F_w q_2) of some cell, or on V_0 itself.
using CellTriple = Eigen::Vector3d;

/// One value per vertex of LevelGraph(level), in graph vertex order.
struct LevelValues {
  int level = 0;
  std::vector<double> values;
};

/// Result of the graph Laplacian: boundary entries are absent.
struct InteriorValues {
  int level = 0;
  std::vector<std::optional<double>> values;

  double max_abs() const;
};

/// Harmonic extension matrix A_i, exact. A_i maps h|V_0 to h|F_i(V_0).
const RationalMatrix3& harmonic_matrix_exact(Letter i);
const RationalMatrix3& harmonic_inverse_exact(Letter i);
/// Floating-point copies of the exact matrices.
const Eigen::Matrix3d& harmonic_matrix(Letter i);
const Eigen::Matrix3d& harmonic_inverse(Letter i);

/// A_w = A_{w_m} ... A_{w_1}, exact. Throws ResourceError on integer overflow
/// (roughly |w| > 25).
RationalMatrix3 harmonic_word_matrix_exact(const Word& w);

/// A_w b: the values on F_w(V_0) of the harmonic function with boundary b.
CellTriple extend_harmonic(const CellTriple& b, const Word& w);

/// The harmonic function with boundary b restricted to V_m.
LevelValues harmonic_values_on_level(const CellTriple& b, int m);

/// (Delta_m u)(x) = sum_{y ~ x} (u(y) - u(x)) at interior vertices.
InteriorValues graph_laplacian_apply(const LevelGraph& graph, const LevelValues& vals);

/// max over interior x of |(Delta_m + lambda_m) u (x)|.
double eigen_residual(const LevelGraph& graph, const LevelValues& vals, double lambda_m);

/// f(F_w(q_j)).
using VertexEvaluator = std::function<double(const Word&, Letter)>;

struct LimitEstimate {
  double value = 0.0;
  /// |estimate(M) - estimate(M-1)|.
  double error = 0.0;
  bool converged = true;
  /// estimate(m) for m = 1..M.
  std::vector<double> history;
};

/// (5/3)^M (2 f(q_i) - f(F_i^M q_{i+1}) - f(F_i^M q_{i+2})). `converged` is
/// false when the last two increments grow instead of shrinking.
LimitEstimate normal_derivative_limit(const VertexEvaluator& f, Letter i, int max_level);

}  // namespace sg
