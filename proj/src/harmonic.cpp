#include "sgspec/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgspec/errors.hpp"

namespace sg {

namespace {

struct HarmonicTables {
  std::array<RationalMatrix3, 3> exact;
  std::array<RationalMatrix3, 3> exact_inverse;
  std::array<Eigen::Matrix3d, 3> dbl;
  std::array<Eigen::Matrix3d, 3> dbl_inverse;

  HarmonicTables() {
    exact[0] = RationalMatrix3::scaled({{{5, 0, 0}, {2, 2, 1}, {2, 1, 2}}}, 5);
    exact[1] = RationalMatrix3::scaled({{{2, 2, 1}, {0, 5, 0}, {1, 2, 2}}}, 5);
    exact[2] = RationalMatrix3::scaled({{{2, 1, 2}, {1, 2, 2}, {0, 0, 5}}}, 5);
    for (std::size_t i = 0; i < 3; ++i) {
      exact_inverse[i] = exact[i].inverse();
      dbl[i] = exact[i].to_double();
      dbl_inverse[i] = exact_inverse[i].to_double();
    }
  }
};

const HarmonicTables& tables() {
  static const HarmonicTables t;
  return t;
}

std::size_t idx(Letter i) { return static_cast<std::size_t>(i.value()); }

}  // namespace

double InteriorValues::max_abs() const {
  double m = 0.0;
  for (const auto& v : values)
    if (v) m = std::max(m, std::abs(*v));
  return m;
}

const RationalMatrix3& harmonic_matrix_exact(Letter i) { return tables().exact[idx(i)]; }
const RationalMatrix3& harmonic_inverse_exact(Letter i) { return tables().exact_inverse[idx(i)]; }
const Eigen::Matrix3d& harmonic_matrix(Letter i) { return tables().dbl[idx(i)]; }
const Eigen::Matrix3d& harmonic_inverse(Letter i) { return tables().dbl_inverse[idx(i)]; }

RationalMatrix3 harmonic_word_matrix_exact(const Word& w) {
  RationalMatrix3 a = RationalMatrix3::identity();
  for (Letter l : w) a = harmonic_matrix_exact(l) * a;
  return a;
}

CellTriple extend_harmonic(const CellTriple& b, const Word& w) {
  CellTriple v = b;
  for (Letter l : w) v = harmonic_matrix(l) * v;
  return v;
}

LevelValues harmonic_values_on_level(const CellTriple& b, int m) {
  const auto graph = level_graph(m);
  LevelValues out{m, std::vector<double>(graph->vertex_count(), 0.0)};
  for (std::size_t c = 0; c < graph->cell_count(); ++c) {
    const CellTriple v = extend_harmonic(b, word_from_index(c, m));
    const auto& corners = graph->cell(c);
    for (std::size_t j = 0; j < 3; ++j) out.values[corners[j]] = v[static_cast<Eigen::Index>(j)];
  }
  return out;
}

InteriorValues graph_laplacian_apply(const LevelGraph& graph, const LevelValues& vals) {
  if (vals.level != graph.level() || vals.values.size() != graph.vertex_count())
    throw LevelMismatchError("values at level " + std::to_string(vals.level) + " (" +
                             std::to_string(vals.values.size()) + " entries) do not match graph level " +
                             std::to_string(graph.level()));
  InteriorValues out{graph.level(), std::vector<std::optional<double>>(graph.vertex_count())};
  for (std::size_t x = LevelGraph::boundary_count; x < graph.vertex_count(); ++x) {
    double s = 0.0;
    for (std::size_t y : graph.neighbors(x)) s += vals.values[y] - vals.values[x];
    out.values[x] = s;
  }
  return out;
}

double eigen_residual(const LevelGraph& graph, const LevelValues& vals, double lambda_m) {
  const InteriorValues lap = graph_laplacian_apply(graph, vals);
  double worst = 0.0;
  for (std::size_t x = LevelGraph::boundary_count; x < graph.vertex_count(); ++x)
    worst = std::max(worst, std::abs(*lap.values[x] + lambda_m * vals.values[x]));
  return worst;
}

LimitEstimate normal_derivative_limit(const VertexEvaluator& f, Letter i, int max_level) {
  if (max_level < 2) throw std::invalid_argument("normal derivative limit needs at least two levels");
  const Letter i1 = i.shifted(1);
  const Letter i2 = i.shifted(2);
  const double at_vertex = f(Word{}, i);

  LimitEstimate est;
  Word w;
  double scale = 1.0;
  for (int m = 1; m <= max_level; ++m) {
    w.push_back(i);
    scale *= 5.0 / 3.0;
    est.history.push_back(scale * (2.0 * at_vertex - f(w, i1) - f(w, i2)));
  }
  const auto n = est.history.size();
  est.value = est.history[n - 1];
  est.error = std::abs(est.history[n - 1] - est.history[n - 2]);
  if (n >= 3) {
    const double prev = std::abs(est.history[n - 2] - est.history[n - 3]);
    const double floor = 1e-9 * (1.0 + std::abs(est.value));
    est.converged = est.error <= std::max(prev, floor);
  }
  return est;
}

}  // namespace sg
