#include "sgspec/decimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sgspec/errors.hpp"
#include "sgspec/special.hpp"

namespace sg {

namespace {

constexpr double singular_tol = 1e-10;
constexpr double junction_tol = 1e-10;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

double lambda_next(double prev, Branch b) {
  if (!std::isfinite(prev)) throw DomainError("eigenvalue is not finite");
  if (prev > 6.25)
    throw DomainError("no real successor for lambda = " + std::to_string(prev) + " (exceeds 25/4)");
  const double root = std::sqrt(25.0 - 4.0 * prev);
  return b == Branch::plus ? (5.0 + root) / 2.0 : 2.0 * prev / (5.0 + root);
}

std::string branch_string(std::span<const Branch> branches) {
  std::string s;
  s.reserve(branches.size());
  for (Branch b : branches) s.push_back(b == Branch::plus ? '+' : '-');
  return s;
}

std::vector<Branch> parse_branches(std::string_view text) {
  std::vector<Branch> out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch == '+')
      out.push_back(Branch::plus);
    else if (ch == '-')
      out.push_back(Branch::minus);
    else
      throw std::invalid_argument("branch string may only contain '+' and '-', got '" + std::string(text) + "'");
  }
  return out;
}

EigenvalueSequence::EigenvalueSequence(int m0, double lambda_m0, std::set<int> plus_indices)
    : m0_(m0), plus_(std::move(plus_indices)) {
  if (m0 < 0) throw std::invalid_argument("m0 must be non-negative");
  if (!std::isfinite(lambda_m0)) throw DomainError("lambda_m0 is not finite");
  if (!plus_.empty() && *plus_.begin() <= m0)
    throw std::invalid_argument("plus indices must exceed m0 = " + std::to_string(m0));

  const int count = last_plus() - m0 + stored_depth + 1;
  values_.reserve(static_cast<std::size_t>(count));
  values_.push_back(lambda_m0);
  for (int j = 1; j < count; ++j) {
    const int m = m0 + j;
    const double v = lambda_next(values_.back(), branch(m));
    for (double s : {2.0, 5.0, 6.0})
      if (near(v, s, singular_tol))
        throw SingularLevelError(m, v, "lambda_" + std::to_string(m) + " = " + std::to_string(v) +
                                           " is excluded (2, 5 and 6 are not allowed past m0)");
    values_.push_back(v);
  }
  const LimitValue lim = lambda_limit(*this);
  limit_ = lim.value;
  limit_error_ = lim.error;
}

EigenvalueSequence EigenvalueSequence::from_branches(int m0, double lambda_m0, std::span<const Branch> branches) {
  std::set<int> plus;
  for (std::size_t j = 0; j < branches.size(); ++j)
    if (branches[j] == Branch::plus) plus.insert(m0 + 1 + static_cast<int>(j));
  return {m0, lambda_m0, std::move(plus)};
}

EigenvalueSequence EigenvalueSequence::from_eigenvalue(double lambda, int m0) {
  if (m0 < 0) throw std::invalid_argument("m0 must be non-negative");
  if (!std::isfinite(lambda)) throw DomainError("eigenvalue is not finite");
  const ConvergenceConfig cfg;
  // First level whose Psi argument is inside the stability radius.
  int start = m0;
  while (std::abs(lambda) * std::pow(5.0, -start) > cfg.stability_radius) ++start;
  // Past this level every value is below 5/2, so the tail is all minus.
  int stop = start;
  while (std::abs(lambda) * std::pow(5.0, -stop) > 1.0) ++stop;

  std::vector<double> vals(static_cast<std::size_t>(stop - m0 + 1));
  for (int j = start; j <= stop; ++j) vals[static_cast<std::size_t>(j - m0)] = big_psi(lambda * std::pow(5.0, -j), cfg);
  for (int j = start; j > m0; --j) vals[static_cast<std::size_t>(j - 1 - m0)] = psi(vals[static_cast<std::size_t>(j - m0)]);

  std::set<int> plus;
  for (int j = m0 + 1; j <= stop; ++j)
    if (vals[static_cast<std::size_t>(j - m0)] > 2.5) plus.insert(j);
  return {m0, vals.front(), std::move(plus)};
}

double EigenvalueSequence::at(int m) const {
  if (m < 0) throw std::invalid_argument("level must be non-negative");
  if (m < m0_) {
    double x = values_.front();
    for (int l = m0_; l > m; --l) x = psi(x);
    return x;
  }
  const auto idx = static_cast<std::size_t>(m - m0_);
  if (idx < values_.size()) return values_[idx];
  double x = values_.back();
  for (std::size_t k = values_.size(); k <= idx; ++k) x = lambda_next(x, Branch::minus);
  return x;
}

EigenvalueSequence EigenvalueSequence::shifted(int n) const {
  if (n < 0) throw std::invalid_argument("shift must be non-negative");
  const int new_m0 = std::max(m0_ - n, 0);
  const int start = new_m0 + n;
  std::set<int> plus;
  for (int p : plus_)
    if (p > start) plus.insert(p - n);
  return {new_m0, at(start), std::move(plus)};
}

LimitValue lambda_limit(const EigenvalueSequence& seq, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  constexpr int max_levels = 400;
  int m = seq.last_plus();
  double prev = 1.5 * std::pow(5.0, m) * seq.at(m);
  for (int k = 0; k < max_levels; ++k) {
    ++m;
    const double e = 1.5 * std::pow(5.0, m) * seq.at(m);
    const double step = std::abs(e - prev);
    if (step <= tol * std::abs(e)) return {e, step, m};
    prev = e;
  }
  throw ConvergenceError("renormalized eigenvalue limit did not converge");
}

Eigen::Matrix3d eigen_matrix(Letter i, double lam) {
  if (near(lam, 2.0, 1e-12) || near(lam, 5.0, 1e-12))
    throw DomainError("A_i(lambda) is singular at lambda = " + std::to_string(lam));
  const auto e = eigen_matrix_entries(i.value(), lam);
  Eigen::Matrix3d a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = e[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return a;
}

CellTriple extend_eigen(const CellTriple& b, const Word& suffix, const EigenvalueSequence& seq, int at_level) {
  if (at_level < seq.m0())
    throw std::invalid_argument("extension must start at or above m0 = " + std::to_string(seq.m0()));
  CellTriple v = b;
  int level = at_level;
  for (Letter l : suffix) {
    ++level;
    const double lam = seq.at(level);
    try {
      v = eigen_matrix(l, lam) * v;
    } catch (const DomainError&) {
      throw SingularLevelError(level, lam, "singular extension matrix at level " + std::to_string(level));
    }
  }
  return v;
}

SpectralEigenfunction::SpectralEigenfunction(EigenvalueSequence seq, LevelValues initial, double tol)
    : seq_(std::move(seq)), initial_(std::move(initial)) {
  if (initial_.level != seq_.m0())
    throw LevelMismatchError("initial data is at level " + std::to_string(initial_.level) + " but m0 is " +
                             std::to_string(seq_.m0()));
  graph_ = level_graph(initial_.level);
  if (initial_.values.size() != graph_->vertex_count())
    throw LevelMismatchError("initial data has " + std::to_string(initial_.values.size()) + " values, expected " +
                             std::to_string(graph_->vertex_count()));
  if (seq_.m0() > 0) {
    double scale = 1.0;
    for (double v : initial_.values) scale = std::max(scale, std::abs(v));
    const double r = eigen_residual(*graph_, initial_, seq_.at(seq_.m0()));
    if (r > tol * scale)
      throw std::invalid_argument("initial data is not an eigenvector of the level-" + std::to_string(seq_.m0()) +
                                  " Laplacian (residual " + std::to_string(r) + ")");
  }
}

SpectralEigenfunction SpectralEigenfunction::from_boundary(EigenvalueSequence seq, const CellTriple& boundary) {
  if (seq.m0() != 0) throw std::invalid_argument("boundary data needs a sequence with m0 = 0");
  return {std::move(seq), LevelValues{0, {boundary[0], boundary[1], boundary[2]}}};
}

SpectralEigenfunction SpectralEigenfunction::non_dirichlet(double lambda, const CellTriple& boundary) {
  return from_boundary(EigenvalueSequence::from_eigenvalue(lambda, 0), boundary);
}

SpectralEigenfunction SpectralEigenfunction::harmonic(const CellTriple& boundary) {
  return from_boundary(EigenvalueSequence::harmonic(0), boundary);
}

CellTriple SpectralEigenfunction::boundary() const {
  return {initial_.values[0], initial_.values[1], initial_.values[2]};
}

CellTriple SpectralEigenfunction::cell_values(const Word& w) const {
  const auto m0 = static_cast<std::size_t>(seq_.m0());
  if (w.size() < m0) {
    CellTriple v;
    for (int j = 0; j < 3; ++j) v[j] = initial_.values[graph_->index_of(w, Letter(j))];
    return v;
  }
  const Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m0));
  const Word tail(w.begin() + static_cast<std::ptrdiff_t>(m0), w.end());
  const auto& corners = graph_->cell(head);
  const CellTriple b{initial_.values[corners[0]], initial_.values[corners[1]], initial_.values[corners[2]]};
  return extend_eigen(b, tail, seq_, seq_.m0());
}

double SpectralEigenfunction::value_at(const Word& w, Letter j) const { return cell_values(w)[j.value()]; }

SpectralEigenfunction SpectralEigenfunction::pulled_back(const Word& w) const {
  EigenvalueSequence seq = seq_.shifted(static_cast<int>(w.size()));
  const int m = seq.m0();
  const auto g = level_graph(m);
  LevelValues vals{m, std::vector<double>(g->vertex_count(), 0.0)};
  for (std::size_t c = 0; c < g->cell_count(); ++c) {
    const CellTriple t = cell_values(concat(w, word_from_index(c, m)));
    const auto& corners = g->cell(c);
    for (int j = 0; j < 3; ++j) vals.values[corners[static_cast<std::size_t>(j)]] = t[j];
  }
  return {std::move(seq), std::move(vals)};
}

LevelValues eigen_values_on_level(const SpectralEigenfunction& u, int m) {
  if (m < 0) throw std::invalid_argument("level must be non-negative");
  const int m0 = u.m0();
  if (m <= m0) {
    const auto n = vertex_count_formula(m);
    return {m, std::vector<double>(u.initial().values.begin(),
                                   u.initial().values.begin() + static_cast<std::ptrdiff_t>(n))};
  }

  std::vector<double> vals = u.initial().values;
  for (int l = m0; l < m; ++l) {
    const auto g = level_graph(l);
    const auto next = level_graph(l + 1);
    const double lam = u.sequence().at(l + 1);
    std::array<Eigen::Matrix3d, 3> a;
    try {
      for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(i)] = eigen_matrix(Letter(i), lam);
    } catch (const DomainError&) {
      throw SingularLevelError(l + 1, lam, "singular extension matrix at level " + std::to_string(l + 1));
    }
    const std::size_t old_n = vals.size();
    vals.resize(next->vertex_count(), 0.0);
    std::vector<bool> seen(next->vertex_count(), false);
    for (std::size_t c = 0; c < g->cell_count(); ++c) {
      const auto& corners = g->cell(c);
      const CellTriple b{vals[corners[0]], vals[corners[1]], vals[corners[2]]};
      for (std::size_t i = 0; i < 3; ++i) {
        const CellTriple sub = a[i] * b;
        const auto& sc = next->cell(c * 3 + i);
        for (std::size_t j = 0; j < 3; ++j) {
          if (j == i) continue;
          const std::size_t x = sc[j];
          const double v = sub[static_cast<Eigen::Index>(j)];
          if (x < old_n) continue;
          if (!seen[x]) {
            vals[x] = v;
            seen[x] = true;
          } else if (std::abs(vals[x] - v) > junction_tol * (1.0 + std::abs(v))) {
            throw ConsistencyError("junction value mismatch at level " + std::to_string(l + 1) + " vertex " +
                                   next->vertex(x).to_string());
          }
        }
      }
    }
  }
  return {m, std::move(vals)};
}

}  // namespace sg
