#include "sgspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sgspec/errors.hpp"
#include "sgspec/harmonic.hpp"

namespace sg {

namespace {

using mp = boost::multiprecision::cpp_bin_float_50;
using Vec3 = std::array<mp, 3>;
using Mat3 = std::array<std::array<mp, 3>, 3>;

Vec3 mul(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

Mat3 identity3() {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = i == j ? 1 : 0;
  return r;
}

Mat3 exact_inverse(Letter i) {
  const RationalMatrix3& a = harmonic_inverse_exact(i);
  Mat3 r;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col)
      r[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = mp(a(row, col).num()) / mp(a(row, col).den());
  return r;
}

Mat3 eigen_mp(Letter i, const mp& lam) { return eigen_matrix_entries<mp>(i.value(), lam); }

// lambda_0 .. lambda_upto regenerated from lambda_{m0} and the branch choices.
std::vector<mp> mp_lambdas(const EigenvalueSequence& seq, int upto) {
  const int m0 = seq.m0();
  std::vector<mp> v(static_cast<std::size_t>(std::max(upto, m0) + 1));
  v[static_cast<std::size_t>(m0)] = seq.at(m0);
  for (int m = m0 - 1; m >= 0; --m) {
    const mp& x = v[static_cast<std::size_t>(m + 1)];
    v[static_cast<std::size_t>(m)] = x * (5 - x);
  }
  for (int m = m0 + 1; m <= upto; ++m) {
    const mp& p = v[static_cast<std::size_t>(m - 1)];
    const mp disc = 25 - 4 * p;
    if (disc < 0) throw DomainError("no real successor at level " + std::to_string(m));
    const mp root = sqrt(disc);
    v[static_cast<std::size_t>(m)] = seq.branch(m) == Branch::plus ? mp((5 + root) / 2) : mp(2 * p / (5 + root));
  }
  return v;
}

Vec3 direct_iterate(const SpectralEigenfunction& u, const Word& word, const std::vector<mp>& lam) {
  const auto m0 = static_cast<std::size_t>(u.m0());
  const auto g = level_graph(u.m0());
  const auto& corners = g->cell(Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(m0)));
  Vec3 v;
  for (std::size_t j = 0; j < 3; ++j) v[j] = u.initial().values[corners[j]];
  for (std::size_t j = m0; j < word.size(); ++j) v = mul(eigen_mp(word[j], lam[j + 1]), v);
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = mul(exact_inverse(*it), v);
  return v;
}

}  // namespace

Eigen::MatrixXd dirichlet_laplacian_matrix(int m) {
  const auto g = level_graph(m);
  const auto b = LevelGraph::boundary_count;
  const auto n = static_cast<Eigen::Index>(g->vertex_count() - b);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t x = b; x < g->vertex_count(); ++x) {
    const auto r = static_cast<Eigen::Index>(x - b);
    for (std::size_t y : g->neighbors(x)) {
      l(r, r) += 1.0;
      if (y >= b) l(r, static_cast<Eigen::Index>(y - b)) -= 1.0;
    }
  }
  return l;
}

JacobiResult jacobi_eigen(const Eigen::MatrixXd& input, double tol, int max_sweeps) {
  if (input.rows() != input.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = input;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = std::max(a.norm(), std::numeric_limits<double>::min());

  JacobiResult res;
  for (; res.sweeps < max_sweeps; ++res.sweeps) {
    double off2 = 0.0;
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        if (r != c) off2 += a(r, c) * a(r, c);
    const double off = std::sqrt(off2);
    if (off <= tol * norm) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= std::numeric_limits<double>::min()) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        Eigen::VectorXd cp = a.col(p);
        a.col(p) = c * cp - s * a.col(q);
        a.col(q) = s * cp + c * a.col(q);
        Eigen::RowVectorXd rp = a.row(p);
        a.row(p) = c * rp - s * a.row(q);
        a.row(q) = s * rp + c * a.row(q);
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        Eigen::VectorXd vp = v.col(p);
        v.col(p) = c * vp - s * v.col(q);
        v.col(q) = s * vp + c * v.col(q);
      }
    }
  }
  if (res.sweeps == max_sweeps) throw ConvergenceError("Jacobi iteration did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  res.values.resize(n);
  res.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    res.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    res.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return res;
}

std::vector<std::pair<double, std::size_t>> DenseSpectrum::grouped(double tol) const {
  std::vector<std::pair<double, std::size_t>> out;
  for (double x : eigenvalues) {
    if (!out.empty() && std::abs(x - out.back().first) <= tol)
      ++out.back().second;
    else
      out.emplace_back(x, 1);
  }
  return out;
}

Eigen::MatrixXd DenseSpectrum::eigenspace(double mu, double tol) const {
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < eigenvalues.size(); ++j)
    if (std::abs(eigenvalues[j] - mu) <= tol) cols.push_back(static_cast<Eigen::Index>(j));
  Eigen::MatrixXd e(eigenvectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) e.col(static_cast<Eigen::Index>(k)) = eigenvectors.col(cols[k]);
  return e;
}

DenseSpectrum dense_dirichlet_spectrum(int m) {
  if (m < 0) throw std::invalid_argument("level must be non-negative");
  if (m > dense_level_cap)
    throw ResourceError("dense spectrum is limited to level " + std::to_string(dense_level_cap) + ", got " +
                        std::to_string(m));
  DenseSpectrum spec;
  spec.level = m;
  if (m == 0) return spec;
  const Eigen::MatrixXd l = dirichlet_laplacian_matrix(m);
  const JacobiResult j = jacobi_eigen(l);
  spec.eigenvalues.assign(j.values.data(), j.values.data() + j.values.size());
  spec.eigenvectors = j.vectors;
  for (Eigen::Index k = 0; k < j.values.size(); ++k) {
    const double r = (l * j.vectors.col(k) - j.values[k] * j.vectors.col(k)).cwiseAbs().maxCoeff();
    spec.max_residual = std::max(spec.max_residual, r);
  }
  return spec;
}

double eigenspace_distance(const DenseSpectrum& spec, double mu, const std::vector<double>& v, double tol) {
  const auto b = LevelGraph::boundary_count;
  if (v.size() != vertex_count_formula(spec.level))
    throw LevelMismatchError("vector does not live on level " + std::to_string(spec.level));
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size() - b));
  for (std::size_t k = b; k < v.size(); ++k) x[static_cast<Eigen::Index>(k - b)] = v[k];
  const double nx = x.cwiseAbs().maxCoeff();
  if (nx == 0.0) return 0.0;
  const Eigen::MatrixXd e = spec.eigenspace(mu, tol);
  const Eigen::VectorXd proj = e * (e.transpose() * x);
  return (x - proj).cwiseAbs().maxCoeff() / nx;
}

SpectrumComparison compare_spectra(std::vector<double> a, std::vector<double> b, double tol) {
  SpectrumComparison c;
  c.size_a = a.size();
  c.size_b = b.size();
  if (a.size() != b.size()) {
    c.worst_gap = std::numeric_limits<double>::infinity();
    return c;
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) c.worst_gap = std::max(c.worst_gap, std::abs(a[k] - b[k]));
  c.matched = c.worst_gap <= tol;
  return c;
}

std::vector<double> expand_spectrum(const std::vector<SpectrumEntry>& entries) {
  std::vector<double> out;
  for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.path.back());
  return out;
}

TangentEstimate direct_tangent_limit(const SpectralEigenfunction& u, const EventuallyConstantWord& w, int m) {
  if (m < u.m0()) throw std::invalid_argument("direct limit needs m >= m0 = " + std::to_string(u.m0()));
  const std::vector<mp> lam = mp_lambdas(u.sequence(), m);
  for (int j = u.m0() + 1; j <= m; ++j) {
    const mp& x = lam[static_cast<std::size_t>(j)];
    if (abs(x - 2) < mp(1e-30) || abs(x - 5) < mp(1e-30))
      throw SingularLevelError(j, static_cast<double>(x), "singular extension level " + std::to_string(j));
  }
  const Vec3 hm = direct_iterate(u, w.truncate(static_cast<std::size_t>(m)), lam);
  TangentEstimate est;
  est.level = m;
  for (int j = 0; j < 3; ++j) est.value[j] = static_cast<double>(hm[static_cast<std::size_t>(j)]);
  if (m - 1 < u.m0()) {
    est.error = std::numeric_limits<double>::infinity();
  } else {
    const Vec3 prev = direct_iterate(u, w.truncate(static_cast<std::size_t>(m - 1)), lam);
    for (std::size_t j = 0; j < 3; ++j) est.error = std::max(est.error, static_cast<double>(abs(hm[j] - prev[j])));
  }
  return est;
}

Eigen::Matrix3d truncated_tail_product(const EigenvalueSequence& seq, int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("levels must be non-negative");
  const std::vector<mp> lam = mp_lambdas(seq, k + n);
  const Letter zero(0);
  Mat3 p = identity3();
  for (int j = 1; j <= n; ++j) p = mul(eigen_mp(zero, lam[static_cast<std::size_t>(k + j)]), p);
  const Mat3 inv = exact_inverse(zero);
  for (int j = 0; j < n; ++j) p = mul(inv, p);
  Eigen::Matrix3d out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = static_cast<double>(p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return out;
}

Eigen::Vector2d interval_tangent(double lambda, double x0, double f0, double f1) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("x0 must lie in [0, 1]");
  if (lambda == 0.0) return {f0, f1};
  const double s = std::sqrt(std::abs(lambda));
  const bool osc = lambda > 0.0;
  const auto sn = [osc](double t) { return osc ? std::sin(t) : std::sinh(t); };
  const auto cs = [osc](double t) { return osc ? std::cos(t) : std::cosh(t); };
  const double den = sn(s);
  if (osc && std::abs(den) < 1e-8)
    throw DomainError("lambda = " + std::to_string(lambda) + " is a Dirichlet eigenvalue of the interval");
  const double y = 1.0 - x0;
  const double a = sn(s * y);
  const double c = sn(s * x0);
  const double b = s * x0 * cs(s * y);
  const double d = s * x0 * cs(s * x0);
  const double e = s * y * cs(s * y);
  const double g = s * y * cs(s * x0);
  return {(f0 * (a + b) + f1 * (c - d)) / den, (f0 * (a - e) + f1 * (c + g)) / den};
}

}  // namespace sg
