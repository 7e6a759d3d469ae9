#pragma once

#include <array>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sgspec/address.hpp"
#include "sgspec/harmonic.hpp"

namespace sg {

/// Root choice in lambda_m (5 - lambda_m) = lambda_{m-1}.
enum class Branch { minus, plus };

/// (5 -+ sqrt(25 - 4 prev)) / 2. The minus root is evaluated in the
/// cancellation-free form 2 prev / (5 + sqrt(25 - 4 prev)). Throws DomainError
/// for prev > 25/4.
double lambda_next(double prev, Branch b);

std::string branch_string(std::span<const Branch> branches);
std::vector<Branch> parse_branches(std::string_view text);

/// Decimation eigenvalues {lambda_m}_{m >= m0} generated forward from
/// lambda_{m0}, taking the plus root exactly at plus_indices. Values are
/// precomputed and frozen at construction, together with the renormalized
/// limit lambda = (3/2) lim 5^m lambda_m, so instances are safe to share
/// between threads.
class EigenvalueSequence {
 public:
  /// Levels stored past the last plus index; later levels are recomputed on
  /// demand.
  static constexpr int stored_depth = 64;

  /// Throws DomainError when a successor is requested from a value above 25/4
  /// and SingularLevelError when lambda_m hits 2, 5 or 6 for some m > m0.
  EigenvalueSequence(int m0, double lambda_m0, std::set<int> plus_indices = {});

  /// branches[j] is the root taken at level m0 + 1 + j; later levels use minus.
  static EigenvalueSequence from_branches(int m0, double lambda_m0, std::span<const Branch> branches);
  /// The canonical sequence lambda_m = Psi(5^-m lambda) for m >= m0, with plus
  /// roots wherever that value exceeds 5/2.
  static EigenvalueSequence from_eigenvalue(double lambda, int m0 = 0);
  static EigenvalueSequence harmonic(int m0 = 0) { return {m0, 0.0}; }

  int m0() const noexcept { return m0_; }
  /// lambda_m for m >= 0; levels below m0 follow from lambda_{m-1} = psi(lambda_m).
  double at(int m) const;
  Branch branch(int m) const { return plus_.contains(m) ? Branch::plus : Branch::minus; }
  const std::set<int>& plus_indices() const noexcept { return plus_; }
  /// Largest plus index, or m0 when there is none.
  int last_plus() const noexcept { return plus_.empty() ? m0_ : *plus_.rbegin(); }
  bool is_harmonic() const noexcept { return values_.front() == 0.0 && plus_.empty(); }

  double limit() const noexcept { return limit_; }
  double limit_error() const noexcept { return limit_error_; }

  /// The sequence of u o F_w for |w| = n: lambda'_j = lambda_{j+n}.
  EigenvalueSequence shifted(int n) const;

 private:
  int m0_;
  std::set<int> plus_;
  std::vector<double> values_;
  double limit_ = 0.0;
  double limit_error_ = 0.0;
};

struct LimitValue {
  double value = 0.0;
  double error = 0.0;
  int level = 0;
};

/// (3/2) 5^m lambda_m iterated until successive estimates differ by at most
/// tol * |estimate|. Throws ConvergenceError after 400 levels.
LimitValue lambda_limit(const EigenvalueSequence& seq, double tol = 1e-13);

/// A_i(lambda) entries for any arithmetic type; no singularity check.
template <class T>
std::array<std::array<T, 3>, 3> eigen_matrix_entries(int i, const T& lam) {
  const T d = (T(5) - lam) * (T(2) - lam);
  const T p = (T(4) - lam) / d;
  const T q = T(2) / d;
  const T one(1), zero(0);
  switch (i) {
    case 0:
      return {{{one, zero, zero}, {p, p, q}, {p, q, p}}};
    case 1:
      return {{{p, p, q}, {zero, one, zero}, {q, p, p}}};
    default:
      return {{{p, q, p}, {q, p, p}, {zero, zero, one}}};
  }
}

/// A_i(lambda). Throws DomainError for lambda in {2, 5}.
Eigen::Matrix3d eigen_matrix(Letter i, double lam);

/// A_{s_k}(lambda_{l+k}) ... A_{s_1}(lambda_{l+1}) b where l = at_level and s is
/// the suffix. Requires at_level >= seq.m0().
CellTriple extend_eigen(const CellTriple& b, const Word& suffix, const EigenvalueSequence& seq, int at_level);

/// An eigenfunction given by its decimation sequence and its values on
/// V_{m0}. The level-m0 data must satisfy (Delta_{m0} + lambda_{m0}) u = 0 on
/// interior vertices (vacuous for m0 = 0).
class SpectralEigenfunction {
 public:
  SpectralEigenfunction(EigenvalueSequence seq, LevelValues initial, double tol = 1e-9);

  /// m0 = 0 data: the three boundary values.
  static SpectralEigenfunction from_boundary(EigenvalueSequence seq, const CellTriple& boundary);
  /// The non-Dirichlet eigenfunction with eigenvalue lambda and boundary data.
  static SpectralEigenfunction non_dirichlet(double lambda, const CellTriple& boundary);
  static SpectralEigenfunction harmonic(const CellTriple& boundary);

  const EigenvalueSequence& sequence() const noexcept { return seq_; }
  int m0() const noexcept { return seq_.m0(); }
  double eigenvalue() const noexcept { return seq_.limit(); }
  const LevelValues& initial() const noexcept { return initial_; }

  CellTriple boundary() const;
  /// u on F_w(V_0), for a word of any length.
  CellTriple cell_values(const Word& w) const;
  double value_at(const Word& w, Letter j) const;
  /// u o F_w, itself an eigenfunction with sequence shifted by |w|.
  SpectralEigenfunction pulled_back(const Word& w) const;

 private:
  EigenvalueSequence seq_;
  LevelValues initial_;
  std::shared_ptr<const LevelGraph> graph_;
};

/// u on V_m. For m > m0 every new vertex is computed from both cells that
/// contain it and the two results are required to agree (ConsistencyError
/// otherwise). For m < m0 this is the restriction of the initial data.
LevelValues eigen_values_on_level(const SpectralEigenfunction& u, int m);

}  // namespace sg
