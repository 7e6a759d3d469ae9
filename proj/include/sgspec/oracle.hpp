#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sgspec/decimation.hpp"
#include "sgspec/dirichlet.hpp"
#include "sgspec/tangent.hpp"

namespace sg {

/// Largest level accepted by dense_dirichlet_spectrum.
constexpr int dense_level_cap = 6;

/// -Delta_m on interior vertices; row r is vertex r + 3.
Eigen::MatrixXd dirichlet_laplacian_matrix(int m);

struct JacobiResult {
  /// Ascending.
  Eigen::VectorXd values;
  /// Column j belongs to values[j].
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations for a symmetric matrix. Stops when the
/// off-diagonal Frobenius norm falls below tol times the matrix norm.
JacobiResult jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-15, int max_sweeps = 60);

struct DenseSpectrum {
  int level = 0;
  std::vector<double> eigenvalues;
  /// Columns over interior vertices, orthonormal.
  Eigen::MatrixXd eigenvectors;
  /// max_j ||(-Delta_m - mu_j) v_j||_inf.
  double max_residual = 0.0;

  /// (value, multiplicity) with values closer than tol merged.
  std::vector<std::pair<double, std::size_t>> grouped(double tol = 1e-9) const;
  /// Orthonormal basis of the eigenspace for mu (eigenvalues within tol).
  Eigen::MatrixXd eigenspace(double mu, double tol = 1e-9) const;
};

/// Throws ResourceError above dense_level_cap.
DenseSpectrum dense_dirichlet_spectrum(int m);

/// ||v - P v||_inf / ||v||_inf for P the projection onto the mu-eigenspace;
/// v is given on all of V_m, boundary entries are ignored.
double eigenspace_distance(const DenseSpectrum& spec, double mu, const std::vector<double>& v, double tol = 1e-9);

struct SpectrumComparison {
  bool matched = false;
  double worst_gap = 0.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

/// Sorted pairing of two multisets.
SpectrumComparison compare_spectra(std::vector<double> a, std::vector<double> b, double tol = 1e-9);

/// lambda_m of every entry repeated by its multiplicity.
std::vector<double> expand_spectrum(const std::vector<SpectrumEntry>& entries);

struct TangentEstimate {
  TangentTriple value;
  /// Max-norm distance to the level m - 1 iterate.
  double error = 0.0;
  int level = 0;
};

/// A_{w_1}^-1 ... A_{w_m}^-1 u|F_{[w]_m}(V_0), evaluated in 50-digit
/// arithmetic from lambda_{m0}, the branches and the level-m0 data.
TangentEstimate direct_tangent_limit(const SpectralEigenfunction& u, const EventuallyConstantWord& w, int m);

/// A_0^-n A_0(lambda_{k+n}) ... A_0(lambda_{k+1}), in 50-digit arithmetic.
Eigen::Matrix3d truncated_tail_product(const EigenvalueSequence& seq, int k, int n);

/// Values at x = 0 and x = 1 of the tangent line at x0 of the solution of
/// -u'' = lambda u on [0, 1] with u(0) = f0, u(1) = f1. Throws DomainError
/// when lambda is within 1e-8 of a Dirichlet eigenvalue pi^2 k^2.
Eigen::Vector2d interval_tangent(double lambda, double x0, double f0, double f1);

}  // namespace sg
