#pragma once

namespace sg {

class EigenvalueSequence;

struct ConvergenceConfig {
  /// Relative stopping tolerance: |step| <= tol * max(1, |value|).
  double tol = 1e-13;
  int max_iterations = 80;
  /// Multiplies the last step when reporting an error estimate.
  double tail_bound_factor = 1.25;
  /// Psi refuses |z| above this.
  double stability_radius = 100.0;

  /// Throws std::invalid_argument unless tol > 0 and max_iterations >= 8.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int iterations = 0;
};

/// z (5 - z).
constexpr double psi(double z) noexcept { return z * (5.0 - z); }

/// psi applied m times to (2/3) 5^-m z. Throws DomainError if an iterate
/// overflows.
double psi_n(double z, int m);

/// lim psi_m(z). Throws DomainError outside the stability radius and
/// ConvergenceError if the iterates do not settle within max_iterations.
Estimate big_psi_estimate(double z, const ConvergenceConfig& cfg = {});
double big_psi(double z, const ConvergenceConfig& cfg = {});

/// (2 - Psi(lambda/5))^-1 prod_{j >= 2} (1 - Psi(5^-j lambda) / 3). Throws
/// DomainError at the pole Psi(lambda/5) = 2.
Estimate upsilon_estimate(double lambda, const ConvergenceConfig& cfg = {});
double upsilon(double lambda, const ConvergenceConfig& cfg = {});

/// (2 - lambda_{k+1})^-1 prod_{j >= 2} (1 - lambda_{k+j} / 3) for the given
/// sequence. Equals Upsilon(5^-k lambda) because lambda_j = Psi(5^-j lambda).
double tau(int k, const EigenvalueSequence& seq, const ConvergenceConfig& cfg = {});

}  // namespace sg
