#pragma once

#include <stdexcept>
#include <string>

namespace sg {

/// Argument outside the mathematical domain of an operation (poles, singular
/// eigenvalue levels, resonant interval eigenvalues).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A decimation level whose eigenvalue makes the extension matrices singular
/// or violates the admissibility hypothesis (values 2, 5, 6 past m0).
class SingularLevelError : public DomainError {
 public:
  SingularLevelError(int level, double lambda, const std::string& what)
      : DomainError(what), level_(level), lambda_(lambda) {}

  int level() const noexcept { return level_; }
  double lambda() const noexcept { return lambda_; }

 private:
  int level_;
  double lambda_;
};

/// Requested size exceeds a configured cap (graph level, dense solve, exact
/// integer range).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative limit failed to settle within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs belong to different levels of the graph hierarchy.
class LevelMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dirichlet seed combination without a closed-form construction.
class UnsupportedSeedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal consistency check failed (e.g. a junction value computed from two
/// adjacent cells disagrees).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sg
