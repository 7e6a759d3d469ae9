#include "sgspec/special.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sgspec/decimation.hpp"
#include "sgspec/errors.hpp"

namespace sg {

namespace {

constexpr double overflow_bound = 1e150;

using CacheKey = std::tuple<std::uint64_t, std::uint64_t, int>;

struct PsiCache {
  std::mutex mutex;
  std::map<CacheKey, Estimate> entries;
};

PsiCache& psi_cache() {
  static PsiCache cache;
  return cache;
}

double pow5(int e) { return std::pow(5.0, e); }

// Stop index shared by upsilon and tau so the two truncate identically.
bool product_done(double scaled_abs, double tol) { return scaled_abs / 3.0 < tol / 10.0; }

}  // namespace

void ConvergenceConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 8) throw std::invalid_argument("max_iterations must be at least 8");
  if (!(tail_bound_factor >= 1.0)) throw std::invalid_argument("tail_bound_factor must be at least 1");
  if (!(stability_radius > 0.0)) throw std::invalid_argument("stability radius must be positive");
}

double psi_n(double z, int m) {
  if (m < 0) throw std::invalid_argument("psi_n needs m >= 0");
  double x = (2.0 / 3.0) * z * pow5(-m);
  for (int k = 0; k < m; ++k) {
    x = psi(x);
    if (!std::isfinite(x) || std::abs(x) > overflow_bound)
      throw DomainError("psi iterate overflowed at step " + std::to_string(k + 1) + " for z = " + std::to_string(z));
  }
  return x;
}

Estimate big_psi_estimate(double z, const ConvergenceConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(z)) throw DomainError("Psi argument is not finite");
  if (std::abs(z) > cfg.stability_radius)
    throw DomainError("Psi argument " + std::to_string(z) + " is outside the stability radius " +
                      std::to_string(cfg.stability_radius));
  if (z == 0.0) return {0.0, 0.0, 0};

  const CacheKey key{std::bit_cast<std::uint64_t>(z), std::bit_cast<std::uint64_t>(cfg.tol), cfg.max_iterations};
  auto& cache = psi_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }

  double prev = psi_n(z, 0);
  for (int m = 1; m <= cfg.max_iterations; ++m) {
    const double v = psi_n(z, m);
    const double step = std::abs(v - prev);
    const double scale = std::max(1.0, std::abs(v));
    if (step <= cfg.tol * scale) {
      const double noise = 4.0 * m * std::numeric_limits<double>::epsilon() * scale;
      const Estimate est{v, cfg.tail_bound_factor * step + noise, m};
      std::lock_guard lock(cache.mutex);
      if (cache.entries.size() > 4096) cache.entries.clear();
      cache.entries.emplace(key, est);
      return est;
    }
    prev = v;
  }
  throw ConvergenceError("Psi(" + std::to_string(z) + ") did not converge in " + std::to_string(cfg.max_iterations) +
                         " iterations");
}

double big_psi(double z, const ConvergenceConfig& cfg) { return big_psi_estimate(z, cfg).value; }

Estimate upsilon_estimate(double lambda, const ConvergenceConfig& cfg) {
  cfg.validate();
  const Estimate lead = big_psi_estimate(lambda / 5.0, cfg);
  const double denom = 2.0 - lead.value;
  if (std::abs(denom) < 1e-12)
    throw DomainError("Upsilon has a pole at lambda = " + std::to_string(lambda) + " (Psi(lambda/5) = 2)");

  double prod = 1.0;
  double err = lead.error / std::abs(denom);
  int j = 2;
  for (;; ++j) {
    const double scaled = pow5(-j) * std::abs(lambda);
    if (product_done(scaled, cfg.tol)) break;
    if (j - 1 > cfg.max_iterations)
      throw ConvergenceError("Upsilon product did not reach tolerance in " + std::to_string(cfg.max_iterations) +
                             " factors");
    const Estimate f = big_psi_estimate(lambda * pow5(-j), cfg);
    const double factor = 1.0 - f.value / 3.0;
    prod *= factor;
    err += f.error / 3.0;
  }
  const double value = prod / denom;
  // Remaining factors are 1 - O(5^-j lambda) with ratio 1/5.
  const double tail = cfg.tail_bound_factor * pow5(-j) * std::abs(lambda) / 3.0 * 1.25;
  return {value, std::abs(value) * (tail + err), j - 2};
}

double upsilon(double lambda, const ConvergenceConfig& cfg) { return upsilon_estimate(lambda, cfg).value; }

double tau(int k, const EigenvalueSequence& seq, const ConvergenceConfig& cfg) {
  cfg.validate();
  if (k < 0) throw std::invalid_argument("tau needs k >= 0");
  const double next = seq.at(k + 1);
  if (std::abs(2.0 - next) < 1e-12) throw DomainError("tau has a pole: lambda_" + std::to_string(k + 1) + " = 2");

  const double lam = std::abs(seq.limit());
  double prod = 1.0;
  for (int j = 2;; ++j) {
    if (k + j > seq.last_plus() && product_done(pow5(-(k + j)) * lam, cfg.tol)) break;
    if (j - 1 > cfg.max_iterations) throw ConvergenceError("tau product did not reach tolerance");
    prod *= 1.0 - seq.at(k + j) / 3.0;
  }
  return prod / (2.0 - next);
}

}  // namespace sg
