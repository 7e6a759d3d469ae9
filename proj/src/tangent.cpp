#include "sgspec/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sgspec/dirichlet.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/harmonic.hpp"

namespace sg {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void check_tail_levels(const EigenvalueSequence& seq, int k) {
  if (k < 0) throw std::invalid_argument("level must be non-negative");
  for (int m = k + 1; m <= seq.m0(); ++m) {
    const double v = seq.at(m);
    if (near(v, 2.0) || near(v, 5.0))
      throw SingularLevelError(m, v, "lambda_" + std::to_string(m) + " is 2 or 5; no tangent limit from level " +
                                         std::to_string(k));
  }
}

double rho(const EigenvalueSequence& seq, int k) {
  const double lk = seq.at(k);
  if (lk == 0.0) return 0.5;
  return seq.limit() / (3.0 * std::pow(5.0, k) * lk);
}

std::vector<Branch> branches_from(const EigenvalueSequence& seq, int from) {
  std::vector<Branch> out;
  for (int m = from; m <= seq.last_plus(); ++m) out.push_back(seq.branch(m));
  return out;
}

}  // namespace

Eigen::Vector3d basis_vector(BasisVector v, const EigenvalueSequence& seq, int level) {
  switch (v) {
    case BasisVector::alpha:
      return {0.0, 1.0, 1.0};
    case BasisVector::beta:
      return {0.0, 1.0, -1.0};
    default: {
      const double l = seq.at(level);
      return {4.0, 4.0 - l, 4.0 - l};
    }
  }
}

Eigen::Vector3d limit_action(const EigenvalueSequence& seq, int k, BasisVector v, const ConvergenceConfig& cfg) {
  check_tail_levels(seq, k);
  switch (v) {
    case BasisVector::alpha:
      return 4.0 * rho(seq, k) * tau(k, seq, cfg) * basis_vector(v, seq, k);
    case BasisVector::beta:
      return 2.0 * rho(seq, k) * basis_vector(v, seq, k);
    default:
      return {4.0, 4.0, 4.0};
  }
}

TangentMatrix m0_matrix(const EigenvalueSequence& seq, int k, const ConvergenceConfig& cfg) {
  check_tail_levels(seq, k);
  TangentMatrix t;
  t.k = k;
  t.lambda = seq.limit();
  t.lambda_k = seq.at(k);
  t.tau = tau(k, seq, cfg);
  t.rho = rho(seq, k);
  const double first = 1.0 - (4.0 - t.lambda_k) * t.rho * t.tau;
  const double plus = t.rho * (2.0 * t.tau + 1.0);
  const double minus = t.rho * (2.0 * t.tau - 1.0);
  t.matrix << 1.0, 0.0, 0.0, first, plus, minus, first, minus, plus;
  return t;
}

Eigen::Matrix3d swap_matrix(Letter i) {
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  if (i.value() != 0) p.row(0).swap(p.row(i.value()));
  return p;
}

Eigen::Matrix3d tail_matrix(const EigenvalueSequence& seq, int k, Letter i, const ConvergenceConfig& cfg) {
  const Eigen::Matrix3d p = swap_matrix(i);
  return p * m0_matrix(seq, k, cfg).matrix * p;
}

Permutation rotation(int shift) {
  const int s = ((shift % 3) + 3) % 3;
  return {s, (1 + s) % 3, (2 + s) % 3};
}

Permutation inverse(const Permutation& sigma) {
  Permutation inv{};
  for (int j = 0; j < 3; ++j) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = j;
  return inv;
}

Eigen::Vector3d permute_values(const Permutation& sigma, const Eigen::Vector3d& v) {
  Eigen::Vector3d out;
  for (int j = 0; j < 3; ++j) out[sigma[static_cast<std::size_t>(j)]] = v[j];
  return out;
}

EventuallyConstantWord permute_word(const Permutation& sigma, const EventuallyConstantWord& w) {
  Word p;
  p.reserve(w.prefix.size());
  for (Letter l : w.prefix) p.emplace_back(sigma[static_cast<std::size_t>(l.value())]);
  return {std::move(p), Letter(sigma[static_cast<std::size_t>(w.tail.value())])};
}

TangentTriple tangent_at(const SpectralEigenfunction& u, const EventuallyConstantWord& w, std::optional<int> cut,
                         const ConvergenceConfig& cfg) {
  if (cut && *cut < 0) throw std::invalid_argument("cut level must be non-negative");
  const int k = std::max({static_cast<int>(w.prefix.size()), u.m0(), cut.value_or(0)});
  const Word word = w.truncate(static_cast<std::size_t>(k));
  TangentTriple v = tail_matrix(u.sequence(), k, w.tail, cfg) * u.cell_values(word);
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = harmonic_inverse(*it) * v;
  return v;
}

Eigen::Vector3d gradient_at(const SpectralEigenfunction& u, const EventuallyConstantWord& w,
                            const ConvergenceConfig& cfg) {
  const TangentTriple t = tangent_at(u, w, std::nullopt, cfg);
  return t.array() - t.mean();
}

double normal_derivative(const SpectralEigenfunction& u, Letter i, const ConvergenceConfig& cfg) {
  const int a = i.value();
  const int b = i.shifted(1).value();
  const int c = i.shifted(2).value();
  if (u.m0() > 0) {
    const TangentTriple t = tangent_at(u, EventuallyConstantWord{Word{}, i}, std::nullopt, cfg);
    return 2.0 * t[a] - t[b] - t[c];
  }
  const CellTriple q = u.boundary();
  const double l0 = u.sequence().at(0);
  if (l0 == 0.0) return 2.0 * q[a] - q[b] - q[c];
  const double lam = u.eigenvalue();
  double ups = 0.0;
  try {
    ups = upsilon(lam, cfg);
  } catch (const DomainError&) {
    if (std::abs(lam / 5.0) <= cfg.stability_radius) throw;
    ups = tau(0, u.sequence(), cfg);
  }
  return ((4.0 - l0) * q[a] - 2.0 * q[b] - 2.0 * q[c]) * 2.0 * lam * ups / (3.0 * l0);
}

TangentPiece dirichlet_tangent_seed(PieceKind kind, Branch first, const std::vector<Branch>& later) {
  if (kind == PieceKind::six) {
    if (first != Branch::plus) throw DomainError("the six piece needs lambda_2 = 3 (plus root after 6)");
    return {kind, six_series_piece(later)};
  }
  std::vector<Branch> br{first};
  br.insert(br.end(), later.begin(), later.end());
  const double l0 = kind == PieceKind::two ? 2.0 : 5.0;
  CellTriple b;
  switch (kind) {
    case PieceKind::two:
      b = {0.0, 1.0, 1.0};
      break;
    case PieceKind::five_minus:
      b = {0.0, 1.0, -1.0};
      break;
    default:
      b = {0.0, 0.0, 1.0};
      break;
  }
  return {kind, SpectralEigenfunction::from_boundary(EigenvalueSequence::from_branches(0, l0, br), b)};
}

TangentPiece dirichlet_tangent_seed(PieceKind kind, double lambda1, const std::vector<Branch>& later) {
  if (kind == PieceKind::six) {
    if (!near(lambda1, 6.0)) throw DomainError("the six piece starts at lambda_1 = 6, got " + std::to_string(lambda1));
    return dirichlet_tangent_seed(kind, Branch::plus, later);
  }
  const double l0 = kind == PieceKind::two ? 2.0 : 5.0;
  for (Branch b : {Branch::minus, Branch::plus})
    if (std::abs(lambda1 - lambda_next(l0, b)) <= 1e-9) return dirichlet_tangent_seed(kind, b, later);
  throw DomainError("lambda_1 = " + std::to_string(lambda1) + " is not a root over " + std::to_string(l0));
}

TangentTriple assemble_dirichlet_tangent(const SpectralEigenfunction& u, const EventuallyConstantWord& w,
                                         const ConvergenceConfig& cfg) {
  const int m0 = u.m0();
  if (m0 < 1) throw std::invalid_argument("assembly needs an eigenfunction with m0 >= 1");
  const EigenvalueSequence& seq = u.sequence();
  const double l0 = seq.at(m0);
  PieceKind kind;
  if (near(l0, 2.0))
    kind = PieceKind::two;
  else if (near(l0, 5.0))
    kind = PieceKind::five_plus;
  else if (near(l0, 6.0))
    kind = PieceKind::six;
  else
    throw std::invalid_argument("assembly needs lambda_m0 in {2, 5, 6}, got " + std::to_string(l0));

  const int level = kind == PieceKind::six ? m0 - 1 : m0;
  const Word cell = w.truncate(static_cast<std::size_t>(level));
  const EventuallyConstantWord rest = w.shifted(static_cast<std::size_t>(level));
  const EigenvalueSequence sub = seq.shifted(level);
  const int first_level = kind == PieceKind::six ? 2 : 1;
  const TangentPiece piece =
      dirichlet_tangent_seed(kind, sub.branch(first_level), branches_from(sub, first_level + 1));

  const CellTriple corners = u.cell_values(cell);
  std::array<double, 3> coeff{};
  int anchor = 0;
  switch (kind) {
    case PieceKind::two: {
      const double half = corners.sum() / 2.0;
      for (int c = 0; c < 3; ++c) coeff[static_cast<std::size_t>(c)] = half - corners[c];
      anchor = 0;
      break;
    }
    case PieceKind::five_plus:
      for (int c = 0; c < 3; ++c) coeff[static_cast<std::size_t>(c)] = corners[c];
      anchor = 2;
      break;
    default: {
      for (int c = 0; c < 3; ++c) coeff[static_cast<std::size_t>(c)] = corners[c] / 2.0;
      anchor = 2;
      double worst = 0.0, scale = 1.0;
      for (int l = 0; l < 3; ++l) {
        const CellTriple actual = u.cell_values(concat(cell, Word{Letter(l)}));
        for (int j = 0; j < 3; ++j) {
          double expect = 0.0;
          for (int c = 0; c < 3; ++c) {
            const Permutation inv = inverse(rotation(c - anchor));
            expect += coeff[static_cast<std::size_t>(c)] *
                      piece.function.value_at(Word{Letter(inv[static_cast<std::size_t>(l)])},
                                              Letter(inv[static_cast<std::size_t>(j)]));
          }
          worst = std::max(worst, std::abs(expect - actual[j]));
          scale = std::max(scale, std::abs(actual[j]));
        }
      }
      if (worst > 1e-9 * scale)
        throw std::invalid_argument("cell data is not a combination of rotated six-series pieces");
      break;
    }
  }

  TangentTriple acc = TangentTriple::Zero();
  for (int c = 0; c < 3; ++c) {
    const double a = coeff[static_cast<std::size_t>(c)];
    if (a == 0.0) continue;
    const Permutation sigma = rotation(c - anchor);
    acc += a * permute_values(sigma, piece.tangent(permute_word(inverse(sigma), rest), cfg));
  }
  for (auto it = cell.rbegin(); it != cell.rend(); ++it) acc = harmonic_inverse(*it) * acc;
  return acc;
}

}  // namespace sg
