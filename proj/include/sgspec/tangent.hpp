#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sgspec/address.hpp"
#include "sgspec/decimation.hpp"
#include "sgspec/special.hpp"

namespace sg {

/// Boundary values of the harmonic tangent T_w u.
using TangentTriple = Eigen::Vector3d;

enum class BasisVector { alpha, beta, gamma };

/// alpha = (0,1,1), beta = (0,1,-1), gamma_m = (4, 4 - lambda_m, 4 - lambda_m).
Eigen::Vector3d basis_vector(BasisVector v, const EigenvalueSequence& seq, int level);

/// lim_n A_0^-n A_0(lambda_{k+n}) ... A_0(lambda_{k+1}) v for v in {alpha,
/// beta, gamma_k}, in closed form.
Eigen::Vector3d limit_action(const EigenvalueSequence& seq, int k, BasisVector v, const ConvergenceConfig& cfg = {});

struct TangentMatrix {
  Eigen::Matrix3d matrix;
  int k = 0;
  double lambda = 0.0;
  double lambda_k = 0.0;
  double tau = 0.0;
  /// lambda / (3 5^k lambda_k); 1/2 when lambda_k = 0.
  double rho = 0.0;
};

/// M_0(lambda, k). For lambda_k = 0 the ratio lambda / (3 5^k lambda_k) is
/// replaced by its limit 1/2, which turns the harmonic case into the identity.
TangentMatrix m0_matrix(const EigenvalueSequence& seq, int k, const ConvergenceConfig& cfg = {});

/// The transposition matrix exchanging coordinates 0 and i (identity for i = 0).
Eigen::Matrix3d swap_matrix(Letter i);
/// M_i = P_i M_0 P_i, the limit for a word ending in i i i ...
Eigen::Matrix3d tail_matrix(const EigenvalueSequence& seq, int k, Letter i, const ConvergenceConfig& cfg = {});

/// A permutation sigma of {0,1,2}; sigma[j] is the image of j.
using Permutation = std::array<int, 3>;
Permutation rotation(int shift);
Permutation inverse(const Permutation& sigma);
/// (Pi v)_{sigma(j)} = v_j: values of f o S^-1 on V_0 when S maps q_j to
/// q_{sigma(j)}.
Eigen::Vector3d permute_values(const Permutation& sigma, const Eigen::Vector3d& v);
/// The letterwise image of a word under sigma.
EventuallyConstantWord permute_word(const Permutation& sigma, const EventuallyConstantWord& w);

/// T_w u = A_{w_1}^-1 ... A_{w_k}^-1 M_i(lambda, k) u|F_{[w]_k}(V_0), with
/// k = max(|prefix|, m0, cut).
TangentTriple tangent_at(const SpectralEigenfunction& u, const EventuallyConstantWord& w,
                         std::optional<int> cut = std::nullopt, const ConvergenceConfig& cfg = {});

/// The tangent minus its mean; this is the plain average-zero projection.
Eigen::Vector3d gradient_at(const SpectralEigenfunction& u, const EventuallyConstantWord& w,
                            const ConvergenceConfig& cfg = {});

/// Normal derivative at q_i. With m0 = 0 and lambda_0 != 0 this is
/// ((4 - lambda_0) u_i - 2 u_{i+1} - 2 u_{i+2}) 2 lambda Upsilon(lambda) / (3 lambda_0);
/// for lambda_0 = 0 it is 2 u_i - u_{i+1} - u_{i+2}; for m0 > 0 it is the
/// normal derivative of the tangent at q_i.
double normal_derivative(const SpectralEigenfunction& u, Letter i, const ConvergenceConfig& cfg = {});

enum class PieceKind { two, five_minus, five_plus, six };

/// Boundary values (0,1,1), (0,1,-1), (0,0,1) with lambda_0 = 2, 5, 5; six is
/// six_series_piece. All are oriented in the standard way.
struct TangentPiece {
  PieceKind kind;
  SpectralEigenfunction function;

  TangentTriple tangent(const EventuallyConstantWord& w, const ConvergenceConfig& cfg = {}) const {
    return tangent_at(function, w, std::nullopt, cfg);
  }
};

/// first is the root at level 1 (level 2 for six, where only plus is
/// allowed); later covers the following levels.
TangentPiece dirichlet_tangent_seed(PieceKind kind, Branch first, const std::vector<Branch>& later = {});
/// Same, selecting the root by value. Throws DomainError unless lambda1 is one
/// of (5 +- sqrt 17)/2 for two, (5 +- sqrt 5)/2 for five, or 6 for six.
TangentPiece dirichlet_tangent_seed(PieceKind kind, double lambda1, const std::vector<Branch>& later = {});

/// T_w u for an eigenfunction whose level-m0 value is 2, 5 or 6, computed by
/// splitting u on the cell F_{[w]_L} into rotated pieces (L = m0 for 2 and 5,
/// m0 - 1 for 6), taking their tangents through the rotation symmetry and
/// mapping back with A_{w_1}^-1 ... A_{w_L}^-1. Pieces are rotations only: the
/// two piece is turned so its 0 sits at corner c, five_plus so its 1 sits at
/// corner c, and six so its 2 sits at corner c.
TangentTriple assemble_dirichlet_tangent(const SpectralEigenfunction& u, const EventuallyConstantWord& w,
                                         const ConvergenceConfig& cfg = {});

}  // namespace sg
