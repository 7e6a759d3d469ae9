#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgspec/decimation.hpp"

namespace sg {

enum class DirichletSeries { two, five, six };

std::string to_string(DirichletSeries s);
DirichletSeries parse_series(std::string_view name);
/// 2, 5 or 6.
double series_value(DirichletSeries s);

/// Index conventions: two has the single index 1; five numbers its chains from
/// 1; six names the glue vertex by its index in LevelGraph(m0 - 1), which must
/// be an interior vertex.
struct DirichletSeed {
  DirichletSeries series = DirichletSeries::two;
  int m0 = 1;
  int index = 1;
  /// Roots taken at levels m0 + 1, m0 + 2, ...; later levels use minus. For
  /// six the first entry is forced to plus (lambda_{m0+1} = 3) and may be
  /// omitted.
  std::vector<Branch> branches;
};

/// Dimension of the level-m0 eigenspace for lambda_{m0} = 2, 5, 6 (0 where the
/// series does not start at m0).
std::size_t dirichlet_multiplicity(DirichletSeries s, int m0);

/// Whether dirichlet_basis can build every eigenfunction of (s, m0) in closed
/// form: two at m0 = 1, five at m0 in {1, 2}, six at any m0 >= 2.
bool has_closed_form_basis(DirichletSeries s, int m0);

/// The seeds spanning (s, m0) with the given branches.
std::vector<DirichletSeed> dirichlet_seeds(DirichletSeries s, int m0, const std::vector<Branch>& branches = {});

EigenvalueSequence dirichlet_sequence(DirichletSeries s, int m0, const std::vector<Branch>& branches);

/// Throws UnsupportedSeedError for combinations without a closed form and
/// std::invalid_argument for out-of-range indices.
SpectralEigenfunction dirichlet_basis(const DirichletSeed& seed);

/// The non-Dirichlet level-1 building block of the six series: 0 at q_0 and
/// q_1, 2 at q_2, +1 at F_0 q_1, -1 at F_0 q_2 and F_1 q_2, with lambda_1 = 6
/// and lambda_2 = 3. branches covers levels 3 onward.
SpectralEigenfunction six_series_piece(const std::vector<Branch>& branches = {});

struct SpectrumEntry {
  DirichletSeries series;
  int m0 = 0;
  /// Roots taken at levels m0 + 1 .. level.
  std::vector<Branch> branches;
  /// lambda_{m0} .. lambda_level.
  std::vector<double> path;
  double limit = 0.0;
  std::size_t multiplicity = 0;
  bool closed_form = false;
};

/// All Dirichlet eigenvalues of -Delta_m produced by spectral decimation,
/// ordered by series, m0 and branch pattern ('-' before '+'). Multiplicities
/// add up to |V_m| - 3.
std::vector<SpectrumEntry> enumerate_dirichlet_spectrum(int m, std::optional<DirichletSeries> only = std::nullopt);

}  // namespace sg
