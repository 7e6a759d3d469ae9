#include "sgspec/dirichlet.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "sgspec/errors.hpp"

namespace sg {

namespace {

struct Mark {
  const char* word;
  int letter;
  double value;
};

// Level-1 configurations; midpoints F_0 q_1, F_0 q_2, F_1 q_2.
constexpr Mark two_m1[] = {{"0", 1, 1.0}, {"0", 2, 1.0}, {"1", 2, 1.0}};
constexpr Mark five_m1_a[] = {{"0", 1, 1.0}, {"0", 2, -1.0}};
constexpr Mark five_m1_b[] = {{"0", 1, 1.0}, {"1", 2, -1.0}};

// Level-2 chains.
constexpr Mark five_m2_a[] = {{"01", 2, 1.0}, {"20", 1, -1.0}, {"21", 2, 1.0}, {"00", 1, -1.0}};
constexpr Mark five_m2_b[] = {{"20", 2, 1.0},  {"21", 2, -1.0}, {"00", 2, -1.0},
                              {"11", 2, 1.0},  {"00", 1, 1.0},  {"10", 1, -1.0}};
constexpr Mark five_m2_c[] = {{"10", 2, 1.0}, {"20", 1, -1.0}, {"20", 2, 1.0}, {"10", 1, -1.0}};

template <std::size_t N>
LevelValues marked(int level, const Mark (&marks)[N]) {
  const auto g = level_graph(level);
  LevelValues v{level, std::vector<double>(g->vertex_count(), 0.0)};
  for (const Mark& mk : marks) v.values[g->index_of(parse_word(mk.word), Letter(mk.letter))] = mk.value;
  return v;
}

std::size_t pow3(int e) {
  std::size_t p = 1;
  for (int k = 0; k < e; ++k) p *= 3;
  return p;
}

LevelValues six_glued(int m0, int index) {
  const auto coarse = level_graph(m0 - 1);
  if (index < static_cast<int>(LevelGraph::boundary_count) || static_cast<std::size_t>(index) >= coarse->vertex_count())
    throw std::invalid_argument("six-series index must name an interior vertex of V_" + std::to_string(m0 - 1) +
                                " (3.." + std::to_string(coarse->vertex_count() - 1) + "), got " +
                                std::to_string(index));
  const VertexId& x = coarse->vertex(static_cast<std::size_t>(index));
  const Word u(x.word.begin(), x.word.end() - 1);
  const Letter i = x.word.back();
  const Letter j = x.letter;
  const auto r = static_cast<std::size_t>(m0 - 1 - x.level);

  Word a = u, b = u;
  a.push_back(i);
  b.push_back(j);
  a.insert(a.end(), r, j);
  b.insert(b.end(), r, i);

  const auto g = level_graph(m0);
  LevelValues v{m0, std::vector<double>(g->vertex_count(), 0.0)};
  for (const auto& [cell, c] : {std::pair{a, j}, std::pair{b, i}}) {
    v.values[g->index_of(cell, c)] = 2.0;
    for (int l = 0; l < 3; ++l) {
      if (l == c.value()) continue;
      v.values[g->index_of(concat(cell, Word{c}), Letter(l))] = -1.0;
    }
    const Letter l1 = c.shifted(1);
    const Letter l2 = c.shifted(2);
    v.values[g->index_of(concat(cell, Word{l1}), l2)] = 1.0;
  }
  return v;
}

}  // namespace

std::string to_string(DirichletSeries s) {
  switch (s) {
    case DirichletSeries::two:
      return "two";
    case DirichletSeries::five:
      return "five";
    default:
      return "six";
  }
}

DirichletSeries parse_series(std::string_view name) {
  if (name == "two") return DirichletSeries::two;
  if (name == "five") return DirichletSeries::five;
  if (name == "six") return DirichletSeries::six;
  throw std::invalid_argument("unknown series '" + std::string(name) + "' (expected two, five or six)");
}

double series_value(DirichletSeries s) {
  switch (s) {
    case DirichletSeries::two:
      return 2.0;
    case DirichletSeries::five:
      return 5.0;
    default:
      return 6.0;
  }
}

std::size_t dirichlet_multiplicity(DirichletSeries s, int m0) {
  switch (s) {
    case DirichletSeries::two:
      return m0 == 1 ? 1 : 0;
    case DirichletSeries::five:
      return m0 >= 1 ? (pow3(m0 - 1) + 3) / 2 : 0;
    default:
      return m0 >= 2 ? (pow3(m0) - 3) / 2 : 0;
  }
}

bool has_closed_form_basis(DirichletSeries s, int m0) {
  switch (s) {
    case DirichletSeries::two:
      return m0 == 1;
    case DirichletSeries::five:
      return m0 == 1 || m0 == 2;
    default:
      return m0 >= 2;
  }
}

EigenvalueSequence dirichlet_sequence(DirichletSeries s, int m0, const std::vector<Branch>& branches) {
  if (dirichlet_multiplicity(s, m0) == 0)
    throw UnsupportedSeedError(to_string(s) + " series has no eigenfunctions with m0 = " + std::to_string(m0));
  std::vector<Branch> b = branches;
  if (s == DirichletSeries::six) {
    if (b.empty())
      b.push_back(Branch::plus);
    else if (b.front() != Branch::plus)
      throw DomainError("six series needs the plus root at m0 + 1 (lambda = 3); the minus root gives 2");
  }
  return EigenvalueSequence::from_branches(m0, series_value(s), b);
}

std::vector<DirichletSeed> dirichlet_seeds(DirichletSeries s, int m0, const std::vector<Branch>& branches) {
  if (!has_closed_form_basis(s, m0))
    throw UnsupportedSeedError("no closed-form basis for the " + to_string(s) + " series at m0 = " +
                               std::to_string(m0));
  std::vector<DirichletSeed> out;
  if (s == DirichletSeries::six) {
    const auto n = level_graph(m0 - 1)->vertex_count();
    for (std::size_t x = LevelGraph::boundary_count; x < n; ++x) out.push_back({s, m0, static_cast<int>(x), branches});
  } else {
    const auto n = static_cast<int>(dirichlet_multiplicity(s, m0));
    for (int k = 1; k <= n; ++k) out.push_back({s, m0, k, branches});
  }
  return out;
}

SpectralEigenfunction dirichlet_basis(const DirichletSeed& seed) {
  if (!has_closed_form_basis(seed.series, seed.m0))
    throw UnsupportedSeedError("no closed-form basis for the " + to_string(seed.series) + " series at m0 = " +
                               std::to_string(seed.m0));
  EigenvalueSequence seq = dirichlet_sequence(seed.series, seed.m0, seed.branches);
  const auto bad_index = [&] {
    return std::invalid_argument(to_string(seed.series) + " series at m0 = " + std::to_string(seed.m0) +
                                 " has no index " + std::to_string(seed.index));
  };
  switch (seed.series) {
    case DirichletSeries::two:
      if (seed.index != 1) throw bad_index();
      return {std::move(seq), marked(1, two_m1)};
    case DirichletSeries::five:
      if (seed.m0 == 1) {
        if (seed.index == 1) return {std::move(seq), marked(1, five_m1_a)};
        if (seed.index == 2) return {std::move(seq), marked(1, five_m1_b)};
      } else {
        if (seed.index == 1) return {std::move(seq), marked(2, five_m2_a)};
        if (seed.index == 2) return {std::move(seq), marked(2, five_m2_b)};
        if (seed.index == 3) return {std::move(seq), marked(2, five_m2_c)};
      }
      throw bad_index();
    default:
      return {std::move(seq), six_glued(seed.m0, seed.index)};
  }
}

SpectralEigenfunction six_series_piece(const std::vector<Branch>& branches) {
  std::set<int> plus{2};
  for (std::size_t j = 0; j < branches.size(); ++j)
    if (branches[j] == Branch::plus) plus.insert(3 + static_cast<int>(j));
  constexpr Mark piece[] = {{"", 2, 2.0}, {"0", 1, 1.0}, {"0", 2, -1.0}, {"1", 2, -1.0}};
  return {EigenvalueSequence(1, 6.0, std::move(plus)), marked(1, piece)};
}

std::vector<SpectrumEntry> enumerate_dirichlet_spectrum(int m, std::optional<DirichletSeries> only) {
  if (m < 0) throw std::invalid_argument("level must be non-negative");
  if (m > max_level()) throw ResourceError("level " + std::to_string(m) + " exceeds cap " + std::to_string(max_level()));
  std::vector<SpectrumEntry> out;
  for (DirichletSeries s : {DirichletSeries::two, DirichletSeries::five, DirichletSeries::six}) {
    if (only && *only != s) continue;
    for (int m0 = 1; m0 <= m; ++m0) {
      const std::size_t mult = dirichlet_multiplicity(s, m0);
      if (mult == 0) continue;
      const int free_len = m - m0;
      const bool forced = s == DirichletSeries::six && free_len > 0;
      const int bits = forced ? free_len - 1 : free_len;
      for (std::size_t pattern = 0; pattern < (std::size_t{1} << bits); ++pattern) {
        std::vector<Branch> br;
        if (forced) br.push_back(Branch::plus);
        for (int k = bits - 1; k >= 0; --k) br.push_back((pattern >> k) & 1U ? Branch::plus : Branch::minus);
        const EigenvalueSequence seq = dirichlet_sequence(s, m0, br);
        SpectrumEntry e{s, m0, br, {}, seq.limit(), mult, has_closed_form_basis(s, m0)};
        for (int l = m0; l <= m; ++l) e.path.push_back(seq.at(l));
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

}  // namespace sg
