#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sg {

/// One of the three contraction maps F_i(x) = (x + q_i) / 2.
class Letter {
 public:
  constexpr Letter() = default;
  /// Throws std::invalid_argument unless 0 <= v <= 2.
  explicit Letter(int v);

  constexpr int value() const noexcept { return v_; }
  /// The letter (value + k) mod 3; used for the q_{i+1}, q_{i+2} convention.
  Letter shifted(int k) const { return Letter(((v_ + k) % 3 + 3) % 3); }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint8_t v_ = 0;
};

using Word = std::vector<Letter>;

Word parse_word(std::string_view digits);
std::string to_string(const Word& w);
/// Base-3 index with w_1 most significant; the cell ordering of LevelGraph.
std::size_t word_index(const Word& w);
Word word_from_index(std::size_t index, int length);
Word concat(const Word& a, const Word& b);

/// prefix followed by tail repeated forever. Canonical form has the last
/// prefix letter different from the tail.
struct EventuallyConstantWord {
  Word prefix;
  Letter tail;

  EventuallyConstantWord() = default;
  EventuallyConstantWord(Word p, Letter t);

  /// Letter at 1-based position j.
  Letter at(std::size_t j) const;
  /// [w]_m, the length-m truncation.
  Word truncate(std::size_t m) const;
  /// The word with the first n letters removed.
  EventuallyConstantWord shifted(std::size_t n) const;

  /// Parses "prefix:tail", e.g. "01:2" or ":0".
  static EventuallyConstantWord parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const EventuallyConstantWord&, const EventuallyConstantWord&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Triangle {
  std::array<Point, 3> q{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 0.86602540378443864676}};
};

/// F_{w_1} o ... o F_{w_m}(p).
Point apply_ifs(const Word& w, Point p, const Triangle& tri = {});

/// Exact position: (a q_0 + b q_1 + c q_2) / 2^level with a + b + c = 2^level.
struct LatticePoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  int level = 0;

  Point to_point(const Triangle& tri = {}) const;
  LatticePoint refined(int levels) const;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

LatticePoint lattice_point(const Word& w, Letter j);

/// Canonical address of a vertex: the lexicographically smallest (word, letter)
/// at its birth level, where level == word.size().
struct VertexId {
  Word word;
  Letter letter;
  int level = 0;

  std::string to_string() const;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Both addresses of a junction point at its birth level, or the single
/// address (empty, i) of a boundary point.
std::vector<std::pair<Word, Letter>> resolve_addresses(const VertexId& v);

/// Level-m graph approximation. Vertices are ordered by (birth level, canonical
/// word, letter), so the indices of V_m are a prefix of those of V_{m+1}; the
/// first three vertices are q_0, q_1, q_2.
class LevelGraph {
 public:
  int level() const noexcept { return level_; }
  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  static constexpr std::size_t boundary_count = 3;
  bool is_interior(std::size_t v) const noexcept { return v >= boundary_count; }

  const VertexId& vertex(std::size_t v) const { return ids_.at(v); }
  const LatticePoint& lattice(std::size_t v) const { return lattice_.at(v); }
  Point position(std::size_t v, const Triangle& tri = {}) const { return lattice(v).to_point(tri); }

  std::span<const std::size_t> neighbors(std::size_t v) const;
  /// Vertex indices of F_w(q_0), F_w(q_1), F_w(q_2) for the cell with the
  /// given word index (see word_index).
  const std::array<std::size_t, 3>& cell(std::size_t cell_index) const { return cells_.at(cell_index); }
  const std::array<std::size_t, 3>& cell(const Word& w) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Index of F_w(q_j) for |w| <= level, or nullopt when |w| > level.
  std::optional<std::size_t> find(const Word& w, Letter j) const;
  std::size_t index_of(const Word& w, Letter j) const;

 private:
  friend LevelGraph build_level_graph(int m);

  int level_ = 0;
  std::vector<VertexId> ids_;
  std::vector<LatticePoint> lattice_;
  std::vector<std::array<std::size_t, 3>> cells_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<std::size_t> adjacency_;
};

/// (3^{m+1} + 3) / 2.
std::size_t vertex_count_formula(int m);

/// Graph level cap: SG_MAX_LEVEL if set (clamped to 14), otherwise 10.
int max_level();

/// Throws ResourceError when m exceeds max_level().
LevelGraph build_level_graph(int m);

/// Shared, immutable instance per level; safe for concurrent callers.
std::shared_ptr<const LevelGraph> level_graph(int m);

}  // namespace sg
