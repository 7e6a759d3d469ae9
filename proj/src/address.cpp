#include "sgspec/address.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sgspec/errors.hpp"

namespace sg {

Letter::Letter(int v) {
  if (v < 0 || v > 2) throw std::invalid_argument("letter must be 0, 1 or 2, got " + std::to_string(v));
  v_ = static_cast<std::uint8_t>(v);
}

Word parse_word(std::string_view digits) {
  Word w;
  w.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '2') throw std::invalid_argument("invalid letter '" + std::string(1, ch) + "' in word");
    w.emplace_back(ch - '0');
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(static_cast<char>('0' + l.value()));
  return s;
}

std::size_t word_index(const Word& w) {
  std::size_t idx = 0;
  for (Letter l : w) idx = idx * 3 + static_cast<std::size_t>(l.value());
  return idx;
}

Word word_from_index(std::size_t index, int length) {
  Word w(static_cast<std::size_t>(length));
  for (int k = length - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = Letter(static_cast<int>(index % 3));
    index /= 3;
  }
  return w;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

EventuallyConstantWord::EventuallyConstantWord(Word p, Letter t) : prefix(std::move(p)), tail(t) {
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
}

Letter EventuallyConstantWord::at(std::size_t j) const {
  if (j == 0) throw std::out_of_range("word positions are 1-based");
  return j <= prefix.size() ? prefix[j - 1] : tail;
}

Word EventuallyConstantWord::truncate(std::size_t m) const {
  Word w;
  w.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) w.push_back(at(j));
  return w;
}

EventuallyConstantWord EventuallyConstantWord::shifted(std::size_t n) const {
  if (n >= prefix.size()) return {Word{}, tail};
  return {Word(prefix.begin() + static_cast<std::ptrdiff_t>(n), prefix.end()), tail};
}

EventuallyConstantWord EventuallyConstantWord::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon + 2 != text.size())
    throw std::invalid_argument("word must have the form prefix:tail, got '" + std::string(text) + "'");
  Word tail = parse_word(text.substr(colon + 1));
  return {parse_word(text.substr(0, colon)), tail.front()};
}

std::string EventuallyConstantWord::to_string() const {
  return sg::to_string(prefix) + ":" + std::to_string(tail.value());
}

Point apply_ifs(const Word& w, Point p, const Triangle& tri) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Point& q = tri.q[static_cast<std::size_t>(it->value())];
    p = Point{(p.x + q.x) / 2.0, (p.y + q.y) / 2.0};
  }
  return p;
}

Point LatticePoint::to_point(const Triangle& tri) const {
  const double scale = std::ldexp(1.0, -level);
  const double wa = static_cast<double>(a) * scale;
  const double wb = static_cast<double>(b) * scale;
  const double wc = static_cast<double>(c) * scale;
  return {wa * tri.q[0].x + wb * tri.q[1].x + wc * tri.q[2].x, wa * tri.q[0].y + wb * tri.q[1].y + wc * tri.q[2].y};
}

LatticePoint LatticePoint::refined(int levels) const {
  return {a << levels, b << levels, c << levels, level + levels};
}

LatticePoint lattice_point(const Word& w, Letter j) {
  LatticePoint p;
  std::array<std::int64_t, 3> coord{0, 0, 0};
  coord[static_cast<std::size_t>(j.value())] = 1;
  int s = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it, ++s) {
    coord[static_cast<std::size_t>(it->value())] += std::int64_t{1} << s;
  }
  p.a = coord[0];
  p.b = coord[1];
  p.c = coord[2];
  p.level = s;
  return p;
}

std::string VertexId::to_string() const { return sg::to_string(word) + ":" + std::to_string(letter.value()); }

std::vector<std::pair<Word, Letter>> resolve_addresses(const VertexId& v) {
  if (v.word.empty()) return {{Word{}, v.letter}};
  Word other(v.word.begin(), v.word.end() - 1);
  other.push_back(v.letter);
  return {{v.word, v.letter}, {std::move(other), v.word.back()}};
}

std::span<const std::size_t> LevelGraph::neighbors(std::size_t v) const {
  const auto begin = adjacency_offsets_.at(v);
  const auto end = adjacency_offsets_.at(v + 1);
  return {adjacency_.data() + begin, end - begin};
}

const std::array<std::size_t, 3>& LevelGraph::cell(const Word& w) const {
  if (static_cast<int>(w.size()) != level_)
    throw LevelMismatchError("cell word length " + std::to_string(w.size()) + " does not match graph level " +
                             std::to_string(level_));
  return cells_.at(word_index(w));
}

std::vector<std::pair<std::size_t, std::size_t>> LevelGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  e.reserve(cells_.size() * 3);
  for (const auto& c : cells_) {
    e.emplace_back(c[0], c[1]);
    e.emplace_back(c[0], c[2]);
    e.emplace_back(c[1], c[2]);
  }
  return e;
}

std::optional<std::size_t> LevelGraph::find(const Word& w, Letter j) const {
  if (static_cast<int>(w.size()) > level_) return std::nullopt;
  std::size_t idx = word_index(w);
  for (int k = static_cast<int>(w.size()); k < level_; ++k) idx = idx * 3 + static_cast<std::size_t>(j.value());
  return cells_[idx][static_cast<std::size_t>(j.value())];
}

std::size_t LevelGraph::index_of(const Word& w, Letter j) const {
  auto idx = find(w, j);
  if (!idx)
    throw LevelMismatchError("address " + to_string(w) + ":" + std::to_string(j.value()) +
                             " is finer than graph level " + std::to_string(level_));
  return *idx;
}

std::size_t vertex_count_formula(int m) {
  std::size_t p = 1;
  for (int k = 0; k <= m; ++k) p *= 3;
  return (p + 3) / 2;
}

int max_level() {
  constexpr int default_cap = 10;
  constexpr int hard_cap = 14;
  if (const char* env = std::getenv("SG_MAX_LEVEL")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(std::min<long>(v, hard_cap));
  }
  return default_cap;
}

LevelGraph build_level_graph(int m) {
  if (m < 0) throw std::invalid_argument("graph level must be non-negative");
  if (m > max_level())
    throw ResourceError("graph level " + std::to_string(m) + " exceeds cap " + std::to_string(max_level()) +
                        " (set SG_MAX_LEVEL to raise it)");

  LevelGraph g;
  g.level_ = m;
  const std::size_t n = vertex_count_formula(m);
  g.ids_.reserve(n);
  g.lattice_.reserve(n);
  for (int i = 0; i < 3; ++i) {
    g.ids_.push_back(VertexId{Word{}, Letter(i), 0});
    LatticePoint p;
    (i == 0 ? p.a : i == 1 ? p.b : p.c) = 1;
    g.lattice_.push_back(p);
  }
  g.cells_ = {{0, 1, 2}};

  static constexpr std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (int l = 0; l < m; ++l) {
    for (auto& p : g.lattice_) p = p.refined(1);
    std::vector<std::array<std::size_t, 3>> next(g.cells_.size() * 3);
    for (std::size_t cw = 0; cw < g.cells_.size(); ++cw) {
      const auto corners = g.cells_[cw];
      const Word w = word_from_index(cw, l);
      std::array<std::array<std::size_t, 3>, 3> mid{};
      for (const auto& [i, j] : pairs) {
        const std::size_t idx = g.ids_.size();
        const auto& pi = g.lattice_[corners[static_cast<std::size_t>(i)]];
        const auto& pj = g.lattice_[corners[static_cast<std::size_t>(j)]];
        g.lattice_.push_back(LatticePoint{(pi.a + pj.a) / 2, (pi.b + pj.b) / 2, (pi.c + pj.c) / 2, l + 1});
        Word birth = w;
        birth.emplace_back(i);
        g.ids_.push_back(VertexId{std::move(birth), Letter(j), l + 1});
        mid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = idx;
        mid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = idx;
      }
      for (std::size_t k = 0; k < 3; ++k) {
        auto& sub = next[cw * 3 + k];
        for (std::size_t c = 0; c < 3; ++c) sub[c] = (c == k) ? corners[k] : mid[k][c];
      }
    }
    g.cells_ = std::move(next);
  }

  const std::size_t nv = g.ids_.size();
  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& [x, y] : g.edges()) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  g.adjacency_offsets_.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    g.adjacency_offsets_[v + 1] = g.adjacency_offsets_[v] + adj[v].size();
  }
  g.adjacency_.reserve(g.adjacency_offsets_.back());
  for (const auto& a : adj) g.adjacency_.insert(g.adjacency_.end(), a.begin(), a.end());
  return g;
}

std::shared_ptr<const LevelGraph> level_graph(int m) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const LevelGraph>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  auto g = std::make_shared<const LevelGraph>(build_level_graph(m));
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(g)).first->second;
}

}  // namespace sg
