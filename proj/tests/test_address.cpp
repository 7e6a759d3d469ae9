#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "sgspec/address.hpp"
#include "sgspec/errors.hpp"
#include "support.hpp"

using namespace sg;

namespace {

// F_i written out as an explicit affine map.
Point affine(int i, Point p) {
  const Triangle tri;
  return {0.5 * p.x + 0.5 * tri.q[i].x, 0.5 * p.y + 0.5 * tri.q[i].y};
}

bool close(Point a, Point b, double tol = 1e-12) { return std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol; }

Word random_word(int len) {
  Word w;
  for (int k = 0; k < len; ++k) w.push_back(Letter(sgtest::uniform_int(0, 2)));
  return w;
}

}  // namespace

TEST_CASE("letters and words") {
  CHECK_THROWS_AS(Letter(3), std::invalid_argument);
  CHECK(Letter(2).shifted(1) == Letter(0));
  CHECK(Letter(0).shifted(-1) == Letter(2));

  const Word w = parse_word("0121");
  CHECK(to_string(w) == "0121");
  CHECK(word_index(w) == 0 * 27 + 1 * 9 + 2 * 3 + 1);
  CHECK(word_from_index(word_index(w), 4) == w);
  CHECK_THROWS(parse_word("013"));
}

TEST_CASE("eventually constant words") {
  const auto w = EventuallyConstantWord::parse("01:2");
  CHECK(w.to_string() == "01:2");
  CHECK(to_string(w.truncate(5)) == "01222");
  CHECK(w.at(1) == Letter(0));
  CHECK(w.at(9) == Letter(2));

  // canonical form drops prefix letters equal to the tail
  CHECK(EventuallyConstantWord::parse("0122:2") == w);
  CHECK(EventuallyConstantWord::parse(":0").prefix.empty());
  CHECK(w.shifted(1).to_string() == "1:2");
  CHECK(w.shifted(4).to_string() == ":2");
}

TEST_CASE("apply_ifs") {
  const Triangle tri;
  const Point p{0.3, 0.1};
  const Point id = apply_ifs({}, p);
  CHECK(id.x == p.x);
  CHECK(id.y == p.y);
  CHECK(close(apply_ifs(parse_word("0"), tri.q[0]), tri.q[0]));

  // F_0 o F_1 (q_1) by explicit composition
  const Point expect = affine(0, affine(1, tri.q[1]));
  CHECK(close(apply_ifs(parse_word("01"), tri.q[1]), expect));
  CHECK(expect.x == doctest::Approx(0.5));
  CHECK(expect.y == doctest::Approx(0.0));
}

TEST_CASE("apply_ifs composes") {
  for (int trial = 0; trial < 50; ++trial) {
    const Word a = random_word(sgtest::uniform_int(0, 6));
    const Word b = random_word(sgtest::uniform_int(0, 6));
    const Point p{sgtest::uniform(0, 1), sgtest::uniform(0, 0.8)};
    CHECK(close(apply_ifs(concat(a, b), p), apply_ifs(a, apply_ifs(b, p))));
  }
}

TEST_CASE("level graph sizes") {
  const auto g0 = build_level_graph(0);
  CHECK(g0.vertex_count() == 3);
  CHECK(g0.edges().size() == 3);

  const auto g1 = build_level_graph(1);
  CHECK(g1.vertex_count() == 6);
  for (std::size_t v = 3; v < 6; ++v) CHECK(g1.neighbors(v).size() == 4);

  CHECK(build_level_graph(2).vertex_count() == 15);

  for (int m = 0; m <= 7; ++m) {
    const auto g = level_graph(m);
    CHECK(g->vertex_count() == vertex_count_formula(m));
    CHECK(g->cell_count() == static_cast<std::size_t>(std::pow(3, m)));
    for (std::size_t v = 0; v < g->vertex_count(); ++v)
      CHECK(g->neighbors(v).size() == (g->is_interior(v) ? 4u : 2u));
    CHECK(g->edges().size() == 3 * g->cell_count());
  }
}

TEST_CASE("vertex order nests across levels") {
  const auto g3 = level_graph(3);
  const auto g4 = level_graph(4);
  for (std::size_t v = 0; v < g3->vertex_count(); ++v) CHECK(g3->vertex(v) == g4->vertex(v));
}

TEST_CASE("cells carry their corner vertices") {
  const auto g = level_graph(4);
  for (std::size_t c = 0; c < g->cell_count(); ++c) {
    const Word w = word_from_index(c, 4);
    for (int j = 0; j < 3; ++j) {
      const std::size_t v = g->cell(c)[j];
      CHECK(close(g->position(v), apply_ifs(w, Triangle{}.q[j])));
      CHECK(g->index_of(w, Letter(j)) == v);
    }
  }
}

TEST_CASE("vertex deduplication matches coordinates") {
  const auto g = level_graph(5);
  std::set<std::pair<long long, long long>> seen;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    const Point p = g->position(v);
    seen.insert({std::llround(p.x * 1e9), std::llround(p.y * 1e9)});
  }
  CHECK(seen.size() == g->vertex_count());
}

TEST_CASE("resolve_addresses") {
  const auto g = level_graph(2);
  const auto q0 = resolve_addresses(g->vertex(0));
  REQUIRE(q0.size() == 1);
  CHECK(q0[0].first.empty());
  CHECK(q0[0].second == Letter(0));

  const auto mid = resolve_addresses(g->vertex(g->index_of(parse_word("0"), Letter(1))));
  REQUIRE(mid.size() == 2);
  CHECK(mid[0] == std::pair{parse_word("0"), Letter(1)});
  CHECK(mid[1] == std::pair{parse_word("1"), Letter(0)});

  const auto v = g->index_of(parse_word("01"), Letter(2));
  CHECK(v == g->index_of(parse_word("02"), Letter(1)));
  const auto both = resolve_addresses(g->vertex(v));
  REQUIRE(both.size() == 2);
  CHECK(both[0] == std::pair{parse_word("01"), Letter(2)});
  CHECK(both[1] == std::pair{parse_word("02"), Letter(1)});

  // every junction: both addresses land on the same point
  const auto g5 = level_graph(5);
  for (std::size_t k = 3; k < g5->vertex_count(); ++k) {
    const auto addrs = resolve_addresses(g5->vertex(k));
    REQUIRE(addrs.size() == 2);
    const Point a = apply_ifs(addrs[0].first, Triangle{}.q[addrs[0].second.value()]);
    const Point b = apply_ifs(addrs[1].first, Triangle{}.q[addrs[1].second.value()]);
    CHECK(close(a, b));
    CHECK(close(a, g5->position(k)));
  }
}

TEST_CASE("level cap") {
  CHECK(max_level() >= 10);
  CHECK_THROWS_AS(build_level_graph(max_level() + 1), ResourceError);
  CHECK_THROWS_AS(build_level_graph(-1), std::invalid_argument);
}
