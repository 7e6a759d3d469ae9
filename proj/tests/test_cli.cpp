#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgspec/address.hpp"
#include "sgspec/cli.hpp"
#include "sgspec/harmonic.hpp"

using namespace sg;
using sg::cli::run;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(-2.0) == "-2");
  CHECK(std::stod(cli::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(cli::format_double(std::nan("")) == "nan");
  CHECK(cli::format_double(-INFINITY) == "-inf");
}

TEST_CASE("seed grammar") {
  CHECK(cli::parse_seed("free:0:1,1,1").boundary() == CellTriple(1, 1, 1));
  CHECK(cli::parse_seed("two:1:+").sequence().branch(2) == Branch::plus);
  CHECK(cli::parse_seed("five:2:3").m0() == 2);
  CHECK(cli::parse_seed("six:2:4:+-").m0() == 2);
  CHECK(cli::parse_seed("six:1").m0() == 1);
  CHECK(cli::parse_seed("piece:five_minus:+").m0() == 0);
  CHECK_THROWS(cli::parse_seed("seven:1"));
  CHECK_THROWS(cli::parse_seed("free:1:1,2"));
}

TEST_CASE("spectrum command") {
  const auto r = run({"spectrum", "--level", "1"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  const auto lam = column(rows[0], "lambda_m");
  const auto mult = column(rows[0], "multiplicity");
  CHECK(rows[1][lam] == "2");
  CHECK(rows[1][mult] == "1");
  CHECK(rows[2][lam] == "5");
  CHECK(rows[2][mult] == "2");

  CHECK(csv_rows(run({"spectrum", "--level", "0"}).out).size() == 1);

  const auto v = run({"spectrum", "--level", "2", "--verify"});
  CHECK(v.code == 0);
  const auto vr = csv_rows(v.out);
  const auto gap = column(vr[0], "oracle_gap");
  for (std::size_t i = 1; i < vr.size(); ++i) CHECK(std::stod(vr[i][gap]) < 1e-9);

  const auto j = nlohmann::json::parse(run({"spectrum", "--level", "2", "--format", "json"}).out);
  CHECK(j.is_object());
}

TEST_CASE("eval command") {
  const auto c = run({"eval", "--seed", "free:0:1,1,1", "--level", "3"});
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  CHECK(rows.size() == vertex_count_formula(3) + 1);
  const auto val = column(rows[0], "value");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][val] == "1");

  // re-ingest and check the eigen-equation
  const auto e = run({"eval", "--seed", "six:2:3", "--level", "4"});
  REQUIRE(e.code == 0);
  const auto er = csv_rows(e.out);
  LevelValues lv{4, {}};
  for (std::size_t i = 1; i < er.size(); ++i) lv.values.push_back(std::stod(er[i][column(er[0], "value")]));
  const auto u = cli::parse_seed("six:2:3");
  CHECK(eigen_residual(*level_graph(4), lv, u.sequence().at(4)) < 1e-9);

  const auto fig = csv_rows(run({"eval", "--seed", "six:2:3", "--level", "2"}).out);
  int twos = 0, minus = 0, plus = 0;
  for (std::size_t i = 1; i < fig.size(); ++i) {
    const double x = std::stod(fig[i][column(fig[0], "value")]);
    twos += x == 2.0;
    minus += x == -1.0;
    plus += x == 1.0;
  }
  CHECK(twos == 1);
  CHECK(minus == 4);
  CHECK(plus == 2);

  const auto obj = run({"eval", "--seed", "two:1", "--level", "2", "--format", "obj"});
  CHECK(obj.out.find("\nv ") != std::string::npos);
  CHECK(obj.out.find("\nf ") != std::string::npos);
}

TEST_CASE("tangent command") {
  const auto r = run({"tangent", "--seed", "six:1", "--word", ":0", "--verify"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  const auto lam = std::stod(rows[1][column(rows[0], "lambda")]);
  CHECK(std::stod(rows[1][column(rows[0], "t1")]) == doctest::Approx(lam / 9.0).epsilon(1e-9));
  CHECK(std::stod(rows[1][column(rows[0], "deviation")]) < 1e-7);

  const auto h = run({"tangent", "--seed", "free:0:1,2,3", "--word", "01:2", "--word", ":1"});
  const auto hr = csv_rows(h.out);
  REQUIRE(hr.size() == 3);
  CHECK(std::stod(hr[1][column(hr[0], "t2")]) == doctest::Approx(3.0));
}

TEST_CASE("special command") {
  const auto p = run({"special", "--fn", "psi", "--range", "-10:10:201"});
  REQUIRE(p.code == 0);
  const auto rows = csv_rows(p.out);
  CHECK(rows.size() == 202);
  const auto audit = column(rows[0], "audit");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][audit]) < 1e-10);
  CHECK(rows[101][column(rows[0], "value")] == "0");

  const auto u = csv_rows(run({"special", "--fn", "upsilon", "--range", "0:0:1"}).out);
  CHECK(u[1][column(u[0], "value")] == "0.5");
}

TEST_CASE("determinism and exit codes") {
  const std::vector<std::vector<std::string>> cmds = {
      {"spectrum", "--level", "3", "--verify"},
      {"eval", "--seed", "five:2:1:+", "--level", "3", "--format", "json"},
      {"tangent", "--seed", "two:1", "--word", "0:1", "--word", "1:0", "--verify"},
      {"special", "--fn", "upsilon", "--range", "-5:40:10"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run({"tangent", "--seed", "six:1", "--word", ":0", "--verify", "--oracle-level", "3"}).code == 4);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"eval", "--seed", "bogus", "--level", "1"}).code == 2);
  CHECK(run({"eval", "--seed", "two:1", "--level", "99"}).code == 2);
  CHECK(run({"special", "--fn", "psi", "--range", "0:1:0"}).code == 2);
  CHECK(run({"eval", "--seed", "six:2:3:-", "--level", "3"}).code == 3);
}
