#include "sgspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgspec/dirichlet.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/harmonic.hpp"
#include "sgspec/oracle.hpp"
#include "sgspec/special.hpp"
#include "sgspec/tangent.hpp"

namespace sg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double tangent_verify_tol = 1e-7;
constexpr double residual_verify_tol = 1e-9;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line.push_back(',');
    line += csv_field(fields[i]);
  }
  line.push_back('\n');
  return line;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string path_string(const std::vector<double>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s.push_back(' ');
    s += format_double(path[i]);
  }
  return s;
}

template <class F>
Result guarded(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    return {domain, "", std::string("error: ") + e.what() + "\n"};
  } catch (const ConvergenceError& e) {
    return {domain, "", std::string("error: ") + e.what() + "\n"};
  } catch (const ResourceError& e) {
    return {usage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {usage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::out_of_range& e) {
    return {usage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {1, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

PieceKind parse_piece(std::string_view s) {
  if (s == "two") return PieceKind::two;
  if (s == "five_minus") return PieceKind::five_minus;
  if (s == "five_plus") return PieceKind::five_plus;
  if (s == "six") return PieceKind::six;
  throw std::invalid_argument("unknown piece '" + std::string(s) + "'");
}

bool is_dirichlet(const SpectralEigenfunction& u) {
  const CellTriple b = u.boundary();
  return u.m0() >= 1 && b.cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

SpectralEigenfunction parse_seed(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts.front();
  if (kind == "free") {
    if (parts.size() != 3) throw std::invalid_argument("free seed must be free:<lambda>:<u0>,<u1>,<u2>");
    const double lam = parse_double(parts[1], "eigenvalue");
    const auto vals = split(parts[2], ',');
    if (vals.size() != 3) throw std::invalid_argument("free seed needs three boundary values");
    const CellTriple b{parse_double(vals[0], "value"), parse_double(vals[1], "value"), parse_double(vals[2], "value")};
    return lam == 0.0 ? SpectralEigenfunction::harmonic(b) : SpectralEigenfunction::non_dirichlet(lam, b);
  }
  if (kind == "piece") {
    if (parts.size() != 3 || parts[2].empty())
      throw std::invalid_argument("piece seed must be piece:<kind>:<branches>");
    const auto br = parse_branches(parts[2]);
    return dirichlet_tangent_seed(parse_piece(parts[1]), br.front(), std::vector<Branch>(br.begin() + 1, br.end()))
        .function;
  }

  const DirichletSeries series = parse_series(kind);
  if (parts.size() < 2) throw std::invalid_argument("seed needs m0: " + std::string(text));
  const int m0 = parse_int(parts[1], "m0");
  std::optional<int> index;
  std::vector<Branch> br;
  bool have_branches = false;
  for (std::size_t i = 2; i < parts.size(); ++i) {
    if (is_digits(parts[i]) && !index && !have_branches) {
      index = parse_int(parts[i], "index");
    } else if (!have_branches) {
      br = parse_branches(parts[i]);
      have_branches = true;
    } else {
      throw std::invalid_argument("too many fields in seed '" + std::string(text) + "'");
    }
  }
  if (series == DirichletSeries::six && m0 == 1) {
    if (index) throw std::invalid_argument("six:1 is the single piece and takes no index");
    if (!br.empty() && br.front() != Branch::plus)
      throw DomainError("six series needs the plus root at level 2 (lambda = 3)");
    return six_series_piece(br.empty() ? br : std::vector<Branch>(br.begin() + 1, br.end()));
  }
  DirichletSeed seed{series, m0, index.value_or(series == DirichletSeries::six ? 3 : 1), br};
  return dirichlet_basis(seed);
}

Result cmd_spectrum(const SpectrumOptions& o) {
  return guarded([&]() -> Result {
    if (o.level < 0) throw std::invalid_argument("level must be non-negative");
    if (o.verify && o.level > dense_level_cap)
      throw std::invalid_argument("--verify needs level <= " + std::to_string(dense_level_cap));
    std::optional<DirichletSeries> only;
    if (o.series != "all") only = parse_series(o.series);
    const auto entries = enumerate_dirichlet_spectrum(o.level, only);

    std::vector<double> gaps(entries.size(), std::numeric_limits<double>::quiet_NaN());
    bool ok_verify = true;
    std::string note;
    if (o.verify) {
      const DenseSpectrum dense = dense_dirichlet_spectrum(o.level);
      for (std::size_t i = 0; i < entries.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (double mu : dense.eigenvalues) best = std::min(best, std::abs(mu - entries[i].path.back()));
        gaps[i] = best;
        if (!(best <= residual_verify_tol)) ok_verify = false;
      }
      double worst = 0.0;
      if (!only) {
        const auto cmp = compare_spectra(expand_spectrum(entries), dense.eigenvalues, residual_verify_tol);
        worst = cmp.worst_gap;
        if (!cmp.matched) ok_verify = false;
      }
      if (!(dense.max_residual <= residual_verify_tol)) ok_verify = false;
      note = "verify: " + std::string(ok_verify ? "ok" : "FAILED") + " worst_gap=" + format_double(worst) +
             " dense_residual=" + format_double(dense.max_residual) + "\n";
    }

    std::string out;
    if (o.format == "json") {
      json j;
      j["level"] = o.level;
      j["series"] = o.series;
      json rows = json::array();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        json r;
        r["series"] = to_string(e.series);
        r["m0"] = e.m0;
        r["branches"] = branch_string(e.branches);
        json path = json::array();
        for (double v : e.path) path.push_back(number(v));
        r["path"] = path;
        r["lambda_m"] = number(e.path.back());
        r["limit"] = number(e.limit);
        r["multiplicity"] = e.multiplicity;
        r["closed_form"] = e.closed_form;
        if (o.verify) r["oracle_gap"] = number(gaps[i]);
        rows.push_back(r);
      }
      j["entries"] = rows;
      if (o.verify) j["verified"] = ok_verify;
      out = dump(j);
    } else {
      std::vector<std::string> head{"series", "m0", "branches", "path", "lambda_m", "limit", "multiplicity",
                                    "closed_form"};
      if (o.verify) head.emplace_back("oracle_gap");
      out = csv_row(head);
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        std::vector<std::string> row{to_string(e.series),         std::to_string(e.m0),
                                     branch_string(e.branches),   path_string(e.path),
                                     format_double(e.path.back()), format_double(e.limit),
                                     std::to_string(e.multiplicity), e.closed_form ? "true" : "false"};
        if (o.verify) row.push_back(format_double(gaps[i]));
        out += csv_row(row);
      }
    }
    return {ok_verify ? ok : verification, out, note};
  });
}

Result cmd_eval(const EvalOptions& o) {
  return guarded([&]() -> Result {
    if (o.level < 0) throw std::invalid_argument("level must be non-negative");
    const SpectralEigenfunction u = parse_seed(o.seed);
    const LevelValues vals = eigen_values_on_level(u, o.level);
    const auto g = level_graph(o.level);

    bool ok_verify = true;
    std::string note;
    double residual = std::numeric_limits<double>::quiet_NaN();
    double distance = std::numeric_limits<double>::quiet_NaN();
    if (o.verify) {
      double scale = 1.0;
      for (double v : vals.values) scale = std::max(scale, std::abs(v));
      if (o.level >= u.m0()) {
        residual = eigen_residual(*g, vals, u.sequence().at(o.level));
        if (!(residual <= residual_verify_tol * scale)) ok_verify = false;
      }
      if (is_dirichlet(u) && o.level >= u.m0() && o.level <= 5) {
        distance = eigenspace_distance(dense_dirichlet_spectrum(o.level), u.sequence().at(o.level), vals.values);
        if (!(distance <= 1e-8)) ok_verify = false;
      }
      note = "verify: " + std::string(ok_verify ? "ok" : "FAILED") + " residual=" + format_double(residual) +
             " eigenspace_distance=" + format_double(distance) + "\n";
    }

    std::string out;
    if (o.format == "obj") {
      out = "# sgspec eval seed=" + o.seed + " level=" + std::to_string(o.level) + "\n";
      for (std::size_t x = 0; x < g->vertex_count(); ++x) {
        const Point p = g->position(x);
        out += "v " + format_double(p.x) + " " + format_double(p.y) + " " + format_double(vals.values[x]) + "\n";
      }
      for (std::size_t c = 0; c < g->cell_count(); ++c) {
        const auto& k = g->cell(c);
        out += "f " + std::to_string(k[0] + 1) + " " + std::to_string(k[1] + 1) + " " + std::to_string(k[2] + 1) + "\n";
      }
    } else if (o.format == "json") {
      json j;
      j["seed"] = o.seed;
      j["level"] = o.level;
      j["m0"] = u.m0();
      j["lambda"] = number(u.eigenvalue());
      j["lambda_m"] = number(u.sequence().at(o.level));
      json vs = json::array();
      for (std::size_t x = 0; x < g->vertex_count(); ++x) {
        const Point p = g->position(x);
        json r;
        r["id"] = x;
        r["address"] = g->vertex(x).to_string();
        r["birth_level"] = g->vertex(x).level;
        r["x"] = number(p.x);
        r["y"] = number(p.y);
        r["value"] = number(vals.values[x]);
        vs.push_back(r);
      }
      j["vertices"] = vs;
      if (o.verify) {
        j["verification"] = {{"ok", ok_verify}, {"residual", number(residual)}, {"eigenspace_distance", number(distance)}};
      }
      out = dump(j);
    } else {
      out = csv_row({"id", "address", "birth_level", "x", "y", "value"});
      for (std::size_t x = 0; x < g->vertex_count(); ++x) {
        const Point p = g->position(x);
        out += csv_row({std::to_string(x), g->vertex(x).to_string(), std::to_string(g->vertex(x).level),
                        format_double(p.x), format_double(p.y), format_double(vals.values[x])});
      }
    }
    return {ok_verify ? ok : verification, out, note};
  });
}

Result cmd_tangent(const TangentOptions& o) {
  return guarded([&]() -> Result {
    if (o.words.empty()) throw std::invalid_argument("at least one --word is required");
    const SpectralEigenfunction u = parse_seed(o.seed);
    bool ok_verify = true;

    struct Row {
      std::string word;
      int k;
      TangentTriple t;
      Eigen::Vector3d grad;
      TangentEstimate oracle;
      double deviation;
    };
    std::vector<Row> rows;
    for (const auto& text : o.words) {
      const auto w = EventuallyConstantWord::parse(text);
      Row r{w.to_string(), std::max(static_cast<int>(w.prefix.size()), u.m0()), tangent_at(u, w), {}, {},
            std::numeric_limits<double>::quiet_NaN()};
      r.grad = r.t.array() - r.t.mean();
      if (o.verify) {
        r.oracle = direct_tangent_limit(u, w, std::max(o.oracle_level, r.k));
        r.deviation = (r.t - r.oracle.value).cwiseAbs().maxCoeff();
        if (!(r.deviation <= tangent_verify_tol * std::max(1.0, r.t.cwiseAbs().maxCoeff()))) ok_verify = false;
      }
      rows.push_back(r);
    }

    std::string out;
    if (o.format == "json") {
      json j;
      j["seed"] = o.seed;
      j["lambda"] = number(u.eigenvalue());
      json arr = json::array();
      for (const auto& r : rows) {
        json e;
        e["word"] = r.word;
        e["k"] = r.k;
        e["tangent"] = {number(r.t[0]), number(r.t[1]), number(r.t[2])};
        e["gradient"] = {number(r.grad[0]), number(r.grad[1]), number(r.grad[2])};
        if (o.verify) {
          e["oracle"] = {number(r.oracle.value[0]), number(r.oracle.value[1]), number(r.oracle.value[2])};
          e["oracle_level"] = r.oracle.level;
          e["oracle_error"] = number(r.oracle.error);
          e["deviation"] = number(r.deviation);
        }
        arr.push_back(e);
      }
      j["tangents"] = arr;
      if (o.verify) j["verified"] = ok_verify;
      out = dump(j);
    } else {
      std::vector<std::string> head{"word", "k", "lambda", "t0", "t1", "t2", "g0", "g1", "g2"};
      if (o.verify)
        for (const char* h : {"oracle_t0", "oracle_t1", "oracle_t2", "oracle_level", "oracle_error", "deviation"})
          head.emplace_back(h);
      out = csv_row(head);
      for (const auto& r : rows) {
        std::vector<std::string> f{r.word,
                                   std::to_string(r.k),
                                   format_double(u.eigenvalue()),
                                   format_double(r.t[0]),
                                   format_double(r.t[1]),
                                   format_double(r.t[2]),
                                   format_double(r.grad[0]),
                                   format_double(r.grad[1]),
                                   format_double(r.grad[2])};
        if (o.verify) {
          for (int i = 0; i < 3; ++i) f.push_back(format_double(r.oracle.value[i]));
          f.push_back(std::to_string(r.oracle.level));
          f.push_back(format_double(r.oracle.error));
          f.push_back(format_double(r.deviation));
        }
        out += csv_row(f);
      }
    }
    std::string note;
    if (o.verify) note = std::string("verify: ") + (ok_verify ? "ok" : "FAILED") + "\n";
    return {ok_verify ? ok : verification, out, note};
  });
}

Result cmd_special(const SpecialOptions& o) {
  return guarded([&]() -> Result {
    if (o.fn != "psi" && o.fn != "upsilon") throw std::invalid_argument("--fn must be psi or upsilon");
    const auto r = split(o.range, ':');
    if (r.size() != 3) throw std::invalid_argument("range must be a:b:n");
    const double a = parse_double(r[0], "range start");
    const double b = parse_double(r[1], "range end");
    const int n = parse_int(r[2], "point count");
    if (n < 1) throw std::invalid_argument("point count must be at least 1");
    ConvergenceConfig cfg;
    cfg.tol = o.tol;
    cfg.validate();

    struct Row {
      double z, value, error, audit;
      std::string status;
    };
    std::vector<Row> rows;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < n; ++i) {
      const double z = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
      Row row{z, nan, nan, nan, "ok"};
      try {
        const Estimate e = o.fn == "psi" ? big_psi_estimate(z, cfg) : upsilon_estimate(z, cfg);
        row.value = e.value;
        row.error = e.error;
        if (o.fn == "psi" && std::abs(5.0 * z) <= cfg.stability_radius)
          row.audit = std::abs(psi(e.value) - big_psi(5.0 * z, cfg));
      } catch (const DomainError& e) {
        row.status = std::string(e.what()).find("pole") != std::string::npos ? "pole" : "domain";
      } catch (const ConvergenceError&) {
        row.status = "no_convergence";
      }
      rows.push_back(row);
    }

    std::string out;
    if (o.format == "json") {
      json j;
      j["fn"] = o.fn;
      j["tol"] = o.tol;
      json arr = json::array();
      for (const auto& row : rows)
        arr.push_back({{"z", number(row.z)},
                       {"value", number(row.value)},
                       {"error", number(row.error)},
                       {"audit", number(row.audit)},
                       {"status", row.status}});
      j["rows"] = arr;
      out = dump(j);
    } else {
      out = csv_row({"z", "value", "error", "audit", "status"});
      for (const auto& row : rows) {
        const auto f = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
        out += csv_row({format_double(row.z), f(row.value), f(row.error), f(row.audit), row.status});
      }
    }
    return {ok, out, ""};
  });
}

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Spectral decimation on the Sierpinski gasket", "sgspec"};
  app.require_subcommand(1);

  SpectrumOptions so;
  EvalOptions eo;
  TangentOptions to;
  SpecialOptions po;
  std::string output;

  auto* spectrum = app.add_subcommand("spectrum", "Dirichlet spectrum of the level-m graph by spectral decimation");
  spectrum->add_option("--level,-m", so.level, "graph level")->required();
  spectrum->add_option("--series", so.series, "two, five, six or all")
      ->check(CLI::IsMember({"two", "five", "six", "all"}));
  spectrum->add_option("--format", so.format)->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_flag("--verify", so.verify, "compare with the dense spectrum");
  spectrum->add_option("--output,-o", output, "write to a file instead of stdout");

  auto* eval = app.add_subcommand("eval", "eigenfunction values on V_m");
  eval->add_option("--seed", eo.seed, "seed specification")->required();
  eval->add_option("--level,-m", eo.level, "graph level")->required();
  eval->add_option("--format", eo.format)->check(CLI::IsMember({"csv", "json", "obj"}));
  eval->add_flag("--verify", eo.verify, "check the eigen-equation residual");
  eval->add_option("--output,-o", output, "write to a file instead of stdout");

  auto* tangent = app.add_subcommand("tangent", "harmonic tangents and gradients");
  tangent->add_option("--seed", to.seed, "seed specification")->required();
  tangent->add_option("--word,-w", to.words, "prefix:tail, repeatable")->required();
  tangent->add_option("--format", to.format)->check(CLI::IsMember({"csv", "json"}));
  tangent->add_flag("--verify", to.verify, "compare with the direct limit");
  tangent->add_option("--oracle-level", to.oracle_level, "truncation level of the direct limit")
      ->check(CLI::Range(1, 200));
  tangent->add_option("--output,-o", output, "write to a file instead of stdout");

  auto* special = app.add_subcommand("special", "tables of Psi and Upsilon");
  special->add_option("--fn", po.fn)->check(CLI::IsMember({"psi", "upsilon"}))->required();
  special->add_option("--range", po.range, "a:b:n")->required();
  special->add_option("--tol", po.tol, "relative tolerance");
  special->add_option("--format", po.format)->check(CLI::IsMember({"csv", "json"}));
  special->add_option("--output,-o", output, "write to a file instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int rc = app.exit(e, out, err);
    return {rc == 0 ? ok : usage, out.str(), err.str()};
  }

  Result res;
  if (spectrum->parsed())
    res = cmd_spectrum(so);
  else if (eval->parsed())
    res = cmd_eval(eo);
  else if (tangent->parsed())
    res = cmd_tangent(to);
  else
    res = cmd_special(po);

  if (!output.empty() && !res.out.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) return {usage, "", "error: cannot open " + output + "\n"};
    f << res.out;
    res.out.clear();
  }
  return res;
}

}  // namespace sg::cli
