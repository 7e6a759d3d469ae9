// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sgspec/address.hpp"
#include "sgspec/cli.hpp"
#include "sgspec/decimation.hpp"
#include "sgspec/dirichlet.hpp"
#include "sgspec/harmonic.hpp"
#include "sgspec/oracle.hpp"
#include "sgspec/special.hpp"
#include "sgspec/tangent.hpp"

using namespace sg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // The failure is a property of the mathematics, not of the code; it is
  // printed as FAIL but does not change the exit status.
  bool known = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double maxdiff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

EventuallyConstantWord ecw(const char* s) { return EventuallyConstantWord::parse(s); }

Outcome level_one_spectrum() {
  const auto t0 = Clock::now();
  const auto dense = dense_dirichlet_spectrum(1);
  const std::vector<double> expect{2.0, 5.0, 5.0};
  const auto vs_expected = compare_spectra(dense.eigenvalues, expect, 1e-12);
  const auto enumerated = expand_spectrum(enumerate_dirichlet_spectrum(1));
  const bool exact = enumerated == expect;
  const double t = seconds_since(t0);
  return {vs_expected.matched && exact && t < 1.0,
          "dense gap " + fmt(vs_expected.worst_gap) + ", enumeration exact " + (exact ? "yes" : "no") + ", " + fmt(t) + " s"};
}

Outcome spectrum_equivalence() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const auto dense = dense_dirichlet_spectrum(m);
    const auto entries = enumerate_dirichlet_spectrum(m);
    const auto cmp = compare_spectra(expand_spectrum(entries), dense.eigenvalues, 1e-9);
    ok = ok && cmp.matched;
    worst = std::max(worst, cmp.worst_gap);
    // five-series eigenspaces without a closed form are taken from the dense solve
    for (const auto& e : entries) {
      if (e.closed_form || e.m0 != m) continue;
      const auto dim = static_cast<std::size_t>(dense.eigenspace(e.path.back()).cols());
      ok = ok && dim == e.multiplicity;
    }
  }
  const double t = seconds_since(t0);
  return {ok && t < 30.0, "worst gap " + fmt(worst) + ", " + fmt(t) + " s"};
}

Outcome eigen_equation_residual() {
  std::vector<SpectralEigenfunction> fs;
  for (const auto& e : enumerate_dirichlet_spectrum(4)) {
    if (!e.closed_form) continue;
    for (const auto& seed : dirichlet_seeds(e.series, e.m0, e.branches)) fs.push_back(dirichlet_basis(seed));
  }
  fs.push_back(six_series_piece());
  for (double lam : {-30.0, -2.5, 0.0, 1.0, 8.0, 19.0, 44.0, 75.0, 120.0, 333.0})
    fs.push_back(SpectralEigenfunction::non_dirichlet(lam, CellTriple(1.0, -0.4, 0.3)));

  double worst = 0.0, slowest = 0.0;
  for (const auto& u : fs) {
    const auto t0 = Clock::now();
    for (int m = std::max(1, u.m0()); m <= 8; ++m) {
      const auto lv = eigen_values_on_level(u, m);
      worst = std::max(worst, eigen_residual(*level_graph(m), lv, u.sequence().at(m)));
    }
    slowest = std::max(slowest, seconds_since(t0));
  }
  return {worst < 1e-9 && slowest < 10.0, std::to_string(fs.size()) + " functions, max residual " + fmt(worst) +
                                              ", slowest " + fmt(slowest) + " s"};
}

Outcome limit_actions() {
  std::vector<EigenvalueSequence> seqs;
  for (double lam : {-20.0, 3.5, 27.0, 64.0, 140.0}) seqs.push_back(EigenvalueSequence::from_eigenvalue(lam));
  seqs.push_back(dirichlet_sequence(DirichletSeries::two, 1, parse_branches("-")));
  seqs.push_back(dirichlet_sequence(DirichletSeries::two, 1, parse_branches("+-")));
  seqs.push_back(dirichlet_sequence(DirichletSeries::five, 1, parse_branches("+")));
  seqs.push_back(dirichlet_sequence(DirichletSeries::six, 2, parse_branches("+-")));
  seqs.push_back(six_series_piece().sequence());

  double worst = 0.0;
  for (const auto& seq : seqs) {
    const int m0 = seq.last_plus();
    const Eigen::Matrix3d prod = truncated_tail_product(seq, m0, 25);
    for (auto v : {BasisVector::alpha, BasisVector::beta, BasisVector::gamma}) {
      const Eigen::Vector3d closed = limit_action(seq, m0, v);
      worst = std::max(worst, maxdiff(closed, prod * basis_vector(v, seq, m0)));
    }
  }
  return {worst < 1e-8, std::to_string(seqs.size()) + " sequences, max entry gap " + fmt(worst)};
}

Outcome tangent_vs_direct() {
  const std::vector<SpectralEigenfunction> fs{
      SpectralEigenfunction::non_dirichlet(15.0, CellTriple(1.0, 0.0, -0.5)),
      SpectralEigenfunction::non_dirichlet(-9.0, CellTriple(0.2, 0.7, 1.0)),
      dirichlet_basis({DirichletSeries::two, 1, 1, parse_branches("+")}),
      dirichlet_basis({DirichletSeries::five, 2, 3, {}}),
      dirichlet_basis({DirichletSeries::six, 2, 5, parse_branches("+-+")}),
      six_series_piece(),
  };
  // all tails, plus both addresses of the junctions F_0 q_1, F_1 q_2, F_02 q_1
  const char* words[] = {":0", ":1", ":2", "0:1", "1:0", "1:2", "2:1", "01:2", "02:1", "210:2"};
  double worst = 0.0;
  int pairs = 0;
  for (const auto& u : fs) {
    for (const char* w : words) {
      const Eigen::Vector3d t = tangent_at(u, ecw(w));
      const auto o = direct_tangent_limit(u, ecw(w), 25);
      worst = std::max(worst, maxdiff(t, o.value) / std::max(1.0, t.cwiseAbs().maxCoeff()));
      ++pairs;
    }
  }
  return {worst < 1e-7 && pairs >= 20, std::to_string(pairs) + " pairs, max scaled deviation " + fmt(worst)};
}

Outcome six_series_value() {
  const auto piece = six_series_piece();
  const bool seq_ok = std::abs(piece.sequence().at(1) - 6.0) < 1e-12 && std::abs(piece.sequence().at(2) - 3.0) < 1e-12 &&
                      piece.sequence().last_plus() == 2;
  const double lam = piece.eigenvalue();
  const Eigen::Vector3d expect = lam / 9.0 * Eigen::Vector3d(0, 1, -1);
  const double closed = maxdiff(tangent_at(piece, ecw(":0")), expect);
  const double oracle = maxdiff(direct_tangent_limit(piece, ecw(":0"), 25).value, expect);
  return {seq_ok && closed < 1e-7 && oracle < 1e-7,
          "lambda " + fmt(lam) + ", closed form " + fmt(closed) + ", oracle " + fmt(oracle)};
}

Outcome normal_derivatives() {
  const double lams[] = {-25.0, -6.0, -0.5, 0.7, 4.0, 11.0, 23.0, 37.0, 58.0, 96.0};
  const CellTriple triples[] = {CellTriple(1, 1, 1), CellTriple(1, 0, 0), CellTriple(0, 1, -1), CellTriple(0.3, -0.8, 0.6)};
  double worst = 0.0;
  for (double lam : lams) {
    for (const auto& b : triples) {
      const auto u = SpectralEigenfunction::non_dirichlet(lam, b);
      const VertexEvaluator f = [&](const Word& w, Letter j) { return u.value_at(w, j); };
      for (int i = 0; i < 3; ++i) {
        const double nd = normal_derivative(u, Letter(i));
        const auto lim = normal_derivative_limit(f, Letter(i), 20);
        worst = std::max(worst, std::abs(nd - lim.value) / std::max(1.0, std::abs(nd)));
      }
    }
  }
  return {worst < 1e-6, "40 functions x 3 vertices, max deviation " + fmt(worst)};
}

Outcome special_functions() {
  const bool zero = big_psi(0.0) == 0.0;
  const double h = 1e-6;
  const double slope = (big_psi(h) - big_psi(-h)) / (2 * h);
  double feq = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double z = -10.0 + 0.1 * k;
    const double a = big_psi(z);
    feq = std::max(feq, std::abs(a * (5.0 - a) - big_psi(5.0 * z)));
  }
  double tau_gap = 0.0;
  for (double lam : {-40.0, 12.0, 75.0}) {
    const auto seq = EigenvalueSequence::from_eigenvalue(lam);
    for (int k = 1; k <= 6; ++k) tau_gap = std::max(tau_gap, std::abs(tau(k, seq) - upsilon(std::pow(5.0, -k) * lam)));
  }
  const auto six = six_series_piece().sequence();
  for (int k = 1; k <= 6; ++k)
    tau_gap = std::max(tau_gap, std::abs(tau(k, six) - upsilon(std::pow(5.0, -k) * six.limit())));
  return {zero && std::abs(slope - 2.0 / 3.0) < 1e-6 && feq < 1e-10 && tau_gap < 1e-12,
          "Psi'(0) " + fmt(slope) + ", functional equation " + fmt(feq) + ", tau gap " + fmt(tau_gap)};
}

Outcome harmonic_degeneration() {
  const auto zero = EigenvalueSequence::harmonic();
  bool exact = true;
  const CellTriple b(0.6, -1.1, 2.0);
  for (const char* w : {"0", "12", "2021", "0120210"}) exact = exact && extend_eigen(b, parse_word(w), zero, 0) == extend_harmonic(b, parse_word(w));

  // M_0 - I has the first-order term (7/90) 5^-k lambda, so the 1e-6 bound
  // is out of reach at k = 0 once |lambda| exceeds about 1.3e-5.
  double m0_gap = 0.0, first_order = 0.0;
  for (double lam : {9e-5, -9e-5, 1e-6}) {
    const auto seq = EigenvalueSequence::from_eigenvalue(lam);
    for (int k = 0; k <= 4; ++k) {
      const double dev = (m0_matrix(seq, k).matrix - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
      const double x = std::pow(5.0, -k) * std::abs(lam);
      m0_gap = std::max(m0_gap, dev);
      first_order = std::max(first_order, std::abs(dev - 7.0 / 90.0 * x) / x);
    }
  }
  double t_gap = 0.0;
  const auto h = SpectralEigenfunction::harmonic(b);
  for (const char* w : {":0", ":1", ":2", "01:2", "1202:0"}) t_gap = std::max(t_gap, maxdiff(tangent_at(h, ecw(w)), b));
  const bool pass = exact && m0_gap < 1e-6 && t_gap < 1e-12;
  const bool explained = exact && t_gap < 1e-12 && first_order < 1e-4;
  return {pass,
          std::string("extension exact ") + (exact ? "yes" : "no") + ", M0 gap " + fmt(m0_gap) +
              " (relative distance to (7/90) 5^-k |lambda| " + fmt(first_order) + "), tangent gap " + fmt(t_gap),
          !pass && explained};
}

Outcome interval_oracle() {
  double worst = 0.0;
  int n = 0;
  for (double lam : {0.3, 2.0, 5.5, 13.0, 21.0, 31.0, 45.0, 70.0}) {
    const double s = std::sqrt(lam);
    for (double x0 : {0.0, 0.1, 0.25, 0.5, 0.6, 0.9, 1.0}) {
      for (auto [f0, f1] : {std::pair{1.0, 1.0}, std::pair{0.5, -2.0}, std::pair{-1.0, 0.0}}) {
        const double c1 = (f1 - f0 * std::cos(s)) / std::sin(s);
        const double u = c1 * std::sin(s * x0) + f0 * std::cos(s * x0);
        const double du = s * (c1 * std::cos(s * x0) - f0 * std::sin(s * x0));
        const Eigen::Vector2d expect(u - du * x0, u + du * (1 - x0));
        worst = std::max(worst, maxdiff(interval_tangent(lam, x0, f0, f1), expect));
        ++n;
      }
    }
  }
  return {worst < 1e-10, std::to_string(n) + " grid points, max deviation " + fmt(worst)};
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> cmds = {
      {"spectrum", "--level", "3", "--verify"},
      {"eval", "--seed", "six:2:3", "--level", "4", "--format", "obj"},
      {"tangent", "--seed", "six:1", "--word", ":0", "--word", "01:2", "--verify"},
      {"special", "--fn", "psi", "--range", "-10:10:201"},
  };
  bool same = true;
  for (const auto& c : cmds) {
    const auto a = cli::run(c);
    const auto b = cli::run(c);
    same = same && a.code == 0 && a.out == b.out && a.err == b.err;
  }
  const auto fail = cli::run({"tangent", "--seed", "six:1", "--word", ":0", "--verify", "--oracle-level", "3"});
  return {same && fail.code == 4,
          std::string("repeat identical ") + (same ? "yes" : "no") + ", failing verify exit " + std::to_string(fail.code)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"level-1 Dirichlet spectrum", level_one_spectrum},
      {"spectrum equivalence m = 1..3", spectrum_equivalence},
      {"eigen-equation residual up to level 8", eigen_equation_residual},
      {"limit actions on alpha, beta, gamma", limit_actions},
      {"tangent_at against the direct limit", tangent_vs_direct},
      {"six-series tangent lambda/9 (0,1,-1)", six_series_value},
      {"normal derivative against the limit", normal_derivatives},
      {"special functions", special_functions},
      {"harmonic degeneration", harmonic_degeneration},
      {"interval oracle", interval_oracle},
      {"CLI determinism and exit code 4", cli_determinism},
  };
  int failures = 0;
  int unexplained = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    unexplained += !o.pass && !o.known;
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(),
                !o.pass && o.known ? " [unattainable as stated]" : "");
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return unexplained == 0 ? 0 : 1;
}
