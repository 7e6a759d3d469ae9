#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sgspec/decimation.hpp"

namespace sg::cli {

enum ExitCode : int { ok = 0, usage = 2, domain = 3, verification = 4 };

struct Result {
  int code = ok;
  std::string out;
  std::string err;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// Seed grammar:
///   free:<lambda>:<u0>,<u1>,<u2>       non-Dirichlet (lambda = 0 is harmonic)
///   two:1[:<branches>]
///   five:<m0>[:<chain>][:<branches>]  chains numbered from 1, m0 in {1, 2}
///   six:<m0>[:<vertex>][:<branches>]  vertex index in V_{m0-1}, m0 >= 2
///   six:1[:<branches>]                the single six-series piece
///   piece:<two|five_minus|five_plus|six>:<branches>
/// Branch strings use '+' and '-' and start at level m0 + 1 (level 1 for
/// pieces, level 2 for the six piece).
SpectralEigenfunction parse_seed(std::string_view text);

struct SpectrumOptions {
  int level = 1;
  std::string series = "all";
  std::string format = "csv";
  bool verify = false;
};

struct EvalOptions {
  std::string seed;
  int level = 0;
  std::string format = "csv";
  bool verify = false;
};

struct TangentOptions {
  std::string seed;
  std::vector<std::string> words;
  std::string format = "csv";
  bool verify = false;
  int oracle_level = 25;
};

struct SpecialOptions {
  std::string fn = "psi";
  std::string range = "0:0:1";
  double tol = 1e-13;
  std::string format = "csv";
};

Result cmd_spectrum(const SpectrumOptions& o);
Result cmd_eval(const EvalOptions& o);
Result cmd_tangent(const TangentOptions& o);
Result cmd_special(const SpecialOptions& o);

/// Parses argv-style arguments (without the program name) and dispatches.
/// With --output the payload goes to that file instead of Result::out.
Result run(const std::vector<std::string>& args);

}  // namespace sg::cli
