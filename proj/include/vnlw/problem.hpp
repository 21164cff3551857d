#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vnlw {

/// Parsed batch problem description. JSON schema (all keys top-level):
///   mode        "solve" | "evolve" | "verify"            (required)
///   n           1 | 2                                    (default 1)
///   length      positive number                          (default 1.0)
///   n_cells     integer >= 2                             (required)
///   potential   array of n_cells-1 reals                 (optional)
///   data        builtin string or {"file": "field.csv"}  (mode-dependent)
///   times       array of ascending reals, or {"count": n, "t_max": T}
///               (evolve only; default 256 samples on [0, 2*pi))
///   tolerances  {"weak": x, "alg": y}                    (optional)
/// Builtins: "tensor-quadratic" (F = x^2 y^2), "tensor-linear" (F = x y),
/// "sine-gap k l" (source from the eigenmode pair k,l), "coherent-mix [K]"
/// (evolution initial state mixing the lowest K modes, default 3).
struct ProblemSpec {
  enum class Mode { Solve, Evolve, Verify };

  struct Data {
    std::string builtin;          // empty when a file is given
    std::vector<double> params;   // builtin parameters
    std::filesystem::path file;   // empty when a builtin is given
  };

  Mode mode = Mode::Solve;
  int dim = 1;
  double length = 1.0;
  int n_cells = 0;
  std::optional<Eigen::VectorXd> potential;
  Data data;
  std::vector<double> times;
  double tol_weak = 1e-10;
  double tol_alg = 1e-12;
  std::filesystem::path base_dir;  // directory of the spec file
};

/// Parses and validates a problem file. Throws ParseError with location
/// context on malformed JSON, ValidationError naming the violated invariant
/// otherwise.
ProblemSpec parse_problem(const std::filesystem::path& path);

/// Executes the pipeline and writes outputs into out_dir.
///   solve  -> theta.csv, phi.csv, report.txt
///   evolve -> state_####.csv, norms.csv, report.txt
///   verify -> report.txt, one pass/fail line per property (also printed)
/// Returns 0 on success, 2 when a numerical check exceeds its tolerance.
/// Validation problems throw (the CLI maps them to exit code 1).
int run(const ProblemSpec& spec, const std::filesystem::path& out_dir);

}  // namespace vnlw
