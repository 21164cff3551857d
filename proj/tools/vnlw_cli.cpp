#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vnlw/errors.hpp"
#include "vnlw/problem.hpp"

namespace {

struct ModeArgs {
  std::string spec_file;
  std::string out_dir = "out";
  double tol_weak = -1.0;
  double tol_alg = -1.0;
};

void add_mode(CLI::App& app, const std::string& name, const std::string& desc,
              ModeArgs& args, vnlw::ProblemSpec::Mode mode, int& exit_code) {
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->add_option("spec-file", args.spec_file, "problem description (JSON)")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--tol-weak", args.tol_weak, "override the weak-residual tolerance");
  sub->add_option("--tol-alg", args.tol_alg, "override the algebraic tolerance");
  sub->callback([&args, mode, &exit_code]() {
    vnlw::ProblemSpec spec = vnlw::parse_problem(args.spec_file);
    if (spec.mode != mode)
      throw vnlw::ValidationError("problem file requests a different mode than the subcommand");
    if (args.tol_weak > 0.0) spec.tol_weak = args.tol_weak;
    if (args.tol_alg > 0.0) spec.tol_alg = args.tol_alg;
    exit_code = vnlw::run(spec, args.out_dir);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet solver for the stationary bipartite wave equation "
               "(-Lap_x + Lap_y) Phi = 0 on box domains, with spectral time "
               "evolution and self-verification"};
  app.require_subcommand(1);

  ModeArgs solve_args, evolve_args, verify_args;
  int exit_code = 0;
  add_mode(app, "solve", "solve a boundary/source problem", solve_args,
           vnlw::ProblemSpec::Mode::Solve, exit_code);
  add_mode(app, "evolve", "propagate an initial state", evolve_args,
           vnlw::ProblemSpec::Mode::Evolve, exit_code);
  add_mode(app, "verify", "run the invariant suite", verify_args,
           vnlw::ProblemSpec::Mode::Verify, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const vnlw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const vnlw::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const vnlw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
