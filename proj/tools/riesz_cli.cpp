// Command-line driver: generate / solve / verify / run the five-point
// relaxation, print the symmetry block-size table, run the finite oracle.
//
// Exit codes: 0 success, 2 verification failed, 3 solver failure,
// 4 invalid configuration, 1 anything else.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "riesz/pipeline.hpp"

namespace fs = std::filesystem;
using namespace riesz;

namespace {

struct Overrides {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);
    static const char* keys[] = {"s",           "n-particles", "d",       "delta",           "precision-bits",
                                 "upper-bound", "u-threshold", "m-bound", "solver-cmd",      "symmetry",
                                 "seed",        "workdir",     "u-mode",  "solver-tolerance", "dual-samples", "fallback-solver-cmd"};
    for (const char* k : keys) app->add_option(std::string("--") + k, values[k]);
  }

  Config build() const {
    Config c = config_file.empty() ? Config{} : load_config_file(config_file);
    for (const auto& [k, v] : values)
      if (!v.empty()) set_config_value(c, k, v);
    c.validate();
    return c;
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int report_error(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz five-point lower bounds via a two-point-correlation SDP"};
  app.require_subcommand(1);

  Overrides gen_o, solve_o, verify_o, run_o;
  auto* gen = app.add_subcommand("generate", "assemble, prune and write problem.dat-s");
  gen_o.attach(gen);
  auto* solve = app.add_subcommand("solve", "run the external solver on problem.dat-s");
  solve_o.attach(solve);
  auto* verify = app.add_subcommand("verify", "check a solved instance against the reference energy");
  verify_o.attach(verify);
  auto* run = app.add_subcommand("run", "generate, solve and verify");
  run_o.attach(run);

  int molien_delta = 20;
  long molien_prec = 128;
  auto* mol = app.add_subcommand("molien", "block sizes with and without symmetry reduction");
  mol->add_option("--max-delta", molien_delta)->check(CLI::Range(0, 40));
  mol->add_option("--precision-bits", molien_prec);

  int or_points = 8, or_N = 3, or_s = 1;
  std::uint64_t or_seed = 1;
  std::string or_solver, or_workdir = "work";
  auto* oracle = app.add_subcommand("oracle", "finite-set hierarchy against brute force");
  oracle->add_option("--points", or_points)->check(CLI::Range(2, 12));
  oracle->add_option("--n-particles", or_N)->check(CLI::Range(1, 6));
  oracle->add_option("--s", or_s)->check(CLI::PositiveNumber);
  oracle->add_option("--seed", or_seed);
  oracle->add_option("--solver-cmd", or_solver);
  oracle->add_option("--workdir", or_workdir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (*mol) {
      std::cout << "delta  Q4  Q4,2,g  Q4,3,g  |  sym: Q4  Q4,2,g  Q4,3,g\n";
      for (const auto& r : block_size_table(molien_delta, molien_prec))
        std::cout << std::setw(5) << r.delta << std::setw(5) << r.plain[0] << std::setw(8) << r.plain[1]
                  << std::setw(8) << r.plain[2] << "  |" << std::setw(9) << r.symmetric[0] << std::setw(8)
                  << r.symmetric[1] << std::setw(8) << r.symmetric[2] << "\n";
      return 0;
    }
    if (*oracle) {
      auto r = run_finite_oracle(or_points, or_N, or_s, or_seed, or_solver, or_workdir, 256);
      std::cout << std::setprecision(12);
      for (size_t t = 0; t < r.L.size(); ++t) std::cout << "L_" << t + 1 << " = " << r.L[t] << "\n";
      std::cout << "brute_force = " << r.brute_force << "\n";
      for (size_t i = 0; i < r.binomial_sums.size(); ++i)
        std::cout << "sum_|S|=" << i << " y_S = " << r.binomial_sums[i] << " (C(N,i) = " << r.binomial_targets[i]
                  << ")\n";
      return 0;
    }

    Overrides& o = *gen ? gen_o : *solve ? solve_o : *verify ? verify_o : run_o;
    Config c;
    try {
      c = o.build();
    } catch (const ConfigError& e) {
      return report_error(e, 4);
    }

    PipelineReport report;
    if (*run) {
      try {
        report = run_pipeline(c);
      } catch (const StageError& e) {
        return report_error(e, e.exit_code);
      }
      std::cout << report.text();
      return report.verified ? 0 : 2;
    }
    if (*gen) {
      auto g = generate_stage(c, report);
      write_report(c, report);
      std::cout << report.text();
      return 0;
    }
    const fs::path problem = fs::path(instance_dir(c)) / "problem.dat-s";
    if (*solve) {
      if (!fs::exists(problem)) return report_error(std::runtime_error("no " + problem.string() + "; run generate"), 4);
      try {
        solve_stage(c, problem.string(), report);
      } catch (const SolverError& e) {
        return report_error(e, 3);
      }
      std::cout << report.text();
      return 0;
    }
    // verify: regenerate the (cached) program, read the stored solution.
    const fs::path out = fs::path(instance_dir(c)) / "solver.out";
    if (!fs::exists(out)) return report_error(std::runtime_error("no " + out.string() + "; run solve"), 4);
    auto g = generate_stage(c, report);
    SolverResult sol;
    try {
      sol = parse_solver_output(read_file(out));
    } catch (const SolverError& e) {
      return report_error(e, 3);
    }
    report.set("bound", std::to_string(sol.bound()));
    verify_stage(c, g, sol, report);
    write_report(c, report);
    std::cout << report.text();
    return report.verified ? 0 : 2;
  } catch (const ConfigError& e) {
    return report_error(e, 4);
  } catch (const SolverError& e) {
    return report_error(e, 3);
  } catch (const std::exception& e) {
    return report_error(e, 1);
  }
}
