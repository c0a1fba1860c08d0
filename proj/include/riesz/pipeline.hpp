#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/sdp.hpp"

namespace riesz {

// --- Reference configurations -------------------------------------------

using PointList = std::vector<std::vector<Scalar>>;

// Σ_{i<j} ‖x_i - x_j‖^(-s); points must be unit (to 1e-30) and distinct.
Scalar riesz_energy(const PointList& points, int s);

// Two poles and an equatorial equilateral triangle.
PointList bipyramid_points(long prec);
// 6/2^(s/2) + 3/3^(s/2) + 1/4^(s/2)
Scalar energy_bipyramid(int s, long prec);

// Apex (0,0,1) over a square base at height z.
PointList square_pyramid_points(const Scalar& z);
Scalar energy_square_pyramid(int s, const Scalar& z);
struct PyramidOptimum {
  Scalar z;
  Scalar energy;
};
// Golden-section search over z ∈ (-1, 1) to 1e-20.
PyramidOptimum optimize_square_pyramid(int s, long prec);

// --- Configuration --------------------------------------------------------

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int s = 1;
  int N = 5;
  int d = 6;
  int delta = 6;
  long precision_bits = 256;
  std::string u_mode = "from-upper-bound";  // or "explicit"
  std::string upper_bound;                  // B; empty: bipyramid energy (N = 5)
  std::string u_threshold;                  // U when u_mode = explicit
  std::string m_bound = "1000";
  std::string solver_cmd;  // {input} {output}; empty: bundled Clarabel wrapper
  // Re-solve with this when the primary stops short of OPTIMAL; empty: the
  // bundled multiprecision SDPAP wrapper, "none": never.
  std::string fallback_solver_cmd;
  bool symmetry = true;
  std::uint64_t seed = 1;
  std::string workdir = "work";
  double solver_tolerance = 1e-7;  // absolute; matches the double-precision default solver
  int dual_samples = 10000;

  // Throws ConfigError.
  void validate() const;
  // One "key = value" line per field, fixed order.
  std::string canonical() const;
  std::string hash() const;  // FNV-1a of canonical(), 16 hex digits
  std::string instance_id() const;
};

// Accepts the names of the config file keys and of the long CLI flags
// (dashes or underscores). Throws ConfigError on unknown keys / bad values.
void set_config_value(Config& c, const std::string& key, const std::string& value);
Config parse_config_text(const std::string& text, Config base = {});
Config load_config_file(const std::string& path, Config base = {});

std::string default_solver_command();
std::string default_fallback_solver_command();
Scalar resolve_upper_bound(const Config& c);
Scalar resolve_U(const Config& c);

// --- Pipeline ---------------------------------------------------------------

// A failure labeled with its pipeline stage.
struct StageError : std::runtime_error {
  std::string stage;
  int exit_code;
  StageError(std::string st, const std::string& what, int code)
      : std::runtime_error(st + ": " + what), stage(std::move(st)), exit_code(code) {}
};

struct DualFeasibility {
  double max_violation = 0;
  std::array<double, 5> per_cardinality{};  // max of a_i + A₂K(S) - f(S)
  int samples = 0;
};

// Evaluates q_i at the solved values and samples independent sets of each
// cardinality 0..4 (pairwise u <= U) by rejection.
DualFeasibility sample_dual_feasibility(const E2Program& program,
                                        const std::vector<std::vector<std::vector<double>>>& y, int s,
                                        const Scalar& U, int n_samples, std::uint64_t seed);

struct GenerateResult {
  E2Program program;  // pruned sdp; q_i refer to its blocks
  PruneReport prune;
  std::string problem_path;
  int rows_before = 0;
  bool reused_file = false;
};

struct PipelineReport {
  std::vector<std::pair<std::string, std::string>> fields;  // ordered
  bool verified = false;
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  std::string text() const;  // key = value lines
  std::string json() const;
};

std::string instance_dir(const Config& c);
GenerateResult generate_stage(const Config& c, PipelineReport& report);
SolverResult solve_stage(const Config& c, const std::string& problem_path, PipelineReport& report);
bool verify_stage(const Config& c, const GenerateResult& gen, const SolverResult& sol, PipelineReport& report);
// generate → prune → emit → solve → verify; writes report.txt and
// result.json into the instance directory.
PipelineReport run_pipeline(const Config& c);
void write_report(const Config& c, const PipelineReport& report);

// --- Tables and oracles -----------------------------------------------------

struct BlockSizeRow {
  int delta = 0;
  std::array<long, 3> plain{};      // Q_4, Q_{4,2,g}, Q_{4,3,g}
  std::array<long, 3> symmetric{};  // largest isotypic block of each
};
std::vector<BlockSizeRow> block_size_table(int max_delta, long prec);

struct FiniteOracleResult {
  std::vector<double> L;  // L_1..L_N
  double brute_force = 0;
  std::vector<double> binomial_sums;  // Σ_{|S|=i} y_S at t = N, i = 0..N
  std::vector<double> binomial_targets;
};
FiniteOracleResult run_finite_oracle(int n_points, int N, int s, std::uint64_t seed, const std::string& solver_cmd,
                                     const std::string& workdir, long prec);

}  // namespace riesz
