#include "riesz/pipeline.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "riesz/groups.hpp"
#include "riesz/sphere.hpp"

namespace fs = std::filesystem;

namespace riesz {

// ---------------------------------------------------------------------------
// Dual feasibility

namespace {

// A polynomial with double coefficients, for fast sampling.
struct DoublePoly {
  std::vector<std::vector<int>> exps;
  std::vector<double> coef;

  double eval(const std::vector<double>& u) const {
    double s = 0;
    for (size_t t = 0; t < coef.size(); ++t) {
      double m = coef[t];
      for (size_t k = 0; k < u.size(); ++k)
        for (int e = 0; e < exps[t][k]; ++e) m *= u[k];
      s += m;
    }
    return s;
  }
};

DoublePoly evaluate_affine(const AffinePoly& q, const std::vector<std::vector<std::vector<double>>>& y) {
  const long prec = q.precision();
  RealPoly acc = q.constant;
  for (const auto& [v, p] : q.terms) {
    double w = y.at(v.block).at(v.i).at(v.j) * (v.i == v.j ? 1.0 : 2.0);
    if (w != 0.0) acc += p * Scalar::from_double(w, prec);
  }
  DoublePoly out;
  for (const auto& [m, c] : acc.terms()) {
    std::vector<int> e(m.nvars);
    for (int k = 0; k < m.nvars; ++k) e[k] = m.e[k];
    out.exps.push_back(std::move(e));
    out.coef.push_back(c.to_double());
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 15) {
  std::ostringstream o;
  o.precision(digits);
  o << v;
  return o.str();
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

DualFeasibility sample_dual_feasibility(const E2Program& program,
                                        const std::vector<std::vector<std::vector<double>>>& y, int s,
                                        const Scalar& U, int n_samples, std::uint64_t seed) {
  DualFeasibility out;
  out.per_cardinality.fill(-INFINITY);
  std::mt19937_64 rng(seed);
  const double u_max = U.to_double();
  for (int i = 0; i <= 4; ++i) {
    DoublePoly q = evaluate_affine(program.q.at(i), y);
    const int count = n_samples / 5 + (i < n_samples % 5 ? 1 : 0);
    for (int k = 0; k < count; ++k) {
      std::vector<std::array<double, 3>> pts;
      std::vector<double> u;
      for (long attempt = 0;; ++attempt) {
        if (attempt > 1000000)
          throw std::runtime_error("no independent set of cardinality " + std::to_string(i) + " found (U too tight)");
        pts.clear();
        for (int a = 0; a < i; ++a) pts.push_back(random_sphere_point_double(rng));
        u.clear();
        bool ok = true;
        for (auto [a, b] : edge_list(i)) {
          double d = pts[a][0] * pts[b][0] + pts[a][1] * pts[b][1] + pts[a][2] * pts[b][2];
          ok &= d <= u_max;
          u.push_back(d);
        }
        if (ok) break;
      }
      double v = q.eval(u);
      if (i == 2) v -= std::pow(2 - 2 * u[0], -0.5 * s);
      out.per_cardinality[i] = std::max(out.per_cardinality[i], v);
      ++out.samples;
    }
  }
  out.max_violation = 0;
  for (double v : out.per_cardinality)
    if (std::isfinite(v)) out.max_violation = std::max(out.max_violation, v);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

void PipelineReport::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : fields)
    if (k == key) {
      v = value;
      return;
    }
  fields.emplace_back(key, value);
}

std::string PipelineReport::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return {};
}

std::string PipelineReport::text() const {
  std::string out;
  for (const auto& [k, v] : fields) out += k + " = " + v + "\n";
  return out;
}

std::string PipelineReport::json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : fields) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (!v.empty() && end && *end == '\0' && std::isfinite(x)) {
      j[k] = x;
    } else {
      j[k] = v;
    }
  }
  j["verified"] = verified;
  return j.dump(2) + "\n";
}

std::string instance_dir(const Config& c) { return (fs::path(c.workdir) / c.instance_id()).string(); }

void write_report(const Config& c, const PipelineReport& report) {
  fs::create_directories(instance_dir(c));
  std::ofstream(fs::path(instance_dir(c)) / "report.txt") << report.text();
  std::ofstream(fs::path(instance_dir(c)) / "result.json") << report.json();
}

// ---------------------------------------------------------------------------
// Stages

GenerateResult generate_stage(const Config& c, PipelineReport& report) {
  auto t0 = std::chrono::steady_clock::now();
  c.validate();
  const long prec = c.precision_bits;
  E2Params p;
  p.N = c.N;
  p.s = c.s;
  p.d = c.d;
  p.delta = c.delta;
  p.U = resolve_U(c);
  p.symmetry = c.symmetry;
  p.M_bound = Scalar::from_string(c.m_bound, prec);

  GenerateResult g;
  InnerProductRewriter rw(prec);
  g.program = assemble_E2(p, rw);
  g.rows_before = static_cast<int>(g.program.sdp.constraints.size());
  g.program.sdp = prune_constraints(g.program.sdp, &g.prune);

  fs::create_directories(instance_dir(c));
  g.problem_path = (fs::path(instance_dir(c)) / "problem.dat-s").string();
  const std::string text = format_sdpa_sparse(g.program.sdp);
  g.reused_file = read_text(g.problem_path) == text;
  if (!g.reused_file) {
    std::ofstream f(g.problem_path, std::ios::binary);
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + g.problem_path);
  }
  int largest = 0;
  for (const auto& b : g.program.sdp.blocks) largest = std::max(largest, b.size);
  report.set("config_hash", c.hash());
  report.set("instance", c.instance_id());
  report.set("s", std::to_string(c.s));
  report.set("N", std::to_string(c.N));
  report.set("d", std::to_string(c.d));
  report.set("delta", std::to_string(c.delta));
  report.set("symmetry", c.symmetry ? "on" : "off");
  report.set("U", p.U.to_string(30));
  report.set("blocks", std::to_string(g.program.sdp.blocks.size()));
  report.set("largest_block", std::to_string(largest));
  report.set("rows_assembled", std::to_string(g.rows_before));
  report.set("rows_duplicate", std::to_string(g.prune.duplicates));
  report.set("rows_dependent", std::to_string(g.prune.dependent));
  report.set("rows", std::to_string(g.program.sdp.constraints.size()));
  report.set("problem_file", g.problem_path);
  report.set("problem_file_reused", g.reused_file ? "yes" : "no");
  report.set("time_generate_s", fmt(seconds_since(t0), 4));
  return g;
}

SolverResult solve_stage(const Config& c, const std::string& problem_path, PipelineReport& report) {
  auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = fs::path(problem_path).parent_path();
  const std::string out = (dir / "solver.out").string();
  const std::string cmd = c.solver_cmd.empty() ? default_solver_command() : c.solver_cmd;
  const std::string fallback =
      c.fallback_solver_cmd.empty() ? default_fallback_solver_command()
                                    : (c.fallback_solver_cmd == "none" ? "" : c.fallback_solver_cmd);
  auto keep_log = [&](const std::string& name) {
    std::error_code ec;
    fs::rename(out + ".log", dir / name, ec);
  };
  SolverResult r;
  std::string used = cmd, primary_status, fallback_note = "no";
  bool retry = false;
  try {
    r = solve_external(problem_path, cmd, out);
    primary_status = r.status;
    retry = r.status != "OPTIMAL";
  } catch (const SolverError& e) {
    keep_log("solver.log");
    if (fallback.empty() || e.kind == SolverError::Kind::kNotFound) throw;
    primary_status = e.what();
    retry = true;
  }
  // Degenerate instances (no strictly feasible point) can stall a
  // double-precision interior-point method; a second opinion is cheap here.
  if (retry && !fallback.empty()) {
    std::error_code ec;
    keep_log("solver.primary.log");
    fs::rename(out, dir / "solver.primary.out", ec);
    try {
      r = solve_external(problem_path, fallback, out);
      used = fallback;
      fallback_note = "yes";
    } catch (const SolverError& e) {
      keep_log("solver.log");
      if (r.status.empty()) throw;  // the primary gave nothing usable either
      fs::rename(dir / "solver.primary.out", out, ec);
      fallback_note = std::string("failed: ") + e.what();
    }
  }
  keep_log("solver.log");
  report.set("solver_cmd", used);
  report.set("solver_primary_status", primary_status);
  report.set("solver_fallback", fallback_note);
  report.set("solver_status", r.status);
  report.set("solver_iterations", std::to_string(r.iterations));
  report.set("primal_objective", fmt(r.primal_objective, 17));
  report.set("dual_objective", fmt(r.dual_objective, 17));
  report.set("bound", fmt(r.bound(), 17));
  report.set("solver_output", out);
  report.set("solver_log", (dir / "solver.log").string());
  report.set("time_solve_s", fmt(seconds_since(t0), 4));
  return r;
}

bool verify_stage(const Config& c, const GenerateResult& gen, const SolverResult& sol, PipelineReport& report) {
  auto t0 = std::chrono::steady_clock::now();
  const long prec = c.precision_bits;
  const double tol = 10 * c.solver_tolerance;
  double reference;
  if (c.N == 5) {
    const double eb = energy_bipyramid(c.s, prec).to_double();
    auto sp = optimize_square_pyramid(c.s, prec);
    report.set("energy_bipyramid", energy_bipyramid(c.s, prec).to_string(30));
    report.set("energy_square_pyramid", sp.energy.to_string(30));
    report.set("square_pyramid_z", sp.z.to_string(25));
    reference = std::min(eb, sp.energy.to_double());
  } else {
    reference = resolve_upper_bound(c).to_double();
  }
  const double bound = sol.bound();
  report.set("reference_energy", fmt(reference, 17));
  report.set("gap", fmt(reference - bound, 6));
  bool ok = true;
  const bool safe = bound <= reference + tol;
  report.set("check_lower_bound", safe ? "PASS" : "FAIL");
  ok &= safe;

  if (c.dual_samples > 0) {
    if (sol.y.empty()) {
      report.set("check_dual_feasibility", "FAIL (solver reported no Y solution)");
      ok = false;
    } else {
      auto df = sample_dual_feasibility(gen.program, sol.y_blocks(gen.program.sdp), c.s, resolve_U(c),
                                        c.dual_samples, c.seed);
      report.set("dual_samples", std::to_string(df.samples));
      report.set("dual_max_violation", fmt(df.max_violation, 6));
      for (int i = 0; i <= 4; ++i) report.set("dual_violation_" + std::to_string(i), fmt(df.per_cardinality[i], 6));
      const bool feasible = df.max_violation <= tol;
      report.set("check_dual_feasibility", feasible ? "PASS" : "FAIL");
      ok &= feasible;
    }
  }
  report.set("tolerance", fmt(tol, 6));
  report.set("verdict", ok ? "PASS" : "FAIL");
  report.set("time_verify_s", fmt(seconds_since(t0), 4));
  report.verified = ok;
  return ok;
}

PipelineReport run_pipeline(const Config& c) {
  PipelineReport report;
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw StageError("config", e.what(), 4);
  }
  GenerateResult gen;
  try {
    gen = generate_stage(c, report);
  } catch (const ConfigError& e) {
    throw StageError("config", e.what(), 4);
  } catch (const std::exception& e) {
    throw StageError("generate", e.what(), 1);
  }
  SolverResult sol;
  try {
    sol = solve_stage(c, gen.problem_path, report);
  } catch (const std::exception& e) {
    report.set("verdict", "FAIL");
    report.set("error", std::string("solve: ") + e.what());
    write_report(c, report);
    throw StageError("solve", e.what(), 3);
  }
  try {
    verify_stage(c, gen, sol, report);
  } catch (const std::exception& e) {
    throw StageError("verify", e.what(), 1);
  }
  write_report(c, report);
  return report;
}

// ---------------------------------------------------------------------------
// Tables and oracles

std::vector<BlockSizeRow> block_size_table(int max_delta, long prec) {
  const PermGroup g4 = edge_action_image(4);
  const RealPoly gens[3] = {RealPoly::constant(6, Scalar(1, prec)), gram_principal_minor(4, {0, 1}, prec),
                            gram_principal_minor(4, {0, 1, 2}, prec)};
  const int shift[3] = {0, 2, 3};
  std::vector<MolienTable> tables;
  for (const auto& g : gens) tables.push_back(molien(edge_group_irreps(stabilizer(g4, g), 4, prec), max_delta / 2));
  std::vector<BlockSizeRow> rows;
  for (int delta = 0; delta <= max_delta; ++delta) {
    BlockSizeRow r;
    r.delta = delta;
    for (int k = 0; k < 3; ++k) {
      int v = delta - shift[k];
      if (v < 0) continue;
      int h = v / 2;
      r.plain[k] = binomial(6 + h, 6);
      r.symmetric[k] = tables[k].largest_block(h);
    }
    rows.push_back(r);
  }
  return rows;
}

FiniteOracleResult run_finite_oracle(int n_points, int N, int s, std::uint64_t seed, const std::string& solver_cmd,
                                     const std::string& workdir, long prec) {
  std::mt19937_64 rng(seed);
  PointList pts;
  for (int k = 0; k < n_points; ++k) pts.push_back(random_sphere_point(rng, prec));
  const Matrix f = riesz_potentials(pts, s);
  FiniteOracleResult out;
  out.brute_force = brute_force_min_energy(f, N).to_double();
  const fs::path dir = fs::path(workdir) / ("oracle-n" + std::to_string(n_points) + "-N" + std::to_string(N) + "-s" +
                                            std::to_string(s) + "-seed" + std::to_string(seed));
  fs::create_directories(dir);
  const std::string cmd = solver_cmd.empty() ? default_solver_command() : solver_cmd;
  for (int t = 1; t <= N; ++t) {
    auto fp = assemble_finite_Lt(f, N, t);
    const std::string in = (dir / ("L" + std::to_string(t) + ".dat-s")).string();
    emit_sdpa_sparse(fp.sdp, in);
    auto r = solve_external(in, cmd, (dir / ("L" + std::to_string(t) + ".out")).string());
    out.L.push_back(-r.bound());
    if (t == N) {
      auto y = r.y_blocks(fp.sdp);
      out.binomial_sums.assign(N + 1, 0.0);
      for (size_t k = 0; k < fp.subsets.size(); ++k) {
        int card = std::popcount(fp.subsets[k]);
        if (card <= N) out.binomial_sums[card] += y[1][k][k];
      }
      for (int i = 0; i <= N; ++i) out.binomial_targets.push_back(static_cast<double>(binomial(N, i)));
    }
  }
  return out;
}

}  // namespace riesz
