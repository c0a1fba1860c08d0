#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "riesz/sdp.hpp"

namespace riesz {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

}  // namespace

std::vector<std::vector<std::vector<double>>> SolverResult::y_blocks(const SdpProblem& shape) const {
  std::vector<std::vector<std::vector<double>>> out;
  for (const auto& b : shape.blocks) out.emplace_back(b.size, std::vector<double>(b.size, 0.0));
  for (const auto& e : y) {
    if (e.block < 0 || e.block >= static_cast<int>(out.size())) continue;
    auto& m = out[e.block];
    if (e.i >= static_cast<int>(m.size()) || e.j >= static_cast<int>(m.size())) continue;
    m[e.i][e.j] = m[e.j][e.i] = e.value;
  }
  return out;
}

SolverResult parse_solver_output(const std::string& text) {
  // Our wrappers print "key: value" lines and "Y block i j value" (1-based);
  // SDPA-family solvers print "objValPrimal = ..." and "phase.value = ...".
  static const std::regex kLabeled(R"(^\s*(status|primal_objective|dual_objective|iterations)\s*:\s*(\S+))");
  static const std::regex kY(R"(^\s*Y\s+(\d+)\s+(\d+)\s+(\d+)\s+(\S+))");
  static const std::regex kSdpa(R"(^\s*(objValPrimal|objValDual|phase\.value|Iteration)\s*=\s*(\S+))");
  SolverResult r;
  r.log = text;
  bool primal = false, dual = false;
  std::istringstream in(text);
  std::string line;
  std::smatch m;
  auto num = [](const std::string& s) { return std::stod(s); };
  try {
    while (std::getline(in, line)) {
      if (std::regex_search(line, m, kLabeled)) {
        const std::string k = m[1], v = m[2];
        if (k == "status") r.status = v;
        if (k == "primal_objective") r.primal_objective = num(v), primal = true;
        if (k == "dual_objective") r.dual_objective = num(v), dual = true;
        if (k == "iterations") r.iterations = std::stoi(v);
      } else if (std::regex_search(line, m, kY)) {
        r.y.push_back({std::stoi(m[1]) - 1, std::stoi(m[2]) - 1, std::stoi(m[3]) - 1, num(m[4])});
      } else if (std::regex_search(line, m, kSdpa)) {
        const std::string k = m[1], v = m[2];
        if (k == "objValPrimal") r.primal_objective = num(v), primal = true;
        if (k == "objValDual") r.dual_objective = num(v), dual = true;
        if (k == "Iteration") r.iterations = std::stoi(v);
        if (k == "phase.value") r.status = v == "pdOPT" ? "OPTIMAL" : v;
      }
    }
  } catch (const std::exception& e) {
    throw SolverError(SolverError::Kind::kUnparsable, std::string("unparsable solver output: ") + e.what());
  }
  if (!primal || !dual || r.status.empty())
    throw SolverError(SolverError::Kind::kUnparsable, "solver output lacks objective values or status");
  if (r.status != "OPTIMAL" && r.status != "ALMOST_OPTIMAL")
    throw SolverError(SolverError::Kind::kNonConvergence, "solver terminated with status " + r.status);
  return r;
}

SolverResult solve_external(const std::string& input_path, const std::string& command_template,
                            const std::string& output_path) {
  if (!std::filesystem::exists(input_path)) throw std::runtime_error("missing SDP file " + input_path);
  std::string cmd = command_template;
  replace_all(cmd, "{input}", shell_quote(input_path));
  replace_all(cmd, "{output}", shell_quote(output_path));
  const std::string log_path = output_path + ".log";
  std::filesystem::remove(output_path);
  int rc = std::system((cmd + " > " + shell_quote(log_path) + " 2>&1").c_str());
  const std::string log = read_file(log_path);
  if (rc == -1 || (WIFEXITED(rc) && WEXITSTATUS(rc) == 127))
    throw SolverError(SolverError::Kind::kNotFound, "solver command not found: " + command_template);
  std::string text = read_file(output_path);
  if (text.empty()) text = log;
  SolverResult r;
  try {
    r = parse_solver_output(text);
  } catch (const SolverError& e) {
    if (WIFEXITED(rc) && WEXITSTATUS(rc) != 0 && e.kind == SolverError::Kind::kUnparsable)
      throw SolverError(SolverError::Kind::kNonConvergence,
                        "solver exited with code " + std::to_string(WEXITSTATUS(rc)) + ": " + log.substr(0, 400));
    throw;
  }
  r.log = log;
  return r;
}

}  // namespace riesz
