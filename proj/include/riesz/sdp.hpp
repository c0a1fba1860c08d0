#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/invariants.hpp"
#include "riesz/linalg.hpp"
#include "riesz/sosmodel.hpp"

namespace riesz {

enum class BlockKind { kPsd, kDiagonal };

struct SdpBlock {
  std::string name;
  int size = 0;
  BlockKind kind = BlockKind::kPsd;
};

// Upper-triangle entry (i <= j, zero-based) of one block of a matrix.
struct SdpEntry {
  int block = 0;
  int i = 0;
  int j = 0;
  Scalar value;
};

struct SdpConstraint {
  std::string label;
  Scalar rhs;
  std::vector<SdpEntry> entries;
};

// SDPA dual form: maximize <F0, Y> subject to <F_k, Y> = c_k, Y blockwise
// PSD (diagonal blocks: nonnegative). An off-diagonal entry v of F stands
// for v at (i,j) and (j,i), so it contributes 2·v·Y_ij.
struct SdpProblem {
  long precision = kDefaultPrecision;
  std::vector<SdpBlock> blocks;
  std::vector<SdpConstraint> constraints;  // c_k = constraints[k].rhs
  std::vector<SdpEntry> objective;         // F0

  // Throws std::invalid_argument on entries outside their block or below
  // the diagonal, and on off-diagonal entries of diagonal blocks.
  void validate() const;
  // Sorts entries by (block, i, j) and merges repeats; drops exact zeros.
  void canonicalize();
};

// x·y >= U marks pairs excluded from configurations of energy below B.
Scalar derive_threshold_U(int s, const Scalar& B);

struct E2Params {
  int N = 5;
  int s = 1;
  int d = 0;
  int delta = 2;
  Scalar U;
  bool symmetry = true;
  Scalar M_bound;  // defaults to 1000 when zero
};

// Assembled E*_{2,d,δ} together with the polynomials q_0..q_4 whose
// coefficients reference its variables (for sampling dual feasibility).
struct E2Program {
  SdpProblem sdp;
  std::vector<AffinePoly> q;
  int a_block = -1;  // a_i^+ at (2i,2i), a_i^- at (2i+1,2i+1)
  std::map<std::string, int> block_counts;  // by family prefix
};

E2Program assemble_E2(const E2Params& params, InnerProductRewriter& rewriter);
E2Program assemble_E2(const E2Params& params);

struct PruneReport {
  int duplicates = 0;
  int dependent = 0;
  int core_rows = 0;  // rows left for numerical rank detection
  bool double_shadow = false;
};

// Removes duplicate rows (tolerance 2^(-prec/2)) and rows linearly dependent
// on the rest (pivot threshold 2^(-prec/4) on unit-normalized rows).
SdpProblem prune_constraints(const SdpProblem& problem, PruneReport* report = nullptr);

std::string format_sdpa_sparse(const SdpProblem& problem, int digits = 40);
void emit_sdpa_sparse(const SdpProblem& problem, const std::string& path, int digits = 40);
SdpProblem parse_sdpa_sparse(const std::string& text, long prec = kDefaultPrecision);
SdpProblem read_sdpa_sparse(const std::string& path, long prec = kDefaultPrecision);

// Moment relaxation L_t of N-point energy minimization over a finite set of
// points, with all subsets independent. Block 0 is M_t(y) over I_t, block 1
// the diagonal y_S over |S| <= 2t. L_t = -<F0, Y>.
struct FiniteMomentProgram {
  int n = 0;
  int N = 0;
  int t = 0;
  Matrix potentials;                   // symmetric, zero diagonal
  std::vector<std::uint32_t> moment;   // I_t as bitmasks
  std::vector<std::uint32_t> subsets;  // |S| <= 2t, graded order
  std::map<std::uint32_t, int> y_index;
  SdpProblem sdp;
};

FiniteMomentProgram assemble_finite_Lt(const Matrix& potentials, int N, int t);
// Riesz-s potentials ‖x-y‖^(-s) of a point list.
Matrix riesz_potentials(const std::vector<std::vector<Scalar>>& points, int s);
// Minimum of Σ_{pairs} potential over all N-subsets.
Scalar brute_force_min_energy(const Matrix& potentials, int N);

struct SolverError : std::runtime_error {
  enum class Kind { kNotFound, kNonConvergence, kUnparsable };
  Kind kind;
  SolverError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct SolutionEntry {
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0;
};

struct SolverResult {
  std::string status;  // OPTIMAL, ALMOST_OPTIMAL, ...
  double primal_objective = 0;
  double dual_objective = 0;  // <F0, Y>: the safe side for a maximization
  int iterations = 0;
  std::vector<SolutionEntry> y;  // Y solution when the solver reports it
  std::string log;

  double bound() const { return dual_objective; }
  // Y as per-block dense matrices (diagonal blocks as n×n diagonal).
  std::vector<std::vector<std::vector<double>>> y_blocks(const SdpProblem& shape) const;
};

// Fills {input} and {output} in the template, runs it through the shell and
// parses the labeled result lines (ours) or SDPA-style summary lines.
SolverResult solve_external(const std::string& input_path, const std::string& command_template,
                            const std::string& output_path);
SolverResult parse_solver_output(const std::string& text);

}  // namespace riesz
