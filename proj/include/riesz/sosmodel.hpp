#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "riesz/poly.hpp"

namespace riesz {

// Entry (i, j), i <= j, of matrix block `block` of an SDP.
struct VarRef {
  int block = 0;
  int i = 0;
  int j = 0;
  auto operator<=>(const VarRef&) const = default;
};

// Polynomial whose coefficients are affine in SDP variables:
// constant + Σ var · poly. Off-diagonal variables follow the SDPA
// convention: the stored poly multiplies Y_ij once, the symmetric twin
// is implied.
struct AffinePoly {
  RealPoly constant;
  std::vector<std::pair<VarRef, RealPoly>> terms;

  AffinePoly() = default;
  AffinePoly(int nvars, long prec) : constant(nvars, prec) {}
  int nvars() const { return constant.nvars(); }
  long precision() const { return constant.precision(); }
  int degree() const;
};

// P_i as a semialgebraic set in the C(i,2) edge variables.
struct SemialgebraicSet {
  int i = 0;
  Scalar U;
  std::vector<RealPoly> inequalities;  // g >= 0
  std::vector<std::string> names;
  std::vector<RealPoly> equalities;    // g == 0
};

// Principal minor of E(u) on the listed points.
RealPoly gram_principal_minor(int i, const std::vector<int>& points, long prec);
SemialgebraicSet build_P(int i, const Scalar& U);

struct BlockEntry {
  int i = 0;
  int j = 0;
  RealPoly poly;
};

// A matrix variable local to an identity. The identity gains Σ Y_ij · poly
// over the listed entries (i <= j).
struct SosBlock {
  std::string name;
  int size = 0;
  bool diagonal = false;  // nonnegative diagonal block instead of PSD
  bool split = false;     // sign-split free scalars, bounded by M downstream
  std::vector<BlockEntry> entries;
};

// target + Σ_blocks (...) = rhs, coefficientwise.
struct SosIdentity {
  std::string name;
  AffinePoly target;
  std::vector<SosBlock> blocks;
  RealPoly rhs;
};

// i = 2 constraint a_2 + A_2K <= f as an exact univariate identity; q2 in one
// variable u. Odd s works in w = √(2-2u) on [√(2-2U), 2], even s in u on [-1, U].
SosIdentity lukacs_pair_constraint(int s, int d, const Scalar& U, const AffinePoly& q2);

// q_i <= 0 on P_i via the degree-δ truncated quadratic module (plus the
// sign-split determinant multiplier for i = 4). With symmetry, one family of
// isotypic blocks per generator orbit under φ_i(S_i).
SosIdentity putinar_identity(int i, const AffinePoly& qi, int delta, bool symmetry, const Scalar& U);

struct LinearRow {
  std::map<VarRef, Scalar> coeffs;
  Scalar rhs;
  std::string label;
};

// One row per monomial (graded-lex) that occurs on either side. Local block k
// of the identity becomes global block first_block + k.
std::vector<LinearRow> assemble_identity_rows(const SosIdentity& id, int first_block);

}  // namespace riesz
