#pragma once

#include <compare>
#include <string>
#include <vector>

#include "riesz/harmonics.hpp"
#include "riesz/poly.hpp"

namespace riesz {

enum class TauKind { kEmpty = 0, kSingle = 1, kPair = 2 };

// Index of a copy of an O(3) irrep inside the functions on X₂ = ∪_{i≤2} V^i/S_i.
struct TauIndex {
  TauKind kind = TauKind::kEmpty;
  int l1 = 0;
  int l2 = 0;  // pair only, l1 <= l2

  static TauIndex empty() { return {}; }
  static TauIndex single(int l) { return {TauKind::kSingle, l, 0}; }
  static TauIndex pair(int a, int b) { return {TauKind::kPair, std::min(a, b), std::max(a, b)}; }

  int cardinality() const { return static_cast<int>(kind); }
  int weight() const {
    switch (kind) {
      case TauKind::kEmpty: return 0;
      case TauKind::kSingle: return l1;
      default: return l1 + l2;
    }
  }
  std::string str() const;
  auto operator<=>(const TauIndex&) const = default;
};

// R_{(ell,p),d}, ordered by weight then l1.
std::vector<TauIndex> build_index_set(const IrrepLabel& label, int d);
// Labels with ell <= ell_max (default 2d) whose index set is nonempty.
std::vector<IrrepLabel> labels_for_degree(int d, int ell_max = -1);

// e_{(ell,p),tau,m}: a function on the stratum of cardinality tau.cardinality(),
// stored as a polynomial in 3*cardinality variables.
struct BasisElement {
  IrrepLabel label;
  TauIndex tau;
  int m = 0;
  ComplexPoly poly;

  int cardinality() const { return tau.cardinality(); }
  // Component on stratum i (zero polynomial off its own stratum).
  ComplexPoly component(int i) const;
};

BasisElement basis_element(const IrrepLabel& label, const TauIndex& tau, int m, HarmonicsCache& cache);

// One upper-triangular entry (row <= col) of a restricted zonal matrix:
// Z(S, S')_{row,col} as a real polynomial in the coordinates of S (first
// 3*card_row variables) followed by those of S'.
struct ZonalEntry {
  int row = 0;
  int col = 0;
  int card_row = 0;
  int card_col = 0;
  RealPoly poly;
};

struct ZonalBlockSet {
  IrrepLabel label;
  int d = 0;
  std::vector<TauIndex> rows;
  std::vector<ZonalEntry> entries;  // row-major upper triangle

  const ZonalEntry& entry(int a, int b) const;
};

ZonalBlockSet zonal_block(const IrrepLabel& label, int d, HarmonicsCache& cache);
std::vector<ZonalBlockSet> zonal_blocks(int d, long prec, int ell_max = -1);

// Ordered pairs (J, J') of subsets of {0..n-1} with |J|, |J'| <= 2 and
// J ∪ J' = {0..n-1}; members listed increasingly.
struct SubsetPair {
  std::vector<int> J;
  std::vector<int> Jp;
};
std::vector<SubsetPair> subset_pairs(int n);

// A₂ applied to one zonal entry on a set of n points: Σ_{J∪J'=S} Z(J, J'),
// as a polynomial in 3n variables.
RealPoly apply_A2(const ZonalEntry& entry, int n);

}  // namespace riesz
