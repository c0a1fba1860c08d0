#pragma once

#include <string>
#include <vector>

#include "riesz/linalg.hpp"
#include "riesz/perm.hpp"
#include "riesz/poly.hpp"

namespace riesz {

// Real orthogonal irreducible representation; matrices[g] belongs to the
// g-th element of the owning group's element list.
struct OrthoIrrep {
  std::string name;
  int dim = 0;
  std::vector<Matrix> matrices;
  Scalar trace(int g) const;
};

// A permutation group on variables together with its complete list of
// inequivalent real irreps.
struct RepGroup {
  PermGroup group;
  std::vector<OrthoIrrep> irreps;
};

// Partitions of n, largest first: [n], [n-1,1], ...
std::vector<std::vector<int>> partitions(int n);
// Young's orthogonal form of σ ∈ S_n for the given partition.
Matrix young_matrix(const std::vector<int>& partition, const Perm& sigma, long prec);
// S_n generated by adjacent transpositions, with its Young irreps (n ≤ 4).
RepGroup young_irreps(int n, long prec);

// The trivial group on nvars variables.
RepGroup trivial_group(int nvars, long prec);

PermGroup stabilizer(const PermGroup& group, const RealPoly& poly);

// Irreps of an edge group that is the image under φ_n of a Young subgroup
// S_{O_1} × ... × S_{O_r} of S_n (stabilizers arising from the principal
// minors are of this form). Irreps are Kronecker products of Young forms.
RepGroup edge_group_irreps(const PermGroup& edge_group, int n_points, long prec);

// m_π(k) for k = 0..max_degree via Molien's series over cycle types.
struct MolienTable {
  std::vector<std::string> names;
  std::vector<int> dims;
  std::vector<std::vector<long>> mult;  // [π][k]
  long cumulative(int pi, int h) const;  // Σ_{k ≤ h} m_π(k)
  long largest_block(int h) const;
};
MolienTable molien(const RepGroup& g, int max_degree);

// Symmetry adapted basis of the polynomials of degree ≤ h: elems[π][i][j],
// i < m_π, j < d_π. Orthonormal in the monomial-coefficient inner product.
struct AdaptedBasis {
  int nvars = 0;
  int max_degree = -1;
  std::vector<int> dims;
  std::vector<std::vector<std::vector<RealPoly>>> elems;
  int multiplicity(int pi) const { return static_cast<int>(elems[pi].size()); }
};
AdaptedBasis projection_basis(const RepGroup& g, int h, long prec);

// Z_π(x)[i][i'] = Σ_j e_{π,i,j}(x) e_{π,i',j}(x).
using PolyMatrix = std::vector<std::vector<RealPoly>>;
std::vector<PolyMatrix> modified_zonal(const AdaptedBasis& basis);

}  // namespace riesz
