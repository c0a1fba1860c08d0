#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riesz/perm.hpp"
#include "riesz/poly.hpp"

namespace riesz {

// Edges {a,b} (a < b) of the complete graph K_n, lexicographic order. A
// polynomial "in inner products" on n points uses one variable per edge.
int num_edges(int n);
int edge_index(int n, int a, int b);
std::vector<std::pair<int, int>> edge_list(int n);

// Π (x_a · x_b)^{e_ab} expanded in the 3n cartesian coordinates.
RealPoly expand_edge_monomial(int n, const std::vector<int>& exponents);

// φ_n: the edge permutation induced by a vertex permutation.
Perm vertex_to_edge_perm(const Perm& sigma);
// φ_n(S_n) acting on the C(n,2) edges.
PermGroup edge_action_image(int n);
// (1/n!) Σ_σ q∘φ(σ).
RealPoly symmetrize_q(const RealPoly& q, int n);

// Symmetric sparse matrix with both triangles stored.
class SparseSymmetric {
 public:
  SparseSymmetric(int n, long prec) : n_(n), prec_(prec), rows_(n) {}
  int size() const { return n_; }
  long precision() const { return prec_; }
  void add(int i, int j, const Scalar& v);  // adds to (i,j) and (j,i)
  const std::map<int, Scalar>& row(int i) const { return rows_[i]; }
  std::vector<Scalar> multiply(const std::vector<Scalar>& x) const;

 private:
  friend class CholeskyFactor;
  int n_;
  long prec_;
  std::vector<std::map<int, Scalar>> rows_;
};

// M = P L Lᵀ Pᵀ with pivots chosen as the largest remaining diagonal.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const SparseSymmetric& m);
  std::vector<Scalar> solve(const std::vector<Scalar>& rhs) const;
  const std::vector<int>& pivots() const { return order_; }

 private:
  long prec_;
  std::vector<int> order_;
  std::vector<std::vector<std::pair<int, Scalar>>> cols_;  // pivot entry first
};

std::vector<Scalar> pivoted_sparse_cholesky(const SparseSymmetric& m, const std::vector<Scalar>& rhs);

struct RewriteOptions {
  int verify_samples = 50;
  std::uint64_t seed = 20240611;
  int eps_shift = 0;  // ε = 2^(-precision/2 + eps_shift)
  int max_refinements = 10;
};

struct RewriteReport {
  double coefficient_residual = 0;  // max |p - q(x·x)| over cartesian coefficients
  double sampled_residual = 0;      // max |p(x) - q(u)| at random sphere tuples
  int refinements = 0;
};

// Rewrites O(3)-invariant polynomials in the coordinates of i points as
// polynomials in their pairwise inner products, by regularized least squares
// per multidegree block. Factorizations are cached across calls.
class InnerProductRewriter {
 public:
  explicit InnerProductRewriter(long prec, RewriteOptions opts = {});
  ~InnerProductRewriter();
  InnerProductRewriter(const InnerProductRewriter&) = delete;
  InnerProductRewriter& operator=(const InnerProductRewriter&) = delete;

  // Result in C(i,2) edge variables, valid for points on the sphere.
  RealPoly rewrite(const RealPoly& p, int i, int d, RewriteReport* report = nullptr);
  // Result over the edge variables followed by i norm variables x_a·x_a;
  // the identity then holds for all points of R^3.
  RealPoly rewrite_extended(const RealPoly& p, int i, RewriteReport* report = nullptr);

  long precision() const { return prec_; }
  const RewriteOptions& options() const { return opts_; }

 private:
  struct Block;
  const Block& block(int i, const std::vector<int>& multidegree);

  long prec_;
  RewriteOptions opts_;
  std::map<std::pair<int, std::vector<int>>, std::unique_ptr<Block>> blocks_;
};

RealPoly rewrite_in_inner_products(const RealPoly& p, int i, int d, const RewriteOptions& opts = {},
                                   RewriteReport* report = nullptr);

// Sets the norm variables of an extended polynomial to 1.
RealPoly drop_norms(const RealPoly& q_ext, int i);

// Substitutes slot edges by point edges: slot a sits at point slot_to_point[a];
// edges whose endpoints coincide become the constant 1.
RealPoly map_edges(const RealPoly& q, int n_slots, const std::vector<int>& slot_to_point, int n_points);

// A₂ in inner-product form for an entry over card_row + card_col slots.
RealPoly apply_A2_inner(const RealPoly& q_slots, int card_row, int card_col, int n_points);

// Evaluates q at the inner products of the given points.
Scalar eval_inner(const RealPoly& q, const std::vector<std::vector<Scalar>>& points);

}  // namespace riesz
