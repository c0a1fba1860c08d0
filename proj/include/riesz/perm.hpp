#pragma once

#include <vector>

#include "riesz/poly.hpp"

namespace riesz {

// Permutation of {0..n-1}: p[x] is the image of x. Composition (p*q)[x] = p[q[x]].
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
std::vector<int> cycle_lengths(const Perm& p);

// Finite permutation group given by its full element list (closed).
class PermGroup {
 public:
  PermGroup() = default;
  // Closure of the generators.
  PermGroup(int degree, std::vector<Perm> generators);
  static PermGroup from_elements(int degree, std::vector<Perm> elements);

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return generators_; }
  int index_of(const Perm& p) const;

 private:
  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;  // identity first
};

// L(σ): variable j goes to variable σ(j).
template <class C>
BasicPoly<C> act(const Perm& sigma, const BasicPoly<C>& p) {
  return p.remap(sigma, p.nvars());
}

}  // namespace riesz
