#include "riesz/perm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace riesz {

Perm perm_identity(int n) {
  Perm p(n);
  for (int k = 0; k < n; ++k) p[k] = k;
  return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) throw std::invalid_argument("permutation degree mismatch");
  Perm r(p.size());
  for (size_t k = 0; k < q.size(); ++k) r[k] = p[q[k]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t k = 0; k < p.size(); ++k) r[p[k]] = static_cast<int>(k);
  return r;
}

std::vector<int> cycle_lengths(const Perm& p) {
  std::vector<int> out;
  std::vector<bool> seen(p.size(), false);
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (size_t x = s; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators) : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (static_cast<int>(g.size()) != degree) throw std::invalid_argument("generator degree mismatch");
  std::set<Perm> seen;
  Perm id = perm_identity(degree);
  elements_.push_back(id);
  seen.insert(id);
  for (size_t k = 0; k < elements_.size(); ++k) {
    for (const auto& g : generators_) {
      Perm n = perm_compose(g, elements_[k]);
      if (seen.insert(n).second) elements_.push_back(n);
    }
  }
}

PermGroup PermGroup::from_elements(int degree, std::vector<Perm> elements) {
  PermGroup g;
  g.degree_ = degree;
  Perm id = perm_identity(degree);
  auto it = std::find(elements.begin(), elements.end(), id);
  if (it == elements.end()) throw std::invalid_argument("element list lacks the identity");
  std::iter_swap(elements.begin(), it);
  std::set<Perm> all(elements.begin(), elements.end());
  for (const auto& a : elements)
    for (const auto& b : elements)
      if (!all.count(perm_compose(a, b))) throw std::invalid_argument("element list not closed");
  g.elements_ = std::move(elements);
  g.generators_ = g.elements_;
  return g;
}

int PermGroup::index_of(const Perm& p) const {
  for (int k = 0; k < order(); ++k)
    if (elements_[k] == p) return k;
  return -1;
}

}  // namespace riesz
