#include "riesz/monomial.hpp"

namespace riesz {

namespace {

void fill(int n, int var, int left, Monomial& cur, std::vector<Monomial>& out) {
  if (var == n - 1) {
    cur.set(var, left);
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.set(var, k);
    fill(n, var + 1, left - k, cur, out);
  }
  cur.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int n, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur(n);
  if (n == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  fill(n, 0, degree, cur, out);
  return out;
}

std::vector<Monomial> monomials_up_to(int n, int max_degree) {
  std::vector<Monomial> out;
  for (int k = 0; k <= max_degree; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace riesz
