#include <algorithm>
#include <bit>
#include <stdexcept>

#include "riesz/sdp.hpp"

namespace riesz {

Matrix riesz_potentials(const std::vector<std::vector<Scalar>>& points, int s) {
  if (points.empty()) throw std::invalid_argument("no points");
  const long prec = points[0][0].precision();
  const int n = static_cast<int>(points.size());
  Matrix f(n, n, prec);
  const Scalar ex = Scalar(-s, prec) / 2;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Scalar d2(prec);
      for (int k = 0; k < 3; ++k) {
        Scalar t = points[a][k] - points[b][k];
        d2.add_product(t, t);
      }
      if (d2.is_zero()) throw std::invalid_argument("coincident points");
      f(a, b) = f(b, a) = pow(d2, ex);
    }
  return f;
}

Scalar brute_force_min_energy(const Matrix& potentials, int N) {
  const int n = potentials.rows();
  if (N < 0 || N > n || n > 30) throw std::invalid_argument("brute force: bad sizes");
  Scalar best(potentials.precision());
  bool first = true;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != N) continue;
    Scalar e(potentials.precision());
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if ((mask >> a & 1) && (mask >> b & 1)) e += potentials(a, b);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

FiniteMomentProgram assemble_finite_Lt(const Matrix& potentials, int N, int t) {
  const int n = potentials.rows();
  if (n != potentials.cols() || n < 1 || n > 12) throw std::invalid_argument("finite L_t: need 1 <= |V| <= 12");
  if (N < 1 || N > 6 || N > n || t < 1 || t > N) throw std::invalid_argument("finite L_t: need 1 <= t <= N <= 6");
  const long prec = potentials.precision();
  FiniteMomentProgram fp;
  fp.n = n;
  fp.N = N;
  fp.t = t;
  fp.potentials = potentials;

  std::vector<std::uint32_t> all;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) <= 2 * t) all.push_back(mask);
  std::stable_sort(all.begin(), all.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  fp.subsets = all;
  for (size_t k = 0; k < all.size(); ++k) fp.y_index[all[k]] = static_cast<int>(k);
  for (auto mask : all)
    if (std::popcount(mask) <= t) fp.moment.push_back(mask);

  SdpProblem& p = fp.sdp;
  p.precision = prec;
  const int nm = static_cast<int>(fp.moment.size());
  const int ny = static_cast<int>(all.size());
  p.blocks.push_back({"moment", nm, BlockKind::kPsd});
  p.blocks.push_back({"y", ny, BlockKind::kDiagonal});
  const Scalar one(1, prec), half = Scalar::rational(1, 2, prec);

  // M_t(y)_{J,J'} = y_{J∪J'}
  for (int a = 0; a < nm; ++a)
    for (int b = a; b < nm; ++b) {
      int y = fp.y_index.at(fp.moment[a] | fp.moment[b]);
      SdpConstraint c{"link:" + std::to_string(a) + "," + std::to_string(b), Scalar(prec), {}};
      c.entries.push_back({0, a, b, a == b ? one : half});
      c.entries.push_back({1, y, y, -one});
      p.constraints.push_back(std::move(c));
    }
  p.constraints.push_back({"empty", one, {{1, 0, 0, one}}});
  // (N - |S|) y_S = Σ_{j∉S} y_{S∪{j}} for |S| <= 2t - 1.
  for (auto mask : all) {
    const int k = std::popcount(mask);
    if (k > 2 * t - 1) continue;
    SdpConstraint c{"count:" + std::to_string(mask), Scalar(prec), {}};
    const int ys = fp.y_index.at(mask);
    if (N != k) c.entries.push_back({1, ys, ys, Scalar(N - k, prec)});
    for (int j = 0; j < n; ++j)
      if (!(mask >> j & 1)) {
        int yj = fp.y_index.at(mask | (1u << j));
        c.entries.push_back({1, yj, yj, -one});
      }
    if (!c.entries.empty()) p.constraints.push_back(std::move(c));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int y = fp.y_index.at((1u << a) | (1u << b));
      p.objective.push_back({1, y, y, -potentials(a, b)});
    }
  p.canonicalize();
  p.validate();
  return fp;
}

}  // namespace riesz
