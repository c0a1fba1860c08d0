#include <gtest/gtest.h>

#include <random>

#include "riesz/linalg.hpp"
#include "riesz/sphere.hpp"
#include "riesz/subsetspace.hpp"

namespace riesz {
namespace {

constexpr long kPrec = 256;
const double kTol = std::ldexp(1.0, -kPrec / 2);

Scalar S(long v) { return Scalar(v, kPrec); }

using Point = std::vector<Scalar>;

std::vector<Scalar> coords(const std::vector<Point>& pts) {
  std::vector<Scalar> out;
  for (const auto& p : pts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Orthogonal 3x3 matrix at full precision: Gram–Schmidt of a random double
// matrix, optionally composed with a reflection.
std::vector<Point> random_orthogonal(std::mt19937_64& rng, bool reflect) {
  std::vector<Point> q;
  for (int k = 0; k < 3; ++k) {
    Point v = random_sphere_point(rng, kPrec);
    for (const auto& u : q) {
      Scalar d = dot3(v, u);
      for (int i = 0; i < 3; ++i) v[i].sub_product(d, u[i]);
    }
    Scalar n = sqrt(dot3(v, v));
    for (auto& x : v) x /= n;
    q.push_back(v);
  }
  if (reflect)
    for (auto& x : q[0]) x.negate();
  return q;
}

Point rotate(const std::vector<Point>& g, const Point& x) {
  return {dot3(g[0], x), dot3(g[1], x), dot3(g[2], x)};
}

TEST(IndexSetTest, Examples) {
  // Weight-0 copies (constant functions on each stratum) are present at d = 0.
  auto r = build_index_set({0, 1}, 0);
  std::vector<TauIndex> expect0 = {TauIndex::empty(), TauIndex::single(0), TauIndex::pair(0, 0)};
  EXPECT_EQ(r, expect0);
  EXPECT_TRUE(build_index_set({1, -1}, 0).empty());
  r = build_index_set({0, 1}, 2);
  std::vector<TauIndex> expect = {TauIndex::empty(), TauIndex::single(0), TauIndex::pair(0, 0), TauIndex::pair(1, 1)};
  EXPECT_EQ(r, expect);
  EXPECT_TRUE(build_index_set({1, 1}, 2).empty());
  EXPECT_EQ(TauIndex::pair(2, 3).weight(), 5);
}

TEST(IndexSetTest, SizesAtDegreeSix) {
  int total = 0;
  for (const auto& l : labels_for_degree(6)) {
    int n = static_cast<int>(build_index_set(l, 6).size());
    total += n * l.dim();
  }
  // Σ over labels of |R| (2ell+1): the dimension of the truncated space.
  EXPECT_EQ(total, 324);
}

TEST(BasisElementTest, Examples) {
  HarmonicsCache cache(kPrec);
  auto e0 = basis_element({0, 1}, TauIndex::empty(), 0, cache);
  EXPECT_EQ(e0.cardinality(), 0);
  EXPECT_TRUE(e0.component(0).coeff(Monomial(0)).re == S(1));
  EXPECT_TRUE(e0.component(1).is_zero());
  for (int m = -1; m <= 1; ++m) {
    auto e = basis_element({1, -1}, TauIndex::single(1), m, cache);
    EXPECT_EQ(e.component(1), cache.Y(1, m));
    EXPECT_TRUE(e.component(2).is_zero());
  }
  EXPECT_THROW(basis_element({1, 1}, TauIndex::pair(1, 1), 0, cache), std::invalid_argument);
}

TEST(BasisElementTest, OrthonormalUnderProductMeasure) {
  HarmonicsCache cache(kPrec);
  std::vector<BasisElement> all;
  for (int ell = 0; ell <= 3; ++ell)
    for (int p : {1, -1})
      for (const auto& tau : build_index_set({ell, p}, 2))
        for (int m = -ell; m <= ell; ++m) all.push_back(basis_element({ell, p}, tau, m, cache));
  ASSERT_GT(all.size(), 10u);
  for (size_t a = 0; a < all.size(); ++a) {
    if (all[a].cardinality() == 2) {
      EXPECT_EQ(all[a].poly, all[a].poly.remap({3, 4, 5, 0, 1, 2}, 6)) << "pair element not symmetric";
    }
    for (size_t b = a; b < all.size(); ++b) {
      if (all[a].cardinality() != all[b].cardinality()) continue;  // different strata
      CScalar ip = product_sphere_integral(all[a].poly * conj(all[b].poly));
      EXPECT_LE(abs(ip.re - S(a == b ? 1 : 0)).to_double(), kTol) << a << "," << b;
      EXPECT_LE(abs(ip.im).to_double(), kTol);
    }
  }
}

TEST(ZonalTest, Examples) {
  HarmonicsCache cache(kPrec);
  auto z = zonal_block({0, 1}, 1, cache);
  ASSERT_EQ(z.rows.size(), 3u);
  EXPECT_TRUE(z.entry(0, 0).poly.coeff(Monomial(0)) == S(1));
  const auto& e01 = z.entry(0, 1);
  EXPECT_EQ(e01.card_row, 0);
  EXPECT_EQ(e01.card_col, 1);
  EXPECT_EQ(e01.poly, RealPoly::constant(3, S(1)));
}

class ZonalGramTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { blocks_ = new std::vector<ZonalBlockSet>(zonal_blocks(3, kPrec)); }
  static void TearDownTestSuite() { delete blocks_; }
  static std::vector<ZonalBlockSet>* blocks_;
};
std::vector<ZonalBlockSet>* ZonalGramTest::blocks_ = nullptr;

Scalar eval_entry(const ZonalEntry& e, const std::vector<Point>& s, const std::vector<Point>& t) {
  std::vector<Point> all = s;
  all.insert(all.end(), t.begin(), t.end());
  return e.poly.eval(coords(all));
}

TEST_F(ZonalGramTest, StackedGramIsPsd) {
  std::mt19937_64 rng(17);
  std::vector<Point> x;
  for (int k = 0; k < 6; ++k) x.push_back(random_sphere_point(rng, kPrec));
  std::vector<std::vector<Point>> subsets = {{}, {x[0]}, {x[1], x[2]}, {x[3]}, {x[4], x[5]}};
  for (const auto& z : *blocks_) {
    std::vector<std::pair<int, int>> idx;  // (subset, tau)
    for (int s = 0; s < static_cast<int>(subsets.size()); ++s)
      for (int a = 0; a < static_cast<int>(z.rows.size()); ++a)
        if (z.rows[a].cardinality() == static_cast<int>(subsets[s].size())) idx.emplace_back(s, a);
    const int n = static_cast<int>(idx.size());
    Matrix g(n, n, kPrec);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto [s, a] = idx[i];
        auto [t, b] = idx[j];
        const auto& e = z.entry(a, b);
        g(i, j) = a <= b ? eval_entry(e, subsets[s], subsets[t]) : eval_entry(e, subsets[t], subsets[s]);
      }
    auto ev = symmetric_eigenvalues(g);
    EXPECT_GE(ev.front().to_double(), -1e-20) << "label " << z.label.ell << "," << z.label.parity;
  }
}

TEST_F(ZonalGramTest, KernelFromPsdCoefficientsIsPsd) {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g(0, 1);
  std::vector<std::vector<Point>> subsets;
  subsets.push_back({});
  for (int k = 0; k < 3; ++k) subsets.push_back({random_sphere_point(rng, kPrec)});
  for (int k = 0; k < 3; ++k) subsets.push_back({random_sphere_point(rng, kPrec), random_sphere_point(rng, kPrec)});
  const int ns = static_cast<int>(subsets.size());
  Matrix kernel(ns, ns, kPrec);
  for (const auto& z : *blocks_) {
    const int r = static_cast<int>(z.rows.size());
    Matrix b(r, r, kPrec);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) b(i, j) = Scalar::from_double(g(rng), kPrec);
    Matrix f = b * b.transpose();
    for (int s = 0; s < ns; ++s)
      for (int t = 0; t < ns; ++t)
        for (int a = 0; a < r; ++a)
          for (int c = 0; c < r; ++c) {
            if (z.rows[a].cardinality() != static_cast<int>(subsets[s].size())) continue;
            if (z.rows[c].cardinality() != static_cast<int>(subsets[t].size())) continue;
            const auto& e = z.entry(a, c);
            Scalar v = a <= c ? eval_entry(e, subsets[s], subsets[t]) : eval_entry(e, subsets[t], subsets[s]);
            kernel(s, t).add_product(f(a, c), v);
          }
  }
  auto ev = symmetric_eigenvalues(kernel);
  EXPECT_GE(ev.front().to_double(), -1e-20);
}

TEST_F(ZonalGramTest, A2EntriesAreOrthogonallyInvariant) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 4; ++n) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) pts.push_back(random_sphere_point(rng, kPrec));
    for (bool reflect : {false, true}) {
      auto g = random_orthogonal(rng, reflect);
      std::vector<Point> moved;
      for (const auto& p : pts) moved.push_back(rotate(g, p));
      for (const auto& z : *blocks_) {
        for (const auto& e : z.entries) {
          RealPoly a2 = apply_A2(e, n);
          if (a2.is_zero()) continue;
          Scalar diff = a2.eval(coords(pts)) - a2.eval(coords(moved));
          EXPECT_LE(abs(diff).to_double(), 1e-20);
        }
      }
    }
  }
}

TEST(SubsetPairTest, Counts) {
  EXPECT_EQ(subset_pairs(0).size(), 1u);
  EXPECT_EQ(subset_pairs(1).size(), 3u);
  int two_two = 0;
  for (const auto& sp : subset_pairs(4)) {
    EXPECT_EQ(sp.J.size(), 2u);
    EXPECT_EQ(sp.Jp.size(), 2u);
    ++two_two;
  }
  EXPECT_EQ(two_two, 6);
  EXPECT_THROW(subset_pairs(5), std::invalid_argument);
}

TEST(SubsetPairTest, A2OnSingletonMatchesDefinition) {
  HarmonicsCache cache(kPrec);
  auto z = zonal_block({0, 1}, 1, cache);
  // K = entry(0,1) (empty, single 0) ≡ 1 on (∅,{x}); A₂ over {x} sees (∅,{x}) once.
  RealPoly a = apply_A2(z.entry(0, 1), 1);
  EXPECT_EQ(a, RealPoly::constant(3, S(1)));
}

}  // namespace
}  // namespace riesz
