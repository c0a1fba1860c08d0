#include <gtest/gtest.h>

#include <random>

#include "riesz/harmonics.hpp"
#include "riesz/sphere.hpp"

namespace riesz {
namespace {

constexpr long kPrec = 256;
const double kTol = std::ldexp(1.0, -kPrec / 2);

Scalar S(long v) { return Scalar(v, kPrec); }

// Bonnet recurrence: (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
std::vector<RealPoly> bonnet(int nmax) {
  RealPoly x = RealPoly::variable(1, 0, kPrec);
  std::vector<RealPoly> p = {RealPoly::constant(1, S(1)), x};
  for (int n = 1; n < nmax; ++n) {
    RealPoly next = (x * p[n] * S(2 * n + 1) - p[n - 1] * S(n)) * (S(1) / S(n + 1));
    p.push_back(next);
  }
  return p;
}

double dist(const RealPoly& a, const RealPoly& b) { return (a - b).max_abs_coeff().to_double(); }
double dist(const ComplexPoly& a, const ComplexPoly& b) { return (a - b).max_abs_coeff().to_double(); }

TEST(LegendreTest, Examples) {
  RealPoly x = RealPoly::variable(1, 0, kPrec);
  EXPECT_EQ(legendre(0, kPrec), RealPoly::constant(1, S(1)));
  EXPECT_EQ(legendre(1, kPrec), x);
  EXPECT_LE(dist(legendre(2, kPrec), (x * x * S(3) - RealPoly::constant(1, S(1))) * Scalar::rational(1, 2, kPrec)),
            kTol);
}

TEST(LegendreTest, MatchesBonnetRecurrence) {
  auto ref = bonnet(14);
  for (int n = 0; n <= 14; ++n) EXPECT_LE(dist(legendre(n, kPrec), ref[n]), kTol) << n;
}

TEST(LegendreTest, DerivativePart) {
  EXPECT_EQ(assoc_legendre_derivative_part(1, 1, kPrec), RealPoly::constant(1, S(1)));
  EXPECT_EQ(assoc_legendre_derivative_part(4, 0, kPrec), legendre(4, kPrec));
  EXPECT_LE(dist(assoc_legendre_derivative_part(2, 1, kPrec), RealPoly::variable(1, 0, kPrec) * S(3)), kTol);
  EXPECT_TRUE(assoc_legendre_derivative_part(2, 3, kPrec).is_zero());
}

TEST(HarmonicTest, Examples) {
  EXPECT_LE(dist(spherical_harmonic_cartesian(0, 0, kPrec), ComplexPoly::constant(3, CScalar(S(1)))), kTol);
  ComplexPoly z3 = to_complex(RealPoly::variable(3, 2, kPrec) * sqrt(S(3)));
  EXPECT_LE(dist(spherical_harmonic_cartesian(1, 0, kPrec), z3), kTol);
  EXPECT_THROW(spherical_harmonic_cartesian(2, 3, kPrec), std::invalid_argument);
}

TEST(HarmonicTest, OrthonormalHomogeneousHarmonic) {
  const int lmax = 6;
  std::vector<std::tuple<int, int, ComplexPoly>> all;
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) all.emplace_back(l, m, spherical_harmonic_cartesian(l, m, kPrec));
  for (auto& [l, m, y] : all) {
    for (const auto& t : y.terms()) EXPECT_EQ(t.first.degree(), l);
    EXPECT_TRUE(laplacian(y).is_zero()) << l << " " << m;
  }
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t b = a; b < all.size(); ++b) {
      CScalar ip = sphere_inner_product(std::get<2>(all[a]), std::get<2>(all[b]));
      Scalar expect(a == b ? 1 : 0, kPrec);
      EXPECT_LE(abs(ip.re - expect).to_double(), kTol);
      EXPECT_LE(abs(ip.im).to_double(), kTol);
    }
}

// Addition theorem: sum_m Y^m(x) conj(Y^m(y)) = (2l+1) P_l(x·y).
TEST(HarmonicTest, AdditionTheorem) {
  std::mt19937_64 rng(5);
  for (int l = 0; l <= 6; ++l) {
    auto x = random_sphere_point(rng, kPrec), y = random_sphere_point(rng, kPrec);
    CScalar sum(kPrec);
    for (int m = -l; m <= l; ++m) {
      const ComplexPoly Y = spherical_harmonic_cartesian(l, m, kPrec);
      sum += Y.eval(x) * conj(Y.eval(y));
    }
    Scalar expect = legendre(l, kPrec).eval({dot3(x, y)}) * S(2 * l + 1);
    EXPECT_LE(abs(sum.re - expect).to_double(), 1e-60);
    EXPECT_LE(abs(sum.im).to_double(), 1e-60);
  }
}

TEST(ClebschGordanTest, Examples) {
  EXPECT_TRUE(clebsch_gordan({0, 0, 0, 0, 0, 0}, kPrec) == S(1));
  EXPECT_LE(abs(clebsch_gordan({1, 0, 1, 0, 1, 0}, kPrec)).to_double(), kTol);
  Scalar expect = sqrt(Scalar::rational(2, 3, kPrec));
  EXPECT_LE(abs(clebsch_gordan({1, 0, 1, 0, 2, 0}, kPrec) - expect).to_double(), kTol);
  EXPECT_TRUE(clebsch_gordan({1, 1, 1, 0, 2, 0}, kPrec).is_zero());
  EXPECT_TRUE(clebsch_gordan({1, 0, 1, 0, 3, 0}, kPrec).is_zero());
}

// Stretched coupling has the closed form sqrt(C(2l1,l1+m1) C(2l2,l2+m2) / C(2l,l+m)).
TEST(ClebschGordanTest, StretchedClosedForm) {
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          int l = l1 + l2, m = m1 + m2;
          Scalar expect = sqrt(Scalar(binomial(2 * l1, l1 + m1), kPrec) * Scalar(binomial(2 * l2, l2 + m2), kPrec) /
                               Scalar(binomial(2 * l, l + m), kPrec));
          EXPECT_LE(abs(clebsch_gordan({l1, m1, l2, m2, l, m}, kPrec) - expect).to_double(), kTol);
        }
}

TEST(ClebschGordanTest, OrthogonalityAndSymmetry) {
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l)
        for (int m = -l; m <= l; ++m) {
          for (int lp = std::abs(l1 - l2); lp <= l1 + l2; ++lp) {
            int mp = m;  // different m never share (m1, m2) terms
            if (std::abs(mp) > lp) continue;
            Scalar sum(kPrec);
            for (int m1 = -l1; m1 <= l1; ++m1) {
              int m2 = m - m1;
              if (std::abs(m2) > l2) continue;
              sum.add_product(clebsch_gordan({l1, m1, l2, m2, l, m}, kPrec),
                              clebsch_gordan({l1, m1, l2, m2, lp, mp}, kPrec));
            }
            EXPECT_LE(abs(sum - S(l == lp ? 1 : 0)).to_double(), kTol);
          }
          for (int m1 = -l1; m1 <= l1; ++m1) {
            int m2 = m - m1;
            if (std::abs(m2) > l2) continue;
            Scalar a = clebsch_gordan({l2, m2, l1, m1, l, m}, kPrec);
            Scalar b = clebsch_gordan({l1, m1, l2, m2, l, m}, kPrec);
            if ((l1 + l2 - l) % 2) b.negate();
            EXPECT_TRUE(a == b);
          }
        }
}

TEST(PhiInverseTest, Examples) {
  auto e = phi_inverse_expand(0, 0, 0, 0, kPrec);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_TRUE(e[0].coeff == S(1));
  for (int m = -1; m <= 1; ++m) {
    auto terms = phi_inverse_expand(1, 1, 1, m, kPrec);
    for (const auto& t : terms) {
      Scalar partner(kPrec);
      for (const auto& u : terms)
        if (u.m1 == t.m2 && u.m2 == t.m1) partner = u.coeff;
      EXPECT_LE(abs(t.coeff + partner).to_double(), kTol);
    }
  }
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2)
      for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l)
        for (int m = -l; m <= l; ++m) {
          Scalar s(kPrec);
          for (const auto& t : phi_inverse_expand(l1, l2, l, m, kPrec)) s.add_product(t.coeff, t.coeff);
          EXPECT_LE(abs(s - S(1)).to_double(), kTol);
        }
  EXPECT_THROW(phi_inverse_expand(1, 1, 3, 0, kPrec), std::invalid_argument);
}

}  // namespace
}  // namespace riesz
