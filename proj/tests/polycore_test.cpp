#include <gtest/gtest.h>

#include <random>

#include "riesz/poly.hpp"
#include "riesz/sphere.hpp"

namespace riesz {
namespace {

constexpr long kPrec = 256;

Scalar S(long v) { return Scalar(v, kPrec); }
Scalar Q(long n, long d) { return Scalar::rational(n, d, kPrec); }
RealPoly var(int n, int i) { return RealPoly::variable(n, i, kPrec); }
RealPoly cst(int n, const Scalar& c) { return RealPoly::constant(n, c); }

double tol_half() { return std::ldexp(1.0, -kPrec / 2); }

RealPoly random_poly(std::mt19937_64& rng, int nvars, int max_deg, int nterms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-50, 50);
  std::vector<RealPoly::Term> terms;
  for (int k = 0; k < nterms; ++k) {
    Monomial m(nvars);
    int left = deg(rng);
    for (int i = 0; i < nvars && left > 0; ++i) {
      std::uniform_int_distribution<int> e(0, left);
      int v = e(rng);
      m.set(i, v);
      left -= v;
    }
    terms.emplace_back(m, Q(coef(rng), 7));
  }
  return RealPoly::from_terms(nvars, kPrec, terms);
}

// Independent oracle: Gamma-function form of the normalized sphere moment.
Scalar gamma_moment(int a, int b, int c) {
  auto g = [](const Scalar& x) {
    Scalar r(kPrec);
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
  };
  Scalar al = Q(a + 1, 2), be = Q(b + 1, 2), ga = Q(c + 1, 2);
  Scalar num = g(al) * g(be) * g(ga) * g(Q(3, 2));
  Scalar den = g(al + be + ga) * pow(g(Q(1, 2)), 3);
  return num / den;
}

TEST(ScalarTest, PrecisionMismatchThrows) {
  Scalar a(1, 128), b(1, 256);
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW((void)(a < b), std::invalid_argument);
}

TEST(ScalarTest, DeterministicAndPrinted) {
  Scalar a = sqrt(S(2)) / S(3);
  Scalar b = sqrt(S(2)) / S(3);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(Q(1, 4).to_string(3), "2.50e-01");
  Scalar moved = std::move(a);
  EXPECT_TRUE(moved == b);
}

TEST(PolyTest, AddExamples) {
  RealPoly x = var(2, 0), y = var(2, 1);
  EXPECT_EQ((x + y) + (x - y), x * S(2));
  EXPECT_EQ(x + RealPoly(2, kPrec), x);
  RealPoly z = var(3, 2);
  RealPoly p2 = (z * z * S(3) - cst(3, S(1))) * Q(1, 2);
  EXPECT_EQ(p2 + cst(3, Q(1, 2)), z * z * Q(3, 2));
}

TEST(PolyTest, MulExamples) {
  RealPoly x = var(1, 0);
  EXPECT_EQ(x * x, RealPoly::term(Monomial::variable(1, 0, 2), S(1)));
  EXPECT_EQ(cst(1, S(1)) * x, x);
  // (x+iy)(x-iy) = x^2 + y^2
  ComplexPoly cx = to_complex(var(2, 0));
  ComplexPoly iy = ComplexPoly::term(Monomial::variable(2, 1), CScalar(S(0), S(1)));
  ComplexPoly prod = (cx + iy) * (cx - iy);
  RealPoly expect = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
  EXPECT_EQ(prod, to_complex(expect));
  EXPECT_THROW(var(2, 0) * var(3, 0), std::invalid_argument);
}

TEST(PolyTest, DegreeAndZero) {
  RealPoly zero(3, kPrec);
  EXPECT_EQ(zero.degree(), kZeroDegree);
  EXPECT_EQ((var(3, 0) * var(3, 1) + var(3, 2)).degree(), 2);
}

TEST(PolyTest, EvalExamples) {
  RealPoly x = var(3, 0), y = var(3, 1), z = var(3, 2);
  EXPECT_TRUE((x * x + y * y + z * z).eval({S(1), S(0), S(0)}) == S(1));
  EXPECT_TRUE(RealPoly(3, kPrec).eval({S(3), S(1), S(2)}).is_zero());
  RealPoly p2 = (z * z * S(3) - cst(3, S(1))) * Q(1, 2);
  EXPECT_TRUE(p2.eval({S(0), S(0), Q(1, 2)}) == Q(-1, 8));
  EXPECT_THROW(p2.eval({S(0)}), std::invalid_argument);
}

TEST(PolyTest, SubstituteExamples) {
  RealPoly u = var(1, 0);
  RealPoly repl = cst(1, S(1)) - u * u * Q(1, 2);  // 1 - w^2/2
  EXPECT_EQ(u.substitute(0, repl), repl);
  EXPECT_EQ(cst(1, S(5)).substitute(0, repl), cst(1, S(5)));
  RealPoly expect = cst(1, S(1)) - u * u + u.pow(4) * Q(1, 4);
  EXPECT_EQ((u * u).substitute(0, repl), expect);
  EXPECT_THROW(u.substitute(3, repl), std::out_of_range);
}

TEST(PolyTest, RingAxioms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    RealPoly a = random_poly(rng, 4, 4, 12), b = random_poly(rng, 4, 4, 12), c = random_poly(rng, 4, 4, 12);
    RealPoly d1 = ((a + b) + c) - (a + (b + c));
    RealPoly d2 = a * (b + c) - (a * b + a * c);
    EXPECT_LE(d1.max_abs_coeff().to_double(), tol_half());
    EXPECT_LE(d2.max_abs_coeff().to_double(), tol_half());
  }
}

TEST(PolyTest, SubstituteMatchesEvaluation) {
  std::mt19937_64 rng(11);
  RealPoly p = random_poly(rng, 3, 5, 15);
  RealPoly r = random_poly(rng, 3, 2, 4);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 20; ++k) {
    std::vector<Scalar> pt = {Scalar::from_double(U(rng), kPrec), Scalar::from_double(U(rng), kPrec),
                              Scalar::from_double(U(rng), kPrec)};
    Scalar lhs = p.substitute(1, r).eval(pt);
    std::vector<Scalar> pt2 = pt;
    pt2[1] = r.eval(pt);
    Scalar rhs = p.eval(pt2);
    EXPECT_LE(abs(lhs - rhs).to_double(), 1e-60);
  }
}

TEST(SphereTest, MonomialIntegralExamples) {
  EXPECT_TRUE(sphere_monomial_integral(0, 0, 0, kPrec) == S(1));
  EXPECT_TRUE(sphere_monomial_integral(1, 0, 0, kPrec).is_zero());
  EXPECT_TRUE(sphere_monomial_integral(0, 0, 2, kPrec) == Q(1, 3));
}

TEST(SphereTest, MonomialIntegralMatchesGammaOracle) {
  for (int a = 0; a <= 8; a += 2)
    for (int b = 0; b <= 8; b += 2)
      for (int c = 0; c <= 6; c += 2) {
        Scalar diff = sphere_monomial_integral(a, b, c, kPrec) - gamma_moment(a, b, c);
        EXPECT_LE(abs(diff).to_double(), 1e-70) << a << " " << b << " " << c;
      }
}

TEST(SphereTest, CoordinateSymmetryAndUnitNorm) {
  for (int k = 0; k <= 10; ++k) {
    Scalar x = sphere_monomial_integral(2 * k, 0, 0, kPrec);
    EXPECT_TRUE(x == sphere_monomial_integral(0, 2 * k, 0, kPrec));
    EXPECT_TRUE(x == sphere_monomial_integral(0, 0, 2 * k, kPrec));
  }
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c) {
        Scalar lhs = sphere_monomial_integral(a + 2, b, c, kPrec) + sphere_monomial_integral(a, b + 2, c, kPrec) +
                     sphere_monomial_integral(a, b, c + 2, kPrec);
        EXPECT_LE(abs(lhs - sphere_monomial_integral(a, b, c, kPrec)).to_double(), 1e-70);
      }
}

TEST(SphereTest, InnerProductExamples) {
  RealPoly one = cst(3, S(1));
  EXPECT_TRUE(sphere_inner_product(one, one) == S(1));
  EXPECT_TRUE(sphere_inner_product(var(3, 2), var(3, 0)).is_zero());
  RealPoly z3 = var(3, 2) * sqrt(S(3));
  EXPECT_LE(abs(sphere_inner_product(z3, z3) - S(1)).to_double(), 1e-70);
  EXPECT_THROW(sphere_inner_product(var(2, 0), var(2, 0)), std::invalid_argument);
}

TEST(SphereTest, RandomPointIsUnit) {
  std::mt19937_64 rng(3);
  auto p = random_sphere_point(rng, kPrec);
  EXPECT_LE(abs(dot3(p, p) - S(1)).to_double(), 1e-70);
}

}  // namespace
}  // namespace riesz
