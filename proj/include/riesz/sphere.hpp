#pragma once

#include <array>
#include <random>
#include <vector>

#include "riesz/poly.hpp"

namespace riesz {

// ∫_{S²} x^a y^b z^c dμ with μ(S²) = 1.
Scalar sphere_monomial_integral(int a, int b, int c, long prec);

// ∫ p·conj(q) dμ for polynomials in (x, y, z).
CScalar sphere_inner_product(const ComplexPoly& p, const ComplexPoly& q);
Scalar sphere_inner_product(const RealPoly& p, const RealPoly& q);

// Integral over (S²)^k of a polynomial in 3k variables (point j owns
// variables 3j, 3j+1, 3j+2) against the product measure.
CScalar product_sphere_integral(const ComplexPoly& p);
Scalar product_sphere_integral(const RealPoly& p);

// Uniform point on S², normalized at the requested precision.
std::vector<Scalar> random_sphere_point(std::mt19937_64& rng, long prec);
std::array<double, 3> random_sphere_point_double(std::mt19937_64& rng);

Scalar dot3(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

}  // namespace riesz
