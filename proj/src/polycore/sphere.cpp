#include "riesz/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace riesz {

namespace {

// (n-1)!! for even n, as a product of odd integers.
void mul_odd_double_factorial(Scalar& acc, int n) {
  for (int k = n - 1; k > 1; k -= 2) acc *= static_cast<long>(k);
}

template <class P, class V>
V integrate_product(const P& p) {
  if (p.nvars() % 3 != 0) throw std::invalid_argument("expected 3k variables");
  int k = p.nvars() / 3;
  V sum = detail::make_zero<typename P::Coeff>(p.precision());
  for (const auto& [m, c] : p.terms()) {
    Scalar w(1, p.precision());
    bool zero = false;
    for (int j = 0; j < k && !zero; ++j) {
      int a = m[3 * j], b = m[3 * j + 1], cc = m[3 * j + 2];
      if ((a | b | cc) & 1) {
        zero = true;
        break;
      }
      w *= sphere_monomial_integral(a, b, cc, p.precision());
    }
    if (zero) continue;
    sum += c * w;
  }
  return sum;
}

}  // namespace

// Normalized moments: (a-1)!!(b-1)!!(c-1)!! / (a+b+c+1)!! for even exponents.
Scalar sphere_monomial_integral(int a, int b, int c, long prec) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("negative exponent");
  if ((a | b | c) & 1) return Scalar(prec);
  Scalar num(1, prec);
  mul_odd_double_factorial(num, a);
  mul_odd_double_factorial(num, b);
  mul_odd_double_factorial(num, c);
  Scalar den(1, prec);
  for (int k = a + b + c + 1; k > 1; k -= 2) den *= static_cast<long>(k);
  return num / den;
}

CScalar sphere_inner_product(const ComplexPoly& p, const ComplexPoly& q) {
  if (p.nvars() != 3 || q.nvars() != 3) throw std::invalid_argument("expected polynomials in 3 variables");
  return product_sphere_integral(p * conj(q));
}

Scalar sphere_inner_product(const RealPoly& p, const RealPoly& q) {
  if (p.nvars() != 3 || q.nvars() != 3) throw std::invalid_argument("expected polynomials in 3 variables");
  return product_sphere_integral(p * q);
}

CScalar product_sphere_integral(const ComplexPoly& p) { return integrate_product<ComplexPoly, CScalar>(p); }
Scalar product_sphere_integral(const RealPoly& p) { return integrate_product<RealPoly, Scalar>(p); }

std::array<double, 3> random_sphere_point_double(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    double x = g(rng), y = g(rng), z = g(rng);
    double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1e-8) return {x / n, y / n, z / n};
  }
}

std::vector<Scalar> random_sphere_point(std::mt19937_64& rng, long prec) {
  auto d = random_sphere_point_double(rng);
  std::vector<Scalar> v;
  for (double x : d) v.push_back(Scalar::from_double(x, prec));
  Scalar n = sqrt(dot3(v, v));
  for (auto& x : v) x /= n;
  return v;
}

Scalar dot3(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar r = a[0] * b[0];
  r.add_product(a[1], b[1]);
  r.add_product(a[2], b[2]);
  return r;
}

}  // namespace riesz
