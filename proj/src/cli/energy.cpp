#include <stdexcept>

#include "riesz/pipeline.hpp"

namespace riesz {

Scalar riesz_energy(const PointList& points, int s) {
  if (points.empty()) throw std::invalid_argument("empty configuration");
  const long prec = points[0][0].precision();
  const Scalar unit_tol = Scalar::from_string("1e-30", prec);
  for (const auto& p : points) {
    if (p.size() != 3) throw std::invalid_argument("points must be 3-vectors");
    Scalar n2(prec);
    for (const auto& c : p) n2.add_product(c, c);
    if (abs(n2 - Scalar(1, prec)) > unit_tol) throw std::invalid_argument("point off the unit sphere");
  }
  const Scalar ex = Scalar(-s, prec) / 2;
  Scalar e(prec);
  for (size_t a = 0; a < points.size(); ++a)
    for (size_t b = a + 1; b < points.size(); ++b) {
      Scalar d2(prec);
      for (int k = 0; k < 3; ++k) {
        Scalar t = points[a][k] - points[b][k];
        d2.add_product(t, t);
      }
      if (d2.is_zero()) throw std::invalid_argument("coincident points");
      e += pow(d2, ex);
    }
  return e;
}

PointList bipyramid_points(long prec) {
  const Scalar zero(prec), one(1, prec);
  const Scalar half = Scalar::rational(1, 2, prec), h = sqrt(Scalar(3, prec)) / 2;
  return {{zero, zero, one}, {zero, zero, -one}, {one, zero, zero}, {-half, h, zero}, {-half, -h, zero}};
}

Scalar energy_bipyramid(int s, long prec) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  const Scalar hs = Scalar(s, prec) / 2;
  return Scalar(6, prec) / pow(Scalar(2, prec), hs) + Scalar(3, prec) / pow(Scalar(3, prec), hs) +
         Scalar(1, prec) / pow(Scalar(4, prec), hs);
}

PointList square_pyramid_points(const Scalar& z) {
  const long prec = z.precision();
  const Scalar zero(prec), one(1, prec);
  if (!(abs(z) < one)) throw std::invalid_argument("base height must lie in (-1, 1)");
  const Scalar r = sqrt(one - z * z);
  return {{zero, zero, one}, {r, zero, z}, {-r, zero, z}, {zero, r, z}, {zero, -r, z}};
}

Scalar energy_square_pyramid(int s, const Scalar& z) { return riesz_energy(square_pyramid_points(z), s); }

PyramidOptimum optimize_square_pyramid(int s, long prec) {
  const Scalar tol = Scalar::from_string("1e-20", prec);
  const Scalar phi = (sqrt(Scalar(5, prec)) - Scalar(1, prec)) / 2;  // 1/golden ratio
  Scalar lo = Scalar::from_string("-0.999", prec), hi = Scalar::from_string("0.999", prec);
  Scalar x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  Scalar f1 = energy_square_pyramid(s, x1), f2 = energy_square_pyramid(s, x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = energy_square_pyramid(s, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = energy_square_pyramid(s, x2);
    }
  }
  Scalar z = (lo + hi) / 2;
  return {z, energy_square_pyramid(s, z)};
}

}  // namespace riesz
