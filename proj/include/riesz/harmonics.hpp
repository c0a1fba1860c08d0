#pragma once

#include <compare>
#include <map>
#include <tuple>
#include <vector>

#include "riesz/poly.hpp"

namespace riesz {

// O(3) irrep: degree ell with parity p; dimension 2*ell + 1.
struct IrrepLabel {
  int ell = 0;
  int parity = 1;

  int dim() const { return 2 * ell + 1; }
  auto operator<=>(const IrrepLabel&) const = default;
};

struct CGKey {
  int l1, m1, l2, m2, l, m;
};

// P_ell in one variable, by Rodrigues' formula.
RealPoly legendre(int ell, long prec);
// d^m/dz^m P_ell(z); zero polynomial when m > ell.
RealPoly assoc_legendre_derivative_part(int ell, int m, long prec);
// Y_ell^m as a homogeneous degree-ell polynomial in (x, y, z), orthonormal
// for the normalized surface measure. Y^{-m} = (-1)^m conj(Y^m).
ComplexPoly spherical_harmonic_cartesian(int ell, int m, long prec);

// C^{l,m}_{l1,m1,l2,m2} from the Racah factorial sum.
Scalar clebsch_gordan(const CGKey& key, long prec);

struct CGTerm {
  int m1;
  int m2;
  Scalar coeff;
};
// Expansion of Y_l^m in H_{l1} ⊗ H_{l2}: nonzero (m1, m2, C) with m1 + m2 = m.
std::vector<CGTerm> phi_inverse_expand(int l1, int l2, int l, int m, long prec);

// Memoized harmonics and CG coefficients. Not thread-safe; use one per worker.
class HarmonicsCache {
 public:
  explicit HarmonicsCache(long prec) : prec_(prec) {}
  long precision() const { return prec_; }
  const ComplexPoly& Y(int ell, int m);
  const std::vector<CGTerm>& expansion(int l1, int l2, int l, int m);

 private:
  long prec_;
  std::map<std::pair<int, int>, ComplexPoly> y_;
  std::map<std::tuple<int, int, int, int>, std::vector<CGTerm>> cg_;
};

}  // namespace riesz
