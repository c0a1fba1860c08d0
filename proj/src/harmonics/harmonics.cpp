#include "riesz/harmonics.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace riesz {

RealPoly legendre(int ell, long prec) {
  if (ell < 0) throw std::invalid_argument("negative degree");
  // (x^2 - 1)^ell expanded, differentiated ell times, scaled by 1/(2^ell ell!).
  std::vector<RealPoly::Term> terms;
  for (int k = 0; k <= ell; ++k) {
    int power = 2 * k;
    if (power < ell) continue;
    Scalar c(binomial(ell, k), prec);
    if ((ell - k) % 2) c.negate();
    // d^ell x^power = power!/(power-ell)! x^(power-ell)
    c *= factorial(power, prec) / factorial(power - ell, prec);
    terms.emplace_back(Monomial::variable(1, 0, power - ell), std::move(c));
  }
  RealPoly p = RealPoly::from_terms(1, prec, std::move(terms));
  Scalar scale = Scalar::pow2(-ell, prec) / factorial(ell, prec);
  return p * scale;
}

RealPoly assoc_legendre_derivative_part(int ell, int m, long prec) {
  if (m < 0) throw std::invalid_argument("negative order");
  RealPoly p = legendre(ell, prec);
  for (int k = 0; k < m; ++k) p = p.derivative(0);
  return p;
}

ComplexPoly spherical_harmonic_cartesian(int ell, int m, long prec) {
  if (ell < 0 || std::abs(m) > ell) throw std::invalid_argument("|m| > ell");
  if (m < 0) {
    ComplexPoly p = conj(spherical_harmonic_cartesian(ell, -m, prec));
    if (m % 2) p = -p;
    return p;
  }
  Scalar c = sqrt(Scalar(2 * ell + 1, prec) * factorial(ell - m, prec) / factorial(ell + m, prec));
  if (m % 2) c.negate();  // c_ell^m carries (-1)^m
  if (m % 2) c.negate();  // and so does the prefactor of Y_ell^m
  RealPoly d = assoc_legendre_derivative_part(ell, m, prec);

  RealPoly x = RealPoly::variable(3, 0, prec), y = RealPoly::variable(3, 1, prec),
           z = RealPoly::variable(3, 2, prec);
  RealPoly r2 = x * x + y * y + z * z;
  // Homogenize each z^k to degree ell - m with powers of x^2 + y^2 + z^2.
  RealPoly zpart(3, prec);
  for (const auto& [mono, coeff] : d.terms()) {
    int k = mono[0];
    int gap = ell - m - k;
    if (gap < 0 || gap % 2) throw std::logic_error("unexpected Legendre parity");
    zpart += z.pow(k) * r2.pow(gap / 2) * coeff;
  }
  ComplexPoly xy = to_complex(x) + ComplexPoly::term(Monomial::variable(3, 1), CScalar(Scalar(prec), Scalar(1, prec)));
  return to_complex(zpart) * xy.pow(m) * CScalar(c);
}

Scalar clebsch_gordan(const CGKey& k, long prec) {
  Scalar zero(prec);
  if (std::abs(k.m1) > k.l1 || std::abs(k.m2) > k.l2 || std::abs(k.m) > k.l) return zero;
  if (k.m1 + k.m2 != k.m) return zero;
  if (k.l < std::abs(k.l1 - k.l2) || k.l > k.l1 + k.l2) return zero;

  // The factorial sum is evaluated exactly in rationals and rounded once, so
  // relations between coefficients (e.g. exchange symmetry) hold bit-exactly.
  auto f = [](int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  };

  mpq_class pre(mpz_class(2 * k.l + 1) * f(k.l1 + k.l2 - k.l) * f(k.l1 - k.l2 + k.l) * f(-k.l1 + k.l2 + k.l),
                f(k.l1 + k.l2 + k.l + 1));
  pre *= f(k.l1 + k.m1) * f(k.l1 - k.m1) * f(k.l2 + k.m2) * f(k.l2 - k.m2) * f(k.l + k.m) * f(k.l - k.m);
  pre.canonicalize();

  int lo = std::max({0, k.l2 - k.l - k.m1, k.l1 - k.l + k.m2});
  int hi = std::min({k.l1 + k.l2 - k.l, k.l1 - k.m1, k.l2 + k.m2});
  mpq_class sum(0);
  for (int nu = lo; nu <= hi; ++nu) {
    mpz_class den = f(nu) * f(k.l1 + k.l2 - k.l - nu) * f(k.l1 - k.m1 - nu) * f(k.l2 + k.m2 - nu) *
                    f(k.l - k.l2 + k.m1 + nu) * f(k.l - k.l1 - k.m2 + nu);
    mpq_class term(nu % 2 ? -1 : 1, den);
    term.canonicalize();
    sum += term;
  }
  if (sum == 0) return zero;
  Scalar root(prec), s(prec);
  mpfr_set_q(root.raw(), pre.get_mpq_t(), MPFR_RNDN);
  mpfr_sqrt(root.raw(), root.raw(), MPFR_RNDN);
  mpfr_set_q(s.raw(), sum.get_mpq_t(), MPFR_RNDN);
  return root * s;
}

std::vector<CGTerm> phi_inverse_expand(int l1, int l2, int l, int m, long prec) {
  if (l < std::abs(l1 - l2) || l > l1 + l2) throw std::invalid_argument("l outside the coupling range");
  if (std::abs(m) > l) throw std::invalid_argument("|m| > l");
  std::vector<CGTerm> out;
  for (int m1 = -l1; m1 <= l1; ++m1) {
    int m2 = m - m1;
    if (std::abs(m2) > l2) continue;
    Scalar c = clebsch_gordan({l1, m1, l2, m2, l, m}, prec);
    if (detail::negligible(c)) continue;
    out.push_back({m1, m2, std::move(c)});
  }
  return out;
}

const ComplexPoly& HarmonicsCache::Y(int ell, int m) {
  auto key = std::make_pair(ell, m);
  auto it = y_.find(key);
  if (it == y_.end()) it = y_.emplace(key, spherical_harmonic_cartesian(ell, m, prec_)).first;
  return it->second;
}

const std::vector<CGTerm>& HarmonicsCache::expansion(int l1, int l2, int l, int m) {
  auto key = std::make_tuple(l1, l2, l, m);
  auto it = cg_.find(key);
  if (it == cg_.end()) it = cg_.emplace(key, phi_inverse_expand(l1, l2, l, m, prec_)).first;
  return it->second;
}

}  // namespace riesz
