#include "riesz/poly.hpp"

namespace riesz {

ComplexPoly to_complex(const RealPoly& p) {
  std::vector<ComplexPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) out.emplace_back(m, CScalar(c));
  return ComplexPoly::from_terms(p.nvars(), p.precision(), std::move(out));
}

RealPoly real_part(const ComplexPoly& p) {
  std::vector<RealPoly::Term> out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m, c.re);
  return RealPoly::from_terms(p.nvars(), p.precision(), std::move(out));
}

RealPoly imag_part(const ComplexPoly& p) {
  std::vector<RealPoly::Term> out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m, c.im);
  return RealPoly::from_terms(p.nvars(), p.precision(), std::move(out));
}

ComplexPoly conj(const ComplexPoly& p) {
  std::vector<ComplexPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) out.emplace_back(m, conj(c));
  return ComplexPoly::from_terms(p.nvars(), p.precision(), std::move(out));
}

Scalar max_imag(const ComplexPoly& p) {
  Scalar best(p.precision());
  for (const auto& t : p.terms()) {
    if (mpfr_cmpabs(t.second.im.raw(), best.raw()) > 0) best = abs(t.second.im);
  }
  return best;
}

RealPoly to_real_checked(const ComplexPoly& p) {
  Scalar tol = Scalar::pow2(-p.precision() / 2, p.precision());
  if (max_imag(p) > tol) throw std::runtime_error("polynomial is not real within tolerance");
  return real_part(p);
}

}  // namespace riesz
