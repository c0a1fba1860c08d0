#pragma once

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riesz/monomial.hpp"
#include "riesz/scalar.hpp"

namespace riesz {

// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = INT_MIN;

namespace detail {

// A value is negligible when |v| < 2^(16 - precision).
inline bool negligible(const Scalar& v) {
  if (v.is_zero()) return true;
  return mpfr_get_exp(v.raw()) <= 16 - v.precision();
}
inline bool negligible(const CScalar& v) { return negligible(v.re) && negligible(v.im); }

template <class C>
C make_zero(long prec);
template <>
inline Scalar make_zero<Scalar>(long prec) {
  return Scalar(prec);
}
template <>
inline CScalar make_zero<CScalar>(long prec) {
  return CScalar(prec);
}

inline void fma(Scalar& acc, const Scalar& a, const Scalar& b) { acc.add_product(a, b); }
inline void fma(CScalar& acc, const CScalar& a, const CScalar& b) { acc.add_product(a, b); }

}  // namespace detail

// Sparse multivariate polynomial; terms are kept sorted in grlex order with
// no negligible coefficients.
template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;

  BasicPoly() : BasicPoly(0, kDefaultPrecision) {}
  BasicPoly(int nvars, long prec) : nvars_(nvars), prec_(prec) {
    if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("unsupported variable count");
  }

  static BasicPoly constant(int nvars, C c) {
    BasicPoly p(nvars, c.precision());
    if (!detail::negligible(c)) p.terms_.emplace_back(Monomial(nvars), std::move(c));
    return p;
  }
  static BasicPoly term(const Monomial& m, C c) {
    BasicPoly p(m.nvars, c.precision());
    if (!detail::negligible(c)) p.terms_.emplace_back(m, std::move(c));
    return p;
  }
  static BasicPoly variable(int nvars, int i, long prec) {
    C one = detail::make_zero<C>(prec);
    set_one(one);
    return term(Monomial::variable(nvars, i), std::move(one));
  }
  // Sorts, merges equal monomials and drops negligible terms.
  static BasicPoly from_terms(int nvars, long prec, std::vector<Term> terms) {
    BasicPoly p(nvars, prec);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_less(a.first, b.first); });
    for (auto& t : terms) {
      if (t.first.nvars != nvars) throw std::invalid_argument("monomial variable count mismatch");
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    p.prune();
    return p;
  }

  int nvars() const { return nvars_; }
  long precision() const { return prec_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? kZeroDegree : terms_.back().first.degree(); }

  // Coefficient of m, or nullptr when absent.
  const C* find(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return grlex_less(t.first, k); });
    if (it != terms_.end() && it->first == m) return &it->second;
    return nullptr;
  }
  C coeff(const Monomial& m) const {
    const C* c = find(m);
    return c ? *c : detail::make_zero<C>(prec_);
  }

  BasicPoly& operator+=(const BasicPoly& b) { return merge(b, false); }
  BasicPoly& operator-=(const BasicPoly& b) { return merge(b, true); }
  BasicPoly& operator*=(const C& c) {
    for (auto& t : terms_) t.second *= c;
    prune();
    return *this;
  }
  BasicPoly operator-() const {
    BasicPoly r(*this);
    for (auto& t : r.terms_) t.second.negate();
    return r;
  }

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const C& c) { return a *= c; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) { return a.mul(b); }

  BasicPoly mul(const BasicPoly& b) const {
    check_compatible(b);
    BasicPoly r(nvars_, prec_);
    if (is_zero() || b.is_zero()) return r;
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma * mb;
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(m, ca * cb);
        } else {
          detail::fma(it->second, ca, cb);
        }
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& kv : acc) r.terms_.emplace_back(kv.first, std::move(kv.second));
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return grlex_less(x.first, y.first); });
    r.prune();
    return r;
  }

  BasicPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    C one = detail::make_zero<C>(prec_);
    set_one(one);
    BasicPoly r = constant(nvars_, one);
    BasicPoly base(*this);
    while (k > 0) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  // Evaluate at a real point.
  C eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point length mismatch");
    std::vector<std::vector<Scalar>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      if (point[i].precision() != prec_) throw std::invalid_argument("Scalar precision mismatch");
      powers[i].push_back(Scalar(1, prec_));
    }
    C sum = detail::make_zero<C>(prec_);
    Scalar mono(prec_);
    for (const auto& [m, c] : terms_) {
      mpfr_set_ui(mono.raw(), 1, MPFR_RNDN);
      for (int i = 0; i < nvars_; ++i) {
        int k = m[i];
        if (k == 0) continue;
        while (static_cast<int>(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * point[i]);
        mono *= powers[i][k];
      }
      sum += c * mono;
    }
    return sum;
  }

  // Replace variable `var` by `repl` (a polynomial in the same variables).
  BasicPoly substitute(int var, const BasicPoly& repl) const {
    if (var < 0 || var >= nvars_) throw std::out_of_range("substitution index out of range");
    check_compatible(repl);
    std::vector<BasicPoly> rpow;
    C one = detail::make_zero<C>(prec_);
    set_one(one);
    rpow.push_back(constant(nvars_, one));
    // Group terms by the exponent of var.
    std::unordered_map<int, std::vector<Term>> groups;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      int k = m[var];
      rest.set(var, 0);
      groups[k].emplace_back(rest, c);
    }
    BasicPoly r(nvars_, prec_);
    std::vector<int> keys;
    for (auto& kv : groups) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (int k : keys) {
      while (static_cast<int>(rpow.size()) <= k) rpow.push_back(rpow.back() * repl);
      BasicPoly part = from_terms(nvars_, prec_, groups[k]);
      r += part * rpow[k];
    }
    return r;
  }

  BasicPoly derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::out_of_range("derivative index out of range");
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      int k = m[var];
      if (k == 0) continue;
      Monomial d = m;
      d.set(var, k - 1);
      C v = c;
      v *= Scalar(k, prec_);
      out.emplace_back(d, std::move(v));
    }
    return from_terms(nvars_, prec_, std::move(out));
  }

  // Move variable i to slot var_map[i] of an n-variable space (var_map entries
  // may coincide, in which case exponents add).
  BasicPoly remap(const std::vector<int>& var_map, int new_nvars) const {
    if (static_cast<int>(var_map.size()) != nvars_) throw std::invalid_argument("variable map length mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial r(new_nvars);
      for (int i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        r.set(var_map[i], r[var_map[i]] + m[i]);
      }
      out.emplace_back(r, c);
    }
    return from_terms(new_nvars, prec_, std::move(out));
  }

  // Largest |coefficient| (componentwise for complex values).
  Scalar max_abs_coeff() const {
    Scalar best(prec_);
    for (const auto& t : terms_) bump_max(best, t.second);
    return best;
  }

  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return detail::negligible(t.second); }),
                 terms_.end());
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (a.terms_[k].first != b.terms_[k].first) return false;
      if (!coeff_equal(a.terms_[k].second, b.terms_[k].second)) return false;
    }
    return true;
  }

 private:
  static void set_one(Scalar& c) { mpfr_set_ui(c.raw(), 1, MPFR_RNDN); }
  static void set_one(CScalar& c) { mpfr_set_ui(c.re.raw(), 1, MPFR_RNDN); }
  static bool coeff_equal(const Scalar& a, const Scalar& b) { return a == b; }
  static bool coeff_equal(const CScalar& a, const CScalar& b) { return a.re == b.re && a.im == b.im; }
  static void bump_max(Scalar& best, const Scalar& c) {
    if (mpfr_cmpabs(c.raw(), best.raw()) > 0) mpfr_abs(best.raw(), c.raw(), MPFR_RNDN);
  }
  static void bump_max(Scalar& best, const CScalar& c) {
    bump_max(best, c.re);
    bump_max(best, c.im);
  }

  void check_compatible(const BasicPoly& b) const {
    if (nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    if (prec_ != b.prec_) throw std::invalid_argument("Scalar precision mismatch");
  }

  BasicPoly& merge(const BasicPoly& b, bool subtract) {
    check_compatible(b);
    std::vector<Term> out;
    out.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < terms_.size() && grlex_less(terms_[i].first, b.terms_[j].first))) {
        out.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || grlex_less(b.terms_[j].first, terms_[i].first)) {
        out.push_back(b.terms_[j++]);
        if (subtract) out.back().second.negate();
      } else {
        Term t = std::move(terms_[i++]);
        if (subtract) {
          t.second -= b.terms_[j++].second;
        } else {
          t.second += b.terms_[j++].second;
        }
        if (!detail::negligible(t.second)) out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  int nvars_;
  long prec_;
  std::vector<Term> terms_;
};

using RealPoly = BasicPoly<Scalar>;
using ComplexPoly = BasicPoly<CScalar>;

ComplexPoly to_complex(const RealPoly& p);
RealPoly real_part(const ComplexPoly& p);
RealPoly imag_part(const ComplexPoly& p);
ComplexPoly conj(const ComplexPoly& p);
// Largest |imaginary coefficient|.
Scalar max_imag(const ComplexPoly& p);
// Cast to a real polynomial after checking max |im| <= 2^(-precision/2).
RealPoly to_real_checked(const ComplexPoly& p);
// Laplacian in the variable triple (x, y, z) starting at `first`.
template <class C>
BasicPoly<C> laplacian(const BasicPoly<C>& p, int first = 0) {
  BasicPoly<C> r(p.nvars(), p.precision());
  for (int k = 0; k < 3; ++k) r += p.derivative(first + k).derivative(first + k);
  return r;
}

}  // namespace riesz
