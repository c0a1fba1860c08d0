#include "riesz/scalar.hpp"

#include <cstring>
#include <stdexcept>
#include <vector>

namespace riesz {

Scalar::Scalar(long precision_bits) {
  if (precision_bits < MPFR_PREC_MIN) throw std::invalid_argument("precision must be positive");
  mpfr_init2(v_, precision_bits);
  mpfr_set_zero(v_, 1);
}

Scalar::Scalar(long value, long precision_bits) : Scalar(precision_bits) {
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Scalar Scalar::from_double(double value, long precision_bits) {
  Scalar r(precision_bits);
  mpfr_set_d(r.v_, value, MPFR_RNDN);
  return r;
}

Scalar Scalar::from_string(std::string_view text, long precision_bits) {
  Scalar r(precision_bits);
  std::string s(text);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a number: " + s);
  }
  return r;
}

Scalar Scalar::rational(long num, long den, long precision_bits) {
  if (den == 0) throw std::domain_error("zero denominator");
  Scalar r(num, precision_bits);
  mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
  return r;
}

Scalar Scalar::pi(long precision_bits) {
  Scalar r(precision_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Scalar Scalar::pow2(long e, long precision_bits) {
  Scalar r(1, precision_bits);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

Scalar::Scalar(const Scalar& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this == &other) return *this;
  if (!live()) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  if (this != &other) {
    if (live()) mpfr_clear(v_);
    std::memcpy(v_, other.v_, sizeof(mpfr_t));
    other.v_->_mpfr_d = nullptr;
  }
  return *this;
}

Scalar::~Scalar() {
  if (live()) mpfr_clear(v_);
}

std::string Scalar::to_string(int digits) const {
  if (digits < 1) digits = 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

void Scalar::check_same(const Scalar& b) const {
  if (mpfr_get_prec(v_) != mpfr_get_prec(b.v_)) {
    throw std::invalid_argument("Scalar precision mismatch");
  }
}

Scalar& Scalar::operator+=(const Scalar& b) {
  check_same(b);
  mpfr_add(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& b) {
  check_same(b);
  mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& b) {
  check_same(b);
  mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator/=(const Scalar& b) {
  check_same(b);
  if (mpfr_zero_p(b.v_)) throw std::domain_error("division by zero");
  mpfr_div(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator*=(long b) {
  mpfr_mul_si(v_, v_, b, MPFR_RNDN);
  return *this;
}
Scalar& Scalar::operator/=(long b) {
  if (b == 0) throw std::domain_error("division by zero");
  mpfr_div_si(v_, v_, b, MPFR_RNDN);
  return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same(a);
  check_same(b);
  mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
}

void Scalar::sub_product(const Scalar& a, const Scalar& b) {
  check_same(a);
  check_same(b);
  // v - a*b = -(a*b - v)
  mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
  mpfr_neg(v_, v_, MPFR_RNDN);
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.negate();
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  return mpfr_equal_p(a.v_, b.v_) != 0;
}

bool operator<(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  return mpfr_less_p(a.v_, b.v_) != 0;
}

Scalar abs(const Scalar& a) {
  Scalar r(a);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Scalar sqrt(const Scalar& a) {
  if (a.sign() < 0) throw std::domain_error("sqrt of negative value");
  Scalar r(a.precision());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Scalar pow(const Scalar& a, const Scalar& b) {
  if (a.precision() != b.precision()) throw std::invalid_argument("Scalar precision mismatch");
  Scalar r(a.precision());
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Scalar pow(const Scalar& a, long e) {
  Scalar r(a.precision());
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Scalar exp(const Scalar& a) {
  Scalar r(a.precision());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Scalar log(const Scalar& a) {
  if (a.sign() <= 0) throw std::domain_error("log of nonpositive value");
  Scalar r(a.precision());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar factorial(long n, long precision_bits) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  Scalar r(precision_bits);
  mpfr_fac_ui(r.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
  return r;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int j = 1; j <= k; ++j) {
    r = r * (n - k + j) / j;
    if (r > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::int64_t>(r);
}

CScalar::CScalar(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {
  if (re.precision() != im.precision()) throw std::invalid_argument("CScalar precision mismatch");
}

CScalar& CScalar::operator+=(const CScalar& b) {
  re += b.re;
  im += b.im;
  return *this;
}

CScalar& CScalar::operator-=(const CScalar& b) {
  re -= b.re;
  im -= b.im;
  return *this;
}

CScalar& CScalar::operator*=(const CScalar& b) {
  Scalar r = re * b.re;
  r.sub_product(im, b.im);
  Scalar i = re * b.im;
  i.add_product(im, b.re);
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CScalar& CScalar::operator*=(const Scalar& b) {
  re *= b;
  im *= b;
  return *this;
}

void CScalar::add_product(const CScalar& a, const CScalar& b) {
  re.add_product(a.re, b.re);
  re.sub_product(a.im, b.im);
  im.add_product(a.re, b.im);
  im.add_product(a.im, b.re);
}

CScalar CScalar::operator-() const {
  CScalar r(*this);
  r.negate();
  return r;
}

CScalar conj(const CScalar& a) { return CScalar(a.re, -a.im); }

Scalar abs2(const CScalar& a) {
  Scalar r = a.re * a.re;
  r.add_product(a.im, a.im);
  return r;
}

}  // namespace riesz
