#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace riesz {

inline constexpr long kDefaultPrecision = 256;

// Fixed-precision real backed by an mpfr_t. All binary operations require
// both operands to carry the same precision; a mismatch throws.
class Scalar {
 public:
  Scalar() : Scalar(kDefaultPrecision) {}
  explicit Scalar(long precision_bits);
  Scalar(long value, long precision_bits);

  static Scalar from_double(double value, long precision_bits);
  static Scalar from_string(std::string_view text, long precision_bits);
  // num / den rounded once.
  static Scalar rational(long num, long den, long precision_bits);
  static Scalar pi(long precision_bits);
  // 2^e exactly.
  static Scalar pow2(long e, long precision_bits);

  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 40) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar& operator/=(const Scalar& b);
  Scalar& operator*=(long b);
  Scalar& operator/=(long b);
  // *this += a * b with a single rounding.
  void add_product(const Scalar& a, const Scalar& b);
  void sub_product(const Scalar& a, const Scalar& b);
  void negate() { mpfr_neg(v_, v_, MPFR_RNDN); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator*(Scalar a, long b) { return a *= b; }
  friend Scalar operator/(Scalar a, long b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  // Raw access for numerically heavy kernels.
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  void check_same(const Scalar& b) const;
  bool live() const { return v_->_mpfr_d != nullptr; }

  mpfr_t v_;
};

Scalar abs(const Scalar& a);
Scalar sqrt(const Scalar& a);
Scalar pow(const Scalar& a, const Scalar& b);
Scalar pow(const Scalar& a, long e);
Scalar exp(const Scalar& a);
Scalar log(const Scalar& a);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
// n! at the given precision (exact while it fits).
Scalar factorial(long n, long precision_bits);
// Binomial coefficient as an integer; throws on overflow.
std::int64_t binomial(int n, int k);

// Complex number with real and imaginary parts at a shared precision.
struct CScalar {
  Scalar re;
  Scalar im;

  CScalar() = default;
  explicit CScalar(long precision_bits) : re(precision_bits), im(precision_bits) {}
  explicit CScalar(Scalar r) : re(std::move(r)), im(re.precision()) {}
  CScalar(Scalar r, Scalar i);

  long precision() const { return re.precision(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  CScalar& operator+=(const CScalar& b);
  CScalar& operator-=(const CScalar& b);
  CScalar& operator*=(const CScalar& b);
  CScalar& operator*=(const Scalar& b);
  void add_product(const CScalar& a, const CScalar& b);
  void negate() {
    re.negate();
    im.negate();
  }

  friend CScalar operator+(CScalar a, const CScalar& b) { return a += b; }
  friend CScalar operator-(CScalar a, const CScalar& b) { return a -= b; }
  friend CScalar operator*(CScalar a, const CScalar& b) { return a *= b; }
  friend CScalar operator*(CScalar a, const Scalar& b) { return a *= b; }
  CScalar operator-() const;
};

CScalar conj(const CScalar& a);
Scalar abs2(const CScalar& a);

}  // namespace riesz
