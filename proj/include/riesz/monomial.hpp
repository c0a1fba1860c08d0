#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace riesz {

inline constexpr int kMaxVars = 16;

// Dense exponent vector. Variables beyond `nvars` are always zero.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint8_t nvars = 0;

  Monomial() = default;
  explicit Monomial(int n) : nvars(static_cast<std::uint8_t>(n)) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("too many variables");
  }
  Monomial(int n, const std::vector<int>& exps) : Monomial(n) {
    if (static_cast<int>(exps.size()) != n) throw std::invalid_argument("exponent length mismatch");
    for (int i = 0; i < n; ++i) set(i, exps[i]);
  }

  static Monomial variable(int n, int i, int power = 1) {
    Monomial m(n);
    m.set(i, power);
    return m;
  }

  int operator[](int i) const { return e[i]; }
  void set(int i, int v) {
    if (v < 0 || v > 255) throw std::out_of_range("exponent out of range");
    e[i] = static_cast<std::uint8_t>(v);
  }

  int degree() const {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += e[i];
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (int i = 0; i < nvars; ++i) {
      int v = e[i] + o.e[i];
      if (v > 255) throw std::overflow_error("exponent overflow");
      r.e[i] = static_cast<std::uint8_t>(v);
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars == b.nvars && a.e == b.e;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// Graded order: total degree first, then lexicographic with x0 > x1 > ...
// (so x0 precedes x1 among monomials of equal degree).
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (int i = 0; i < a.nvars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  }
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull ^ m.nvars;
    for (int i = 0; i < m.nvars; ++i) {
      h ^= m.e[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// All monomials in n variables with total degree <= max_degree, grlex order.
std::vector<Monomial> monomials_up_to(int n, int max_degree);
// All monomials in n variables of total degree exactly `degree`, grlex order.
std::vector<Monomial> monomials_of_degree(int n, int degree);

}  // namespace riesz
