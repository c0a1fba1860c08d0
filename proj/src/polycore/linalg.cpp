#include "riesz/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace riesz {

Matrix Matrix::identity(int n, long prec) {
  Matrix m(n, n, prec);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1, prec);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, prec_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix c(a.rows_, b.cols_, a.prec_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j).add_product(a(i, k), b(k, j));
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix c = a;
  for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

Scalar Matrix::max_abs() const {
  Scalar best(prec_);
  for (const auto& v : data_)
    if (mpfr_cmpabs(v.raw(), best.raw()) > 0) best = abs(v);
  return best;
}

std::vector<Scalar> symmetric_eigenvalues(Matrix a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("matrix not square");
  const long prec = a.precision();
  Scalar eps = Scalar::pow2(-prec + 8, prec);
  for (int sweep = 0; sweep < 100; ++sweep) {
    Scalar off(prec);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off.add_product(a(p, q), a(p, q));
    Scalar scale(prec);
    for (int p = 0; p < n; ++p) scale.add_product(a(p, p), a(p, p));
    if (off <= eps * eps * (scale + Scalar(1, prec))) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q).is_zero()) continue;
        // Rotation annihilating a(p,q).
        Scalar theta = (a(q, q) - a(p, p)) / (a(p, q) * 2);
        Scalar t = Scalar(theta.sign() >= 0 ? 1 : -1, prec) / (abs(theta) + sqrt(theta * theta + Scalar(1, prec)));
        Scalar c = Scalar(1, prec) / sqrt(t * t + Scalar(1, prec));
        Scalar s = t * c;
        for (int k = 0; k < n; ++k) {
          Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<Scalar> ev;
  for (int i = 0; i < n; ++i) ev.push_back(a(i, i));
  std::sort(ev.begin(), ev.end(), [](const Scalar& x, const Scalar& y) { return x < y; });
  return ev;
}

std::vector<Scalar> dense_solve(Matrix a, std::vector<Scalar> b) {
  const int n = a.rows();
  if (n != a.cols() || static_cast<int>(b.size()) != n) throw std::invalid_argument("shape mismatch");
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (mpfr_cmpabs(a(i, k).raw(), a(piv, k).raw()) > 0) piv = i;
    if (a(piv, k).is_zero()) throw std::runtime_error("singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      Scalar f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j).sub_product(f, a(k, j));
      b[i].sub_product(f, b[k]);
    }
  }
  std::vector<Scalar> x(n, Scalar(a.precision()));
  for (int i = n - 1; i >= 0; --i) {
    Scalar s = b[i];
    for (int j = i + 1; j < n; ++j) s.sub_product(a(i, j), x[j]);
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace riesz
