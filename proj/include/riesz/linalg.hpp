#pragma once

#include <vector>

#include "riesz/scalar.hpp"

namespace riesz {

// Small dense row-major matrix of Scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, long prec) : rows_(rows), cols_(cols), prec_(prec), data_(rows * cols, Scalar(prec)) {}
  static Matrix identity(int n, long prec);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long precision() const { return prec_; }
  Scalar& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  Scalar max_abs() const;

 private:
  int rows_ = 0, cols_ = 0;
  long prec_ = kDefaultPrecision;
  std::vector<Scalar> data_;
};

// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<Scalar> symmetric_eigenvalues(Matrix a);

// Solve A x = b by Gaussian elimination with partial pivoting.
std::vector<Scalar> dense_solve(Matrix a, std::vector<Scalar> b);

}  // namespace riesz
