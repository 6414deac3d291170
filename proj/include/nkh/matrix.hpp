#pragma once

#include <vector>

#include "nkh/scalar.hpp"

namespace nkh {

/// Zero test used by verdicts: literal equality for exact backends, an
/// absolute threshold for float.
struct ZeroTest {
  bool exact = true;
  double tol = 0.0;

  bool zero(const Scalar& s) const {
    if (exact) return s.is_zero();
    double x = s.to_double();
    return x <= tol && x >= -tol;
  }
  static ZeroTest exact_mode() { return {true, 0.0}; }
  static ZeroTest float_mode(double tol) { return {false, tol}; }
};

/// Small dense matrix of Scalars, row-major, column-action convention:
/// (A v)_i = sum_j A(i,j) v_j.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, const Scalar& fill = Scalar());

  static Matrix identity(int n, const Scalar& like = Scalar(1));
  static Matrix zero_like(int rows, int cols, const Scalar& like);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static Matrix diagonal(const std::vector<Scalar>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  bool operator==(const Matrix& o) const;
  bool is_zero(const ZeroTest& zt) const;
  bool equals(const Matrix& o, const ZeroTest& zt) const;
  bool is_symmetric(const ZeroTest& zt) const;

  Scalar trace() const;
  Scalar det() const;
  Matrix inverse() const;  // throws SingularInput
  /// Solves A x = b for one right-hand side.
  std::vector<Scalar> solve(const std::vector<Scalar>& b) const;

  /// Determinants of the leading principal minors (size 1..n).
  std::vector<Scalar> leading_minors() const;
  /// Exact positive-definiteness via leading minors (float: strict > tol).
  bool positive_definite(const ZeroTest& zt) const;
  /// b definite of either sign: +1 positive, -1 negative, 0 not definite.
  int definiteness(const ZeroTest& zt) const;

  double max_abs() const;
  Matrix to_float() const;
  Matrix to_quadext(unsigned d) const;

  std::vector<Scalar> col(int j) const;
  std::vector<Scalar> row(int i) const;
  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Scalar> e_;
};

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> add(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> sub(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> scale(const Scalar& c, const std::vector<Scalar>& v);
double max_abs(const std::vector<Scalar>& v);

}  // namespace nkh
