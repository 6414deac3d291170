#include "nkh/matrix.hpp"

#include <cmath>
#include <sstream>

namespace nkh {

Matrix::Matrix(int rows, int cols, const Scalar& fill)
    : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, fill) {}

Matrix Matrix::identity(int n, const Scalar& like) {
  Matrix m(n, n, Scalar::zero_like(like));
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one_like(like);
  return m;
}

Matrix Matrix::zero_like(int rows, int cols, const Scalar& like) {
  return Matrix(rows, cols, Scalar::zero_like(like));
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) fail(Errc::DimMismatch, "ragged rows");
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& d) {
  int n = static_cast<int>(d.size());
  Matrix m = zero_like(n, n, d.empty() ? Scalar() : d[0]);
  for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimMismatch, "matrix add shape");
  Matrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimMismatch, "matrix sub shape");
  Matrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(Errc::DimMismatch, "matrix mul shape");
  Matrix r(rows_, o.cols_, Scalar::zero_like(e_.empty() ? Scalar() : e_[0]));
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) fail(Errc::DimMismatch, "matrix apply shape");
  std::vector<Scalar> r(rows_, Scalar::zero_like(e_.empty() ? Scalar() : e_[0]));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

bool Matrix::is_zero(const ZeroTest& zt) const {
  for (const auto& x : e_)
    if (!zt.zero(x)) return false;
  return true;
}

bool Matrix::equals(const Matrix& o, const ZeroTest& zt) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return (*this - o).is_zero(zt);
}

bool Matrix::is_symmetric(const ZeroTest& zt) const {
  if (rows_ != cols_) return false;
  return equals(transpose(), zt);
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) fail(Errc::DimMismatch, "trace of non-square");
  Scalar t = Scalar::zero_like(e_.empty() ? Scalar() : e_[0]);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

namespace {

// Gaussian elimination kernel; returns det and, if inv != nullptr, the
// inverse.  Float pivots by magnitude, exact pivots on the first nonzero.
Scalar gauss(const Matrix& m, Matrix* inv) {
  int n = m.rows();
  if (n != m.cols()) fail(Errc::DimMismatch, "gauss on non-square");
  Scalar like = n > 0 ? m.at(0, 0) : Scalar(1);
  bool flt = like.backend() == Backend::Float;
  Matrix a = m;
  Matrix b = Matrix::identity(n, like);
  Scalar det = Scalar::one_like(like);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    if (flt) {
      double best = 0.0;
      for (int r = col; r < n; ++r) {
        double v = std::fabs(a.at(r, col).to_double());
        if (v > best) {
          best = v;
          piv = r;
        }
      }
    } else {
      for (int r = col; r < n; ++r)
        if (!a.at(r, col).is_zero()) {
          piv = r;
          break;
        }
    }
    if (piv < 0) {
      if (inv) fail(Errc::SingularInput, "matrix not invertible");
      return Scalar::zero_like(like);
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(b.at(piv, j), b.at(col, j));
      }
      det = -det;
    }
    Scalar p = a.at(col, col);
    det *= p;
    for (int j = 0; j < n; ++j) {
      a.at(col, j) /= p;
      b.at(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Scalar f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        b.at(r, j) -= f * b.at(col, j);
      }
    }
  }
  if (inv) *inv = b;
  return det;
}

}  // namespace

Scalar Matrix::det() const { return gauss(*this, nullptr); }

Matrix Matrix::inverse() const {
  Matrix inv;
  gauss(*this, &inv);
  return inv;
}

std::vector<Scalar> Matrix::solve(const std::vector<Scalar>& b) const {
  return inverse().apply(b);
}

std::vector<Scalar> Matrix::leading_minors() const {
  if (rows_ != cols_) fail(Errc::DimMismatch, "minors of non-square");
  std::vector<Scalar> out;
  for (int k = 1; k <= rows_; ++k) {
    Matrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = at(i, j);
    out.push_back(sub.det());
  }
  return out;
}

bool Matrix::positive_definite(const ZeroTest& zt) const {
  for (const Scalar& m : leading_minors()) {
    if (zt.exact) {
      if (m.sign() <= 0) return false;
    } else {
      if (m.to_double() <= zt.tol) return false;
    }
  }
  return true;
}

int Matrix::definiteness(const ZeroTest& zt) const {
  auto minors = leading_minors();
  bool pos = true, neg = true;
  for (size_t k = 0; k < minors.size(); ++k) {
    double v = minors[k].to_double();
    int s = zt.exact ? minors[k].sign() : (v > zt.tol ? 1 : (v < -zt.tol ? -1 : 0));
    if (s <= 0) pos = false;
    int want = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1} pattern for negative definite
    if (s != want) neg = false;
  }
  if (pos) return 1;
  if (neg) return -1;
  return 0;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : e_) m = std::max(m, std::fabs(x.to_double()));
  return m;
}

Matrix Matrix::to_float() const {
  Matrix r(rows_, cols_, Scalar::floating(0.0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).to_float();
  return r;
}

Matrix Matrix::to_quadext(unsigned d) const {
  Matrix r = *this;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).to_quadext(d);
  return r;
}

std::vector<Scalar> Matrix::col(int j) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

std::vector<Scalar> Matrix::row(int i) const {
  std::vector<Scalar> v;
  v.reserve(cols_);
  for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) fail(Errc::DimMismatch, "dot length");
  Scalar s = Scalar::zero_like(a.empty() ? Scalar() : a[0]);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Scalar> add(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) fail(Errc::DimMismatch, "vector add length");
  std::vector<Scalar> r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<Scalar> sub(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) fail(Errc::DimMismatch, "vector sub length");
  std::vector<Scalar> r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<Scalar> scale(const Scalar& c, const std::vector<Scalar>& v) {
  std::vector<Scalar> r = v;
  for (auto& x : r) x = x * c;
  return r;
}

double max_abs(const std::vector<Scalar>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::fabs(x.to_double()));
  return m;
}

}  // namespace nkh
