#include "nkh/so3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace nkh {

std::pair<Matrix, std::vector<double>> jacobi_symmetric_eigen(const Matrix& s, int max_sweeps) {
  int n = s.rows();
  if (n != s.cols()) fail(Errc::DimMismatch, "eigen of non-square");
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = s.at(i, j).to_double();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a[p][q]));
    if (off <= 1e-15 * scale) {
      Matrix vm(n, n, Scalar::floating(0.0));
      std::vector<double> eig(n);
      for (int i = 0; i < n; ++i) {
        eig[i] = a[i][i];
        for (int j = 0; j < n; ++j) vm.at(i, j) = Scalar::floating(v[i][j]);
      }
      return {vm, eig};
    }
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) <= 1e-18 * scale) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - sn * vkq;
          v[k][q] = sn * vkp + c * vkq;
        }
      }
  }
  fail(Errc::NoConvergence, "jacobi eigensolver did not converge");
}

So3Diag so3_diagonalize(const Matrix& c, double tol, int max_sweeps) {
  if (c.rows() != 3 || c.cols() != 3) fail(Errc::DimMismatch, "so3_diagonalize needs 3x3");
  bool exact = c.at(0, 0).backend() != Backend::Float;

  if (exact) {
    bool diag = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && !c.at(i, j).is_zero()) diag = false;
    if (!diag)
      fail(Errc::BackendMismatch, "exact so3_diagonalize supports only diagonal input; use the float backend");
    for (int i = 0; i < 3; ++i)
      if (c.at(i, i).is_zero()) fail(Errc::SingularInput, "singular diagonal input");
    Scalar like = c.at(0, 0);
    return {Matrix::identity(3, like), Matrix::identity(3, like), c};
  }

  double scale = std::max(c.max_abs(), 1e-300);
  double detc = c.det().to_double();
  if (std::fabs(detc) < tol * scale * scale * scale)
    fail(Errc::SingularInput, "determinant below tolerance");

  // one-sided Jacobi SVD: rotate column pairs of A = C from the right until
  // all columns are mutually orthogonal, accumulating V; then C = U Sigma V^T
  double a[3][3], v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = c.at(i, j).to_double();
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (int i = 0; i < 3; ++i) {
          app += a[i][p] * a[i][p];
          aqq += a[i][q] * a[i][q];
          apq += a[i][p] * a[i][q];
        }
        if (apq == 0.0 || std::fabs(apq) <= 4e-15 * std::sqrt(app * aqq)) continue;
        converged = false;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = cs * t;
        for (int i = 0; i < 3; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = cs * aip - sn * aiq;
          a[i][q] = sn * aip + cs * aiq;
          double vip = v[i][p], viq = v[i][q];
          v[i][p] = cs * vip - sn * viq;
          v[i][q] = sn * vip + cs * viq;
        }
      }
  }
  if (!converged) fail(Errc::NoConvergence, "one-sided Jacobi SVD did not converge");

  std::array<double, 3> svr{};
  for (int j = 0; j < 3; ++j) svr[static_cast<size_t>(j)] = std::hypot(a[0][j], std::hypot(a[1][j], a[2][j]));
  std::array<int, 3> ord = {0, 1, 2};
  std::sort(ord.begin(), ord.end(), [&](int x, int y) { return svr[static_cast<size_t>(x)] > svr[static_cast<size_t>(y)]; });
  std::vector<double> sv(3);
  Matrix u(3, 3, Scalar::floating(0.0));
  Matrix vs(3, 3, Scalar::floating(0.0));
  for (int j = 0; j < 3; ++j) {
    int src = ord[static_cast<size_t>(j)];
    sv[static_cast<size_t>(j)] = svr[static_cast<size_t>(src)];
    if (sv[static_cast<size_t>(j)] <= tol * scale) fail(Errc::SingularInput, "vanishing singular value");
    for (int i = 0; i < 3; ++i) {
      u.at(i, j) = Scalar::floating(a[i][src] / sv[static_cast<size_t>(j)]);
      vs.at(i, j) = Scalar::floating(v[i][src]);
    }
  }

  // push both factors into SO(3); a flipped column pairs with a negated
  // singular value, which lands in the (permitted) negative diagonal entry
  std::vector<double> dsign(3, 1.0);
  if (u.det().to_double() < 0) {
    for (int i = 0; i < 3; ++i) u.at(i, 2) = -u.at(i, 2);
    dsign[2] = -dsign[2];
  }
  if (vs.det().to_double() < 0) {
    for (int i = 0; i < 3; ++i) vs.at(i, 2) = -vs.at(i, 2);
    dsign[2] = -dsign[2];
  }

  Matrix m = u.transpose();
  Matrix n = vs.transpose();
  Matrix d(3, 3, Scalar::floating(0.0));
  for (int i = 0; i < 3; ++i) d.at(i, i) = Scalar::floating(sv[i] * dsign[i]);
  return {m, n, d};
}

Matrix rational_so_matrix(int n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5);
  Matrix skew(n, n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Scalar x = Scalar::rational(num(rng), 1 + std::abs(num(rng)));
      skew.at(i, j) = x;
      skew.at(j, i) = -x;
    }
  // Cayley transform (I - S)^{-1} (I + S) is special orthogonal
  Matrix id = Matrix::identity(n, Scalar(1));
  return (id - skew).inverse() * (id + skew);
}

}  // namespace nkh
