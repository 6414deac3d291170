#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nkh/so3.hpp"

using namespace nkh;

namespace {

Matrix random_float3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  Matrix m(3, 3, Scalar::floating(0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Scalar::floating(d(rng));
  return m;
}

double ortho_residual(const Matrix& q) {
  Matrix d = q.transpose() * q - Matrix::identity(3, Scalar::floating(1.0));
  return d.max_abs();
}

}  // namespace

TEST_CASE("exact determinant and inverse") {
  Matrix a = Matrix::from_rows({{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(1)}});
  CHECK(a.det() == Scalar(1));
  Matrix inv = a.inverse();
  CHECK((a * inv) == Matrix::identity(2, Scalar(1)));
  Matrix sing = Matrix::from_rows({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}});
  CHECK(sing.det() == Scalar(0));
  CHECK_THROWS_AS(sing.inverse(), Error);
}

TEST_CASE("positive definiteness via leading minors") {
  Matrix g = Matrix::from_rows({{Scalar(2), Scalar(-1)}, {Scalar(-1), Scalar(2)}});
  CHECK(g.positive_definite(ZeroTest::exact_mode()));
  CHECK(g.definiteness(ZeroTest::exact_mode()) == 1);
  CHECK((-g).definiteness(ZeroTest::exact_mode()) == -1);
  Matrix ind = Matrix::from_rows({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}});
  CHECK(ind.definiteness(ZeroTest::exact_mode()) == 0);
}

TEST_CASE("so3_diagonalize identity") {
  Matrix id = Matrix::identity(3, Scalar(1));
  auto r = so3_diagonalize(id);
  CHECK(r.m == id);
  CHECK(r.n == id);
  CHECK(r.diag == id);
}

TEST_CASE("so3_diagonalize exact diagonal keeps negative entries") {
  Matrix c = Matrix::diagonal({Scalar(1), Scalar(2), Scalar(-3)});
  auto r = so3_diagonalize(c);
  CHECK(r.m == Matrix::identity(3, Scalar(1)));
  CHECK(r.diag.at(2, 2) == Scalar(-3));
  // exact path refuses a non-diagonal input
  Matrix nd = c;
  nd.at(0, 1) = Scalar(1);
  CHECK_THROWS_AS(so3_diagonalize(nd), Error);
}

TEST_CASE("so3_diagonalize random float inputs") {
  std::mt19937_64 rng(2024);
  int done = 0;
  for (int trial = 0; done < 1000 && trial < 2000; ++trial) {
    Matrix c = random_float3(rng);
    double dc = c.det().to_double();
    if (std::fabs(dc) < 1e-3) continue;
    auto r = so3_diagonalize(c);
    ++done;
    // both factors special orthogonal
    CHECK(ortho_residual(r.m) < 1e-12);
    CHECK(ortho_residual(r.n) < 1e-12);
    CHECK(r.m.det().to_double() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.n.det().to_double() == doctest::Approx(1.0).epsilon(1e-9));
    // M C N^T diagonal
    Matrix d = r.m * c * r.n.transpose();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(std::fabs(d.at(i, j).to_double()) < 1e-10);
    // round trip M^T diag N = C
    Matrix back = r.m.transpose() * r.diag * r.n;
    CHECK((back - c).max_abs() < 1e-10);
    // |det diag| = |det C|
    CHECK(std::fabs(std::fabs(r.diag.det().to_double()) - std::fabs(dc)) < 1e-8 * std::fabs(dc));
    // eigenvalues of C^T C match the squared diagonal
    auto [v, eig] = jacobi_symmetric_eigen(c.transpose() * c);
    std::vector<double> sq;
    for (int i = 0; i < 3; ++i) sq.push_back(r.diag.at(i, i).to_double() * r.diag.at(i, i).to_double());
    std::sort(eig.begin(), eig.end());
    std::sort(sq.begin(), sq.end());
    for (int i = 0; i < 3; ++i) CHECK(sq[static_cast<size_t>(i)] == doctest::Approx(eig[static_cast<size_t>(i)]).epsilon(1e-9));
  }
  CHECK(done == 1000);
}

TEST_CASE("so3_diagonalize rejects singular input") {
  Matrix c(3, 3, Scalar::floating(0.0));
  c.at(0, 0) = Scalar::floating(1.0);
  c.at(1, 1) = Scalar::floating(1.0);
  CHECK_THROWS_AS(so3_diagonalize(c), Error);
}

TEST_CASE("rational special orthogonal matrices are exactly orthogonal") {
  for (unsigned long seed = 1; seed <= 5; ++seed) {
    Matrix q = rational_so_matrix(3, seed);
    CHECK((q.transpose() * q) == Matrix::identity(3, Scalar(1)));
    CHECK(q.det() == Scalar(1));
  }
}
