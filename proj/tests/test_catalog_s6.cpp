#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nkh/catalog.hpp"

using namespace nkh;

TEST_CASE("basis point: exact residuals and type constant one") {
  SpherePointFrame f = sphere_point_basis(1);
  auto rep = s6_check(f);
  CHECK(rep.ok);
  CHECK(rep.antisym_residual == 0.0);
  CHECK(rep.alpha_residual == 0.0);
  CHECK(rep.j_square_residual == 0.0);
  CHECK(rep.alpha == Scalar(1));
  CHECK(rep.fd_residual <= 1e-6);
}

TEST_CASE("diagonal vanishing (nabla_X J) X = 0 is part of the check") {
  // already asserted inside s6_check; spot check directly at a random point
  SpherePointFrame f = sphere_point_from_params({Rational(1, 2), Rational(0), Rational(1, 3),
                                                 Rational(-2), Rational(0), Rational(1)});
  for (const auto& x : f.tangent) {
    auto c = cross7(x, x);
    for (const auto& s : c) CHECK(s.is_zero());
  }
  CHECK(s6_check(f).ok);
}

TEST_CASE("rational parametrization produces exact unit vectors") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> num(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Rational, 6> u;
    for (auto& q : u) {
      q = Rational(num(rng), 1 + std::abs(num(rng)));
      q.canonicalize();
    }
    SpherePointFrame f = sphere_point_from_params(u);
    Scalar n2 = dot7(f.x, f.x);
    CHECK(n2 == Scalar::rational(1));
    auto rep = s6_check(f, trial);
    CHECK(rep.ok);
    CHECK(rep.alpha == Scalar(1));
    CHECK(rep.antisym_residual == 0.0);
  }
}

TEST_CASE("the Kahler form differential has norm 6 at the round scale") {
  // |nabla omega|^2 = 4 summed over increasing orthonormal tangent triples,
  // and d omega = 3 nabla omega, so |d omega| = 6
  SpherePointFrame f = sphere_point_basis(1);
  Scalar sum(0);
  const auto& t = f.tangent;
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = a + 1; b < t.size(); ++b)
      for (size_t c = b + 1; c < t.size(); ++c) {
        Scalar v = dot7(cross7(t[a], t[b]), t[c]);
        sum += v * v;
      }
  CHECK(sum == Scalar(4));  // 9 * 4 = 36 = 6^2
}

TEST_CASE("orbit transport by special orthogonal matrices") {
  SpherePointFrame f = sphere_point_basis(1);
  for (unsigned long seed = 1; seed <= 10; ++seed) {
    Matrix g = rational_so_matrix(7, seed).to_float();
    CHECK(s6_orbit_check(g, f));
  }
  // also from random rational interior points
  SpherePointFrame f2 = sphere_point_from_params({Rational(1), Rational(0), Rational(-1, 2),
                                                  Rational(1, 3), Rational(0), Rational(2)});
  for (unsigned long seed = 21; seed <= 25; ++seed) {
    Matrix g = rational_so_matrix(7, seed).to_float();
    CHECK(s6_orbit_check(g, f2));
  }
}

TEST_CASE("orbit check validates its inputs") {
  SpherePointFrame f = sphere_point_basis(0);
  Matrix not_orth = Matrix::identity(7, Scalar::floating(1.0));
  not_orth.at(0, 0) = Scalar::floating(2.0);
  CHECK_THROWS_AS(s6_orbit_check(not_orth, f), Error);
  std::array<double, 7> bad{};
  bad[0] = 0.5;
  CHECK_THROWS_AS(sphere_point_float(bad), Error);
  CHECK_THROWS_AS(sphere_point_basis(9), Error);
}

TEST_CASE("float point path stays within tolerance") {
  std::array<double, 7> x{};
  double v[7] = {0.4, -0.2, 0.1, 0.5, 0.3, -0.6, 0.0};
  double n = 0;
  for (int i = 0; i < 7; ++i) n += v[i] * v[i];
  n = std::sqrt(n);
  for (int i = 0; i < 7; ++i) x[static_cast<size_t>(i)] = v[i] / n;
  SpherePointFrame f = sphere_point_float(x);
  auto rep = s6_check(f);
  CHECK(rep.ok);
  CHECK(std::fabs(rep.alpha.to_double() - 1.0) <= 1e-9);
}
