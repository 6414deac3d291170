#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nkh/scalar.hpp"

using namespace nkh;

namespace {

Scalar rnd_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 23);
  return Scalar::rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Scalar a = Scalar::rational(2, 4);
  CHECK(a.str() == "1/2");
  CHECK(Scalar::rational(-3, -6).str() == "1/2");
  CHECK(Scalar::rational(3, -6).str() == "-1/2");  // positive denominator kept
  CHECK((Scalar::rational(1, 3) + Scalar::rational(1, 6)) == Scalar::rational(1, 2));
  CHECK_THROWS_AS(Scalar::rational(1, 0), Error);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("rational associativity and distributivity on random inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Scalar a = rnd_rational(rng), b = rnd_rational(rng), c = rnd_rational(rng);
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a * (b + c)) == (a * b + a * c));
  }
}

TEST_CASE("quadratic extension arithmetic") {
  // (a + b sqrt(3)) (a - b sqrt(3)) = a^2 - 3 b^2
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), 1 + std::abs(num(rng)));
    Rational b(num(rng), 1 + std::abs(num(rng)));
    a.canonicalize();
    b.canonicalize();
    Scalar x = Scalar::quadext(a, b, 3);
    Scalar y = Scalar::quadext(a, -b, 3);
    Scalar expect = Scalar::rational(Rational(a * a - 3 * b * b));
    CHECK((x * y) == expect);
  }

  Scalar s = Scalar::quadext(Rational(1), Rational(1), 3);  // 1 + sqrt(3)
  CHECK((s * s) == Scalar::quadext(Rational(4), Rational(2), 3));
  CHECK((Scalar(1) / s).str() == "-1/2+1/2*sqrt(3)");
  CHECK(s.sign() == 1);
  CHECK(Scalar::quadext(Rational(1), Rational(-1), 3).sign() < 0);  // 1 - sqrt(3)
  CHECK(Scalar::quadext(Rational(-1), Rational(1), 3).sign() > 0);  // -1 + sqrt(3)
  CHECK(Scalar::quadext(Rational(2), Rational(-1), 3).sign() > 0);  // 2 - sqrt(3)
}

TEST_CASE("backend mixing rules") {
  Scalar r = Scalar::rational(1, 2);
  Scalar q3 = Scalar::quadext(Rational(0), Rational(1), 3);
  Scalar q5 = Scalar::quadext(Rational(0), Rational(1), 5);
  Scalar f = Scalar::floating(0.5);

  CHECK((r + q3) == Scalar::quadext(Rational(1, 2), Rational(1), 3));
  CHECK_THROWS_AS(q3 + q5, Error);
  CHECK_THROWS_AS(r + f, Error);
  CHECK((r.to_float() + f).to_double() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Scalar::quadext(Rational(1), Rational(1), 4), Error);  // 4 is a square
}

TEST_CASE("exact square roots") {
  auto r = sqrt_exact(Scalar::rational(9, 4));
  REQUIRE(r.has_value());
  CHECK(*r == Scalar::rational(3, 2));

  auto s3 = sqrt_exact(Scalar(3));
  REQUIRE(s3.has_value());
  CHECK(*s3 == Scalar::quadext(Rational(0), Rational(1), 3));

  auto s = sqrt_exact(Scalar::rational(27, 16));
  REQUIRE(s.has_value());
  CHECK(*s == Scalar::quadext(Rational(0), Rational(3, 4), 3));

  // auto-extension picks the squarefree d
  auto s15 = sqrt_exact(Scalar(60));
  REQUIRE(s15.has_value());
  CHECK(s15->quad_d() == 15);
  CHECK(*s15 == Scalar::quadext(Rational(0), Rational(2), 15));

  // sqrt inside a fixed extension
  Scalar x = Scalar::quadext(Rational(4), Rational(2), 3);  // (1 + sqrt(3))^2
  auto rx = sqrt_exact(x);
  REQUIRE(rx.has_value());
  CHECK(*rx == Scalar::quadext(Rational(1), Rational(1), 3));

  CHECK_FALSE(sqrt_exact(Scalar(2), 3).has_value());  // sqrt(2) refused when d = 3 required
  CHECK_FALSE(sqrt_exact(Scalar(-1)).has_value());
  CHECK_FALSE(sqrt_exact(Scalar::quadext(Rational(0), Rational(1), 3)).has_value());
  CHECK_THROWS_AS(sqrt_scalar(Scalar(-4)), Error);
  CHECK_FALSE(sqrt_exact(Scalar::quadext(Rational(-4), Rational(0), 3)).has_value());
}

TEST_CASE("squarefree split") {
  mpz_class a, b;
  REQUIRE(squarefree_split(mpz_class(108), a, b));  // 108 = 6^2 * 3
  CHECK(a == 6);
  CHECK(b == 3);
  REQUIRE(squarefree_split(mpz_class(1), a, b));
  CHECK(a == 1);
  CHECK(b == 1);
  REQUIRE(squarefree_split(mpz_class(49), a, b));
  CHECK(a == 7);
  CHECK(b == 1);
}

TEST_CASE("text parsing") {
  CHECK(rational_from_text("1.5") == Rational(3, 2));
  CHECK(rational_from_text("-7/6") == Rational(-7, 6));
  CHECK(rational_from_text("0.25") == Rational(1, 4));
  CHECK(rational_from_text("42") == Rational(42));
  CHECK_THROWS_AS(rational_from_text("x"), Error);
  CHECK_THROWS_AS(rational_from_text("1/0"), Error);
}

TEST_CASE("ordering and magnitudes") {
  CHECK(Scalar::rational(1, 3).less_than(Scalar::rational(1, 2)));
  Scalar q = Scalar::quadext(Rational(0), Rational(1), 2);  // sqrt(2)
  CHECK(Scalar::rational(7, 5).less_than(q));
  CHECK(q.less_than(Scalar::rational(3, 2)));
  CHECK(abs(Scalar::rational(-5, 2)) == Scalar::rational(5, 2));
  CHECK(Scalar::rational(-5, 2).to_double() == doctest::Approx(-2.5));
}
