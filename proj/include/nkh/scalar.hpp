#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace nkh {

enum class Errc {
  BackendMismatch,
  DivisionByZero,
  NotRepresentable,
  DimMismatch,
  DegreeZero,
  WrongDegree,
  ZeroVolume,
  SingularInput,
  NoConvergence,
  SingularMetric,
  InconsistentInputs,
  NotStable,
  WrongType,
  NotStrictNK,
  NotSemiKahler,
  Degenerate,
  InvalidParams,
  InvalidStructureConstants,
  BlockNotScalar,
  UnknownModel,
  BadParams,
  GridTooLarge,
  NotUnitVector,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

using Rational = mpq_class;

/// Parses "p/q", plain integers and decimal literals ("1.5" -> 3/2).
Rational rational_from_text(const std::string& text);
std::string rational_to_text(const Rational& q);

enum class Backend { Rational, QuadExt, Float };

/// Tagged scalar: exact rational, exact a + b*sqrt(d), or binary64 float.
///
/// Rational and QuadExt(d) values mix freely (the rationals embed in the
/// extension); two different extensions never mix, and float never mixes
/// implicitly with an exact value.
class Scalar {
 public:
  struct Quad {
    Rational a, b;
    unsigned d = 0;
  };

  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long n) : v_(Rational(static_cast<signed long>(n))) {}

  static Scalar rational(long num, long den = 1);
  static Scalar rational(const Rational& q) { return Scalar(q); }
  static Scalar quadext(Rational a, Rational b, unsigned d);
  static Scalar floating(double x) {
    Scalar s;
    s.v_ = x;
    return s;
  }
  static Scalar zero(Backend b, unsigned d = 0);
  /// Zero with the same backend (and extension) as `like`.
  static Scalar zero_like(const Scalar& like);
  static Scalar one_like(const Scalar& like);

  Backend backend() const;
  /// The d of the quadratic extension, 0 for other backends.
  unsigned quad_d() const;

  bool is_zero() const;
  bool is_one() const;
  int sign() const;  // exact for exact backends
  bool is_negative() const { return sign() < 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  /// Exact order comparison (float backend compares doubles).
  bool less_than(const Scalar& o) const;

  const Rational& rat() const;  // throws unless Rational backend
  /// Rational value if the scalar is rational or a QuadExt with b == 0.
  std::optional<Rational> as_rational() const;
  const Quad& quad() const;  // throws unless QuadExt backend
  double dbl() const;        // throws unless Float backend

  double to_double() const;  // lossy conversion, any backend
  Scalar to_float() const { return floating(to_double()); }
  Scalar to_quadext(unsigned d) const;

  std::string str() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

 private:
  explicit Scalar(const Rational& q) : v_(q) {}
  std::variant<Rational, Quad, double> v_;
};

Scalar abs(const Scalar& s);

/// Exact square root when one exists in a rational or quadratic field.
///
/// For a nonnegative rational r the result is rational when r is a perfect
/// square, and (0, b)*sqrt(d) with d squarefree otherwise; `preferred_d`, if
/// nonzero, rejects any extension other than QuadExt(preferred_d).  For a
/// QuadExt input the square root is searched inside the same extension.
/// Returns nullopt when no exact representation is found.
std::optional<Scalar> sqrt_exact(const Scalar& s, unsigned preferred_d = 0);

/// Square root that keeps the backend: exact backends must admit an exact
/// root (throws NotRepresentable otherwise), float takes std::sqrt.
Scalar sqrt_scalar(const Scalar& s, unsigned preferred_d = 0);

/// Splits |n| = a^2 * b with b squarefree.  Returns false when the
/// factorization exceeds the trial-division budget.
bool squarefree_split(const mpz_class& n, mpz_class& a, mpz_class& b);

}  // namespace nkh
