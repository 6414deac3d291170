#include "nkh/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nkh {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BackendMismatch: return "BackendMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::ZeroVolume: return "ZeroVolume";
    case Errc::SingularInput: return "SingularInput";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularMetric: return "SingularMetric";
    case Errc::InconsistentInputs: return "InconsistentInputs";
    case Errc::NotStable: return "NotStable";
    case Errc::WrongType: return "WrongType";
    case Errc::NotStrictNK: return "NotStrictNK";
    case Errc::NotSemiKahler: return "NotSemiKahler";
    case Errc::Degenerate: return "Degenerate";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidStructureConstants: return "InvalidStructureConstants";
    case Errc::BlockNotScalar: return "BlockNotScalar";
    case Errc::UnknownModel: return "UnknownModel";
    case Errc::BadParams: return "BadParams";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::NotUnitVector: return "NotUnitVector";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

Rational rational_from_text(const std::string& text) {
  std::string s = text;
  if (s.empty()) fail(Errc::ParseError, "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) fail(Errc::ParseError, "bad rational '" + text + "'");
    if (q.get_den() == 0) fail(Errc::DivisionByZero, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    mpz_class n;
    if (n.set_str(s, 10) != 0) fail(Errc::ParseError, "bad integer '" + text + "'");
    return Rational(n);
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") fail(Errc::ParseError, "bad decimal '" + text + "'");
  mpz_class num;
  if (num.set_str(digits, 10) != 0) fail(Errc::ParseError, "bad decimal '" + text + "'");
  mpz_class den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_to_text(const Rational& q) { return q.get_str(); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::quadext(Rational a, Rational b, unsigned d) {
  if (d < 2) fail(Errc::InvalidParams, "quadext requires d >= 2");
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), mpz_class(d).get_mpz_t());
  if (root * root == d) fail(Errc::InvalidParams, "quadext d must not be a perfect square");
  a.canonicalize();
  b.canonicalize();
  Scalar s;
  s.v_ = Quad{a, b, d};
  return s;
}

Scalar Scalar::zero(Backend b, unsigned d) {
  switch (b) {
    case Backend::Rational: return Scalar();
    case Backend::QuadExt: return quadext(Rational(0), Rational(0), d);
    case Backend::Float: return floating(0.0);
  }
  return Scalar();
}

Scalar Scalar::zero_like(const Scalar& like) { return zero(like.backend(), like.quad_d()); }

Scalar Scalar::one_like(const Scalar& like) {
  switch (like.backend()) {
    case Backend::Rational: return Scalar(1);
    case Backend::QuadExt: return quadext(Rational(1), Rational(0), like.quad_d());
    case Backend::Float: return floating(1.0);
  }
  return Scalar(1);
}

Backend Scalar::backend() const {
  if (std::holds_alternative<Rational>(v_)) return Backend::Rational;
  if (std::holds_alternative<Quad>(v_)) return Backend::QuadExt;
  return Backend::Float;
}

unsigned Scalar::quad_d() const {
  if (auto* q = std::get_if<Quad>(&v_)) return q->d;
  return 0;
}

bool Scalar::is_zero() const {
  switch (backend()) {
    case Backend::Rational: return std::get<Rational>(v_) == 0;
    case Backend::QuadExt: {
      const Quad& q = std::get<Quad>(v_);
      return q.a == 0 && q.b == 0;
    }
    case Backend::Float: return std::get<double>(v_) == 0.0;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (backend()) {
    case Backend::Rational: return std::get<Rational>(v_) == 1;
    case Backend::QuadExt: {
      const Quad& q = std::get<Quad>(v_);
      return q.a == 1 && q.b == 0;
    }
    case Backend::Float: return std::get<double>(v_) == 1.0;
  }
  return false;
}

int Scalar::sign() const {
  switch (backend()) {
    case Backend::Rational: return sgn(std::get<Rational>(v_));
    case Backend::QuadExt: {
      const Quad& q = std::get<Quad>(v_);
      int sa = sgn(q.a), sb = sgn(q.b);
      if (sb == 0) return sa;
      if (sa == 0) return sb;
      if (sa == sb) return sa;
      // a and b of opposite sign: compare a^2 against d b^2
      Rational diff = q.a * q.a - Rational(q.d) * q.b * q.b;
      int sd = sgn(diff);
      if (sd == 0) return 0;  // impossible for non-square d unless a=b=0
      return sd > 0 ? sa : sb;
    }
    case Backend::Float: {
      double x = std::get<double>(v_);
      return x > 0 ? 1 : (x < 0 ? -1 : 0);
    }
  }
  return 0;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  switch (backend()) {
    case Backend::Rational: r.v_ = Rational(-std::get<Rational>(v_)); break;
    case Backend::QuadExt: {
      Quad q = std::get<Quad>(v_);
      q.a = -q.a;
      q.b = -q.b;
      r.v_ = q;
      break;
    }
    case Backend::Float: r.v_ = -std::get<double>(v_); break;
  }
  return r;
}

namespace {

// Resolves the common backend of two scalars; rational promotes into a
// quadratic extension, everything else must match exactly.
struct Promoted {
  Backend backend;
  unsigned d;
};

Promoted common_backend(const Scalar& x, const Scalar& y) {
  Backend bx = x.backend(), by = y.backend();
  if (bx == by) {
    if (bx == Backend::QuadExt && x.quad_d() != y.quad_d())
      fail(Errc::BackendMismatch,
           "mixing sqrt(" + std::to_string(x.quad_d()) + ") with sqrt(" + std::to_string(y.quad_d()) + ")");
    return {bx, x.quad_d()};
  }
  if (bx == Backend::Rational && by == Backend::QuadExt) return {Backend::QuadExt, y.quad_d()};
  if (bx == Backend::QuadExt && by == Backend::Rational) return {Backend::QuadExt, x.quad_d()};
  fail(Errc::BackendMismatch, "implicit mix of float and exact scalars");
}

}  // namespace

Scalar Scalar::to_quadext(unsigned d) const {
  switch (backend()) {
    case Backend::Rational: return quadext(std::get<Rational>(v_), Rational(0), d);
    case Backend::QuadExt:
      if (quad_d() != d) fail(Errc::BackendMismatch, "cannot change quadratic extension");
      return *this;
    case Backend::Float: fail(Errc::BackendMismatch, "cannot promote float to quadext");
  }
  return *this;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  Promoted p = common_backend(*this, o);
  switch (p.backend) {
    case Backend::Rational:
      v_ = Rational(std::get<Rational>(v_) + std::get<Rational>(o.v_));
      break;
    case Backend::QuadExt: {
      Quad a = to_quadext(p.d).quad();
      Quad b = o.to_quadext(p.d).quad();
      v_ = Quad{a.a + b.a, a.b + b.b, p.d};
      break;
    }
    case Backend::Float: v_ = std::get<double>(v_) + std::get<double>(o.v_); break;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  Promoted p = common_backend(*this, o);
  switch (p.backend) {
    case Backend::Rational:
      v_ = Rational(std::get<Rational>(v_) * std::get<Rational>(o.v_));
      break;
    case Backend::QuadExt: {
      Quad x = to_quadext(p.d).quad();
      Quad y = o.to_quadext(p.d).quad();
      Rational d(p.d);
      v_ = Quad{x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a, p.d};
      break;
    }
    case Backend::Float: v_ = std::get<double>(v_) * std::get<double>(o.v_); break;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  Promoted p = common_backend(*this, o);
  if (p.backend != Backend::Float && o.is_zero()) fail(Errc::DivisionByZero, "exact division by zero");
  switch (p.backend) {
    case Backend::Rational:
      v_ = Rational(std::get<Rational>(v_) / std::get<Rational>(o.v_));
      break;
    case Backend::QuadExt: {
      Quad x = to_quadext(p.d).quad();
      Quad y = o.to_quadext(p.d).quad();
      Rational d(p.d);
      Rational nrm = y.a * y.a - d * y.b * y.b;  // nonzero: d not a square
      Rational ra = (x.a * y.a - d * x.b * y.b) / nrm;
      Rational rb = (x.b * y.a - x.a * y.b) / nrm;
      v_ = Quad{ra, rb, p.d};
      break;
    }
    case Backend::Float: v_ = std::get<double>(v_) / std::get<double>(o.v_); break;
  }
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  Promoted p = common_backend(*this, o);
  switch (p.backend) {
    case Backend::Rational: return std::get<Rational>(v_) == std::get<Rational>(o.v_);
    case Backend::QuadExt: {
      Quad x = to_quadext(p.d).quad();
      Quad y = o.to_quadext(p.d).quad();
      return x.a == y.a && x.b == y.b;
    }
    case Backend::Float: return std::get<double>(v_) == std::get<double>(o.v_);
  }
  return false;
}

bool Scalar::less_than(const Scalar& o) const { return (*this - o).sign() < 0; }

const Rational& Scalar::rat() const {
  if (backend() != Backend::Rational) fail(Errc::BackendMismatch, "not a rational scalar");
  return std::get<Rational>(v_);
}

std::optional<Rational> Scalar::as_rational() const {
  if (backend() == Backend::Rational) return std::get<Rational>(v_);
  if (backend() == Backend::QuadExt) {
    const Quad& q = std::get<Quad>(v_);
    if (q.b == 0) return q.a;
  }
  return std::nullopt;
}

const Scalar::Quad& Scalar::quad() const {
  if (backend() != Backend::QuadExt) fail(Errc::BackendMismatch, "not a quadext scalar");
  return std::get<Quad>(v_);
}

double Scalar::dbl() const {
  if (backend() != Backend::Float) fail(Errc::BackendMismatch, "not a float scalar");
  return std::get<double>(v_);
}

double Scalar::to_double() const {
  switch (backend()) {
    case Backend::Rational: return std::get<Rational>(v_).get_d();
    case Backend::QuadExt: {
      const Quad& q = std::get<Quad>(v_);
      return q.a.get_d() + q.b.get_d() * std::sqrt(static_cast<double>(q.d));
    }
    case Backend::Float: return std::get<double>(v_);
  }
  return 0.0;
}

std::string Scalar::str() const {
  switch (backend()) {
    case Backend::Rational: return rational_to_text(std::get<Rational>(v_));
    case Backend::QuadExt: {
      const Quad& q = std::get<Quad>(v_);
      if (q.b == 0) return rational_to_text(q.a);
      std::ostringstream os;
      if (q.a != 0) {
        os << rational_to_text(q.a);
        os << (sgn(q.b) < 0 ? "-" : "+");
        Rational ab = abs(q.b);
        if (ab != 1) os << rational_to_text(ab) << "*";
      } else {
        if (sgn(q.b) < 0) os << "-";
        Rational ab = abs(q.b);
        if (ab != 1) os << rational_to_text(ab) << "*";
      }
      os << "sqrt(" << q.d << ")";
      return os.str();
    }
    case Backend::Float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v_));
      return buf;
    }
  }
  return "?";
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

bool squarefree_split(const mpz_class& n, mpz_class& a, mpz_class& b) {
  mpz_class m = ::abs(n);
  a = 1;
  b = 1;
  if (m == 0) {
    a = 0;
    return true;
  }
  // strip small prime squares
  auto strip = [&](unsigned long p) {
    unsigned cnt = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++cnt;
    }
    for (unsigned i = 0; i < cnt / 2; ++i) a *= p;
    if (cnt % 2 == 1) b *= p;
  };
  strip(2);
  for (unsigned long p = 3; p <= 100000UL && m > 1; p += 2) {
    if (m.fits_ulong_p() && p * p > m.get_ui()) break;  // m is prime now
    strip(p);
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      a *= r;
    } else if (m.fits_ulong_p() && m.get_ui() <= 10000000000UL) {
      // no prime factor below 1e5 and at most 1e10: at most two distinct
      // prime factors and not a square, hence squarefree
      b *= m;
    } else {
      return false;  // cannot certify squarefree-ness
    }
  }
  return true;
}

namespace {

// sqrt of a nonnegative rational, exact: rational if perfect square, else
// (q, d) with sqrt(r) = q*sqrt(d), d squarefree.  nullopt if the factoring
// budget is exceeded.
struct RatRoot {
  Rational q;
  unsigned long d;  // 1 when the root is rational
};

std::optional<RatRoot> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return RatRoot{Rational(0), 1};
  mpz_class num = r.get_num(), den = r.get_den();
  // sqrt(p/q) = sqrt(p*q)/q
  mpz_class m = num * den;
  mpz_class a, b;
  if (!squarefree_split(m, a, b)) return std::nullopt;
  if (!b.fits_ulong_p()) return std::nullopt;
  Rational q(a, den);
  q.canonicalize();
  return RatRoot{q, b.get_ui()};
}

}  // namespace

std::optional<Scalar> sqrt_exact(const Scalar& s, unsigned preferred_d) {
  switch (s.backend()) {
    case Backend::Float: {
      double x = s.to_double();
      if (x < 0) return std::nullopt;
      return Scalar::floating(std::sqrt(x));
    }
    case Backend::Rational: {
      auto rr = rational_sqrt(s.rat());
      if (!rr) return std::nullopt;
      if (rr->d == 1) return Scalar::rational(rr->q);
      if (preferred_d != 0 && preferred_d != rr->d) return std::nullopt;
      return Scalar::quadext(Rational(0), rr->q, static_cast<unsigned>(rr->d));
    }
    case Backend::QuadExt: {
      const auto& q = s.quad();
      unsigned d = q.d;
      if (q.b == 0) {
        // pure rational living in QuadExt(d): root rational, or q.a = d*y^2
        auto rr = rational_sqrt(q.a);
        if (!rr) return std::nullopt;
        if (rr->d == 1) return Scalar::quadext(rr->q, Rational(0), d);
        if (rr->d == d) return Scalar::quadext(Rational(0), rr->q, d);
        return std::nullopt;
      }
      if (s.sign() < 0) return std::nullopt;
      // solve (x + y sqrt(d))^2 = a + b sqrt(d): x^2 + d y^2 = a, 2xy = b
      Rational disc = q.a * q.a - Rational(d) * q.b * q.b;
      auto sd = rational_sqrt(disc);
      if (!sd || sd->d != 1) return std::nullopt;
      for (int pick = 0; pick < 2; ++pick) {
        Rational t = (q.a + (pick == 0 ? sd->q : -sd->q)) / 2;
        if (t < 0) continue;
        auto xr = rational_sqrt(t);
        if (!xr || xr->d != 1 || xr->q == 0) continue;
        Rational x = xr->q;
        Rational y = q.b / (2 * x);
        Scalar cand = Scalar::quadext(x, y, d);
        if (cand * cand == s && cand.sign() >= 0) return cand;
        cand = -cand;
        if (cand * cand == s && cand.sign() >= 0) return cand;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Scalar sqrt_scalar(const Scalar& s, unsigned preferred_d) {
  auto r = sqrt_exact(s, preferred_d);
  if (!r) fail(Errc::NotRepresentable, "no exact square root of " + s.str());
  return *r;
}

}  // namespace nkh
