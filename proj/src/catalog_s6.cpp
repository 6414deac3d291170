#include <cmath>
#include <random>

#include "nkh/catalog.hpp"

namespace nkh {

namespace {

using Vec7 = std::array<Scalar, 7>;

Vec7 vzero(const Scalar& like) {
  Vec7 v;
  for (auto& s : v) s = Scalar::zero_like(like);
  return v;
}

Vec7 vadd(const Vec7& a, const Vec7& b) {
  Vec7 r = a;
  for (size_t i = 0; i < 7; ++i) r[i] += b[i];
  return r;
}

Vec7 vsub(const Vec7& a, const Vec7& b) {
  Vec7 r = a;
  for (size_t i = 0; i < 7; ++i) r[i] -= b[i];
  return r;
}

Vec7 vscale(const Scalar& c, const Vec7& a) {
  Vec7 r = a;
  for (auto& s : r) s = s * c;
  return r;
}

double vmax(const Vec7& a) {
  double m = 0.0;
  for (const auto& s : a) m = std::max(m, std::fabs(s.to_double()));
  return m;
}

// tangential projection at x: v - <v,x> x
Vec7 project(const Vec7& x, const Vec7& v) {
  return vsub(v, vscale(dot7(v, x), x));
}

std::vector<std::array<Scalar, 7>> tangent_spanning(const Vec7& x) {
  // coordinate projections e_j - x_j x, dropping the largest-|x_j| axis
  int pivot = 0;
  double best = -1.0;
  for (int j = 0; j < 7; ++j) {
    double v = std::fabs(x[static_cast<size_t>(j)].to_double());
    if (v > best) {
      best = v;
      pivot = j;
    }
  }
  std::vector<Vec7> out;
  for (int j = 0; j < 7; ++j) {
    if (j == pivot) continue;
    Vec7 t = vscale(-x[static_cast<size_t>(j)], x);
    t[static_cast<size_t>(j)] += Scalar::one_like(x[0]);
    out.push_back(t);
  }
  return out;
}

}  // namespace

SpherePointFrame sphere_point_from_params(const std::array<Rational, 6>& u) {
  Rational s(0);
  for (const auto& q : u) s += q * q;
  Rational den = 1 + s;
  SpherePointFrame f;
  f.exact = true;
  f.x[0] = Scalar::rational(Rational(1 - s) / den);
  for (size_t i = 0; i < 6; ++i) f.x[i + 1] = Scalar::rational(Rational(2 * u[i]) / den);
  f.tangent = tangent_spanning(f.x);
  return f;
}

SpherePointFrame sphere_point_basis(int axis) {
  if (axis < 0 || axis > 6) fail(Errc::InvalidParams, "sphere axis out of range");
  SpherePointFrame f;
  f.exact = true;
  for (auto& s : f.x) s = Scalar(0);
  f.x[static_cast<size_t>(axis)] = Scalar(1);
  f.tangent = tangent_spanning(f.x);
  return f;
}

SpherePointFrame sphere_point_float(const std::array<double, 7>& x, double tol) {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  if (std::fabs(n2 - 1.0) > tol) fail(Errc::NotUnitVector, "|x| != 1");
  SpherePointFrame f;
  f.exact = false;
  for (size_t i = 0; i < 7; ++i) f.x[i] = Scalar::floating(x[i]);
  f.tangent = tangent_spanning(f.x);
  return f;
}

namespace {

struct CrossContext {
  // cross product after an optional SO(7) conjugation
  const Matrix* g = nullptr;  // nullptr: plain octonion cross product

  Vec7 cross(const Vec7& u, const Vec7& v) const {
    if (!g) return cross7(u, v);
    auto pull = [&](const Vec7& w) {
      Vec7 r = vzero(w[0]);
      for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 7; ++k)
          r[static_cast<size_t>(i)] += g->at(k, i) * w[static_cast<size_t>(k)];  // g^T w
      return r;
    };
    auto push = [&](const Vec7& w) {
      Vec7 r = vzero(w[0]);
      for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 7; ++k) r[static_cast<size_t>(i)] += g->at(i, k) * w[static_cast<size_t>(k)];
      return r;
    };
    return push(cross7(pull(u), pull(v)));
  }
};

S6Report s6_check_impl(const SpherePointFrame& frame, const CrossContext& ctx, unsigned long seed) {
  const Vec7& x = frame.x;
  Scalar like = Scalar::zero_like(x[0]);
  bool exact = frame.exact;
  double tol = exact ? 0.0 : 1e-9;

  S6Report rep;
  rep.alpha = Scalar::one_like(x[0]);

  // J_x^2 = -Id on the tangent space
  for (const auto& v : frame.tangent) {
    Vec7 jv = ctx.cross(x, v);
    Vec7 jjv = ctx.cross(x, jv);
    rep.j_square_residual = std::max(rep.j_square_residual, vmax(vadd(jjv, v)));
  }

  auto nabla = [&](const Vec7& a, const Vec7& b) { return project(x, ctx.cross(a, b)); };

  std::optional<Scalar> alpha;
  bool alpha_const = true;
  auto check_pair = [&](const Vec7& a, const Vec7& b) {
    Vec7 t = nabla(a, b);
    rep.antisym_residual = std::max(rep.antisym_residual, vmax(vadd(t, nabla(b, a))));
    // |(nabla_a J) b|^2 = alpha (|a|^2 |b|^2 - <a,b>^2 - <J a, b>^2)
    Scalar lhs = dot7(t, t);
    Scalar jab = dot7(ctx.cross(x, a), b);
    Scalar rhs = dot7(a, a) * dot7(b, b) - dot7(a, b) * dot7(a, b) - jab * jab;
    if (std::fabs(rhs.to_double()) <= tol) {
      rep.alpha_residual = std::max(rep.alpha_residual, std::fabs(lhs.to_double()));
      if (exact && !lhs.is_zero()) alpha_const = false;
      return;
    }
    Scalar a_here = lhs / rhs;
    if (!alpha) alpha = a_here;
    Scalar diff = a_here - *alpha;
    rep.alpha_residual = std::max(rep.alpha_residual, std::fabs(diff.to_double()));
    if (exact && !diff.is_zero()) alpha_const = false;
  };

  for (size_t i = 0; i < frame.tangent.size(); ++i) {
    // diagonal: (nabla_X J) X = 0
    Vec7 td = nabla(frame.tangent[i], frame.tangent[i]);
    rep.antisym_residual = std::max(rep.antisym_residual, vmax(td));
    for (size_t j = i + 1; j < frame.tangent.size(); ++j)
      check_pair(frame.tangent[i], frame.tangent[j]);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 8; ++trial) {
    Vec7 a = vzero(like), b = vzero(like);
    for (const auto& tv : frame.tangent) {
      Scalar ca(coef(rng)), cb(coef(rng));
      if (!exact) {
        ca = ca.to_float();
        cb = cb.to_float();
      }
      a = vadd(a, vscale(ca, tv));
      b = vadd(b, vscale(cb, tv));
    }
    check_pair(a, b);
  }

  // float finite-difference cross-check of the ambient derivative:
  // D_X (p -> p x v) = X x v, sampled at h = 1e-5
  {
    double h = 1e-5;
    const auto& X = frame.tangent[0];
    const auto& v = frame.tangent[1];
    std::array<double, 7> xp{}, xm{}, vv{};
    for (size_t i = 0; i < 7; ++i) {
      double xi = x[i].to_double(), Xi = X[i].to_double();
      xp[i] = xi + h * Xi;
      xm[i] = xi - h * Xi;
      vv[i] = v[i].to_double();
    }
    Vec7 fp, fm, vf, Xf;
    for (size_t i = 0; i < 7; ++i) {
      fp[i] = Scalar::floating(xp[i]);
      fm[i] = Scalar::floating(xm[i]);
      vf[i] = Scalar::floating(vv[i]);
      Xf[i] = Scalar::floating(X[i].to_double());
    }
    Vec7 diff = vsub(vscale(Scalar::floating(0.5 / h), vsub(ctx.cross(fp, vf), ctx.cross(fm, vf))),
                     ctx.cross(Xf, vf));
    rep.fd_residual = vmax(diff);
  }

  if (alpha) rep.alpha = *alpha;
  double alpha_dev = std::fabs(rep.alpha.to_double() - 1.0);
  if (exact) {
    rep.ok = alpha_const && rep.antisym_residual == 0.0 && rep.j_square_residual == 0.0 &&
             alpha.has_value() && (*alpha == Scalar::one_like(x[0])) && rep.fd_residual <= 1e-6;
  } else {
    rep.ok = rep.antisym_residual <= tol && rep.j_square_residual <= tol &&
             rep.alpha_residual <= tol && alpha_dev <= tol && rep.fd_residual <= 1e-6;
  }
  return rep;
}

}  // namespace

S6Report s6_check(const SpherePointFrame& frame, unsigned long seed) {
  CrossContext ctx;
  return s6_check_impl(frame, ctx, seed);
}

bool s6_orbit_check(const Matrix& g, const SpherePointFrame& frame, double tol) {
  if (g.rows() != 7 || g.cols() != 7) fail(Errc::DimMismatch, "orbit check needs a 7x7 matrix");
  Matrix gf = g.to_float();
  Matrix gtg = gf.transpose() * gf;
  if (!gtg.equals(Matrix::identity(7, Scalar::floating(1.0)), ZeroTest::float_mode(1e-9)))
    fail(Errc::InvalidParams, "matrix is not orthogonal");
  if (std::fabs(gf.det().to_double() - 1.0) > 1e-9)
    fail(Errc::InvalidParams, "matrix is not special orthogonal");

  // transported structure (f.J)_y = f_* J_{f^-1 y} f_*^-1 at y = g x
  std::array<double, 7> y{};
  for (int i = 0; i < 7; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 7; ++k) acc += gf.at(i, k).to_double() * frame.x[static_cast<size_t>(k)].to_double();
    y[static_cast<size_t>(i)] = acc;
  }
  SpherePointFrame moved = sphere_point_float(y, 1e-8);
  CrossContext ctx;
  ctx.g = &gf;
  S6Report rep = s6_check_impl(moved, ctx, 0);
  double scale = 1.0;
  return rep.antisym_residual <= tol * scale && rep.alpha_residual <= tol * scale &&
         std::fabs(rep.alpha.to_double() - 1.0) <= tol && rep.j_square_residual <= tol;
}

}  // namespace nkh
