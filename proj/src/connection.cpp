#include "nkh/connection.hpp"

#include <cmath>
#include <random>

namespace nkh {

namespace {

Scalar zero_like_model(const InvariantMetric& g) { return Scalar::zero_like(g.g.at(0, 0)); }

std::vector<Scalar> unit_m(int n, int a, const Scalar& like) {
  std::vector<Scalar> v(static_cast<size_t>(n), Scalar::zero_like(like));
  v[static_cast<size_t>(a)] = Scalar::one_like(like);
  return v;
}

}  // namespace

std::vector<std::vector<std::vector<Scalar>>> koszul_u(const InvariantMetric& g,
                                                       const ReductiveSplit& split,
                                                       const LieAlgebraData& L) {
  int n = split.m_dim();
  Scalar like = zero_like_model(g);
  Matrix ginv;
  try {
    ginv = g.g.inverse();
  } catch (const Error&) {
    fail(Errc::SingularMetric, "metric Gram matrix not invertible");
  }
  // cache m-projected brackets of basis pairs
  std::vector<std::vector<std::vector<Scalar>>> br(
      static_cast<size_t>(n), std::vector<std::vector<Scalar>>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      br[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          bracket_m(L, split, unit_m(n, a, like), unit_m(n, b, like));

  std::vector<std::vector<std::vector<Scalar>>> u(
      static_cast<size_t>(n), std::vector<std::vector<Scalar>>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // 2 (U(X_a, X_b) | Z_c) = ([Z_c, X_b]_m | X_a) + ([Z_c, X_a]_m | X_b)
      std::vector<Scalar> rhs;
      rhs.reserve(static_cast<size_t>(n));
      for (int c = 0; c < n; ++c) {
        Scalar v = g.inner(br[static_cast<size_t>(c)][static_cast<size_t>(b)],
                           unit_m(n, a, like)) +
                   g.inner(br[static_cast<size_t>(c)][static_cast<size_t>(a)],
                           unit_m(n, b, like));
        rhs.push_back(v);
      }
      // solve 2 G u = rhs
      auto sol = ginv.apply(rhs);
      for (auto& s : sol) s /= Scalar::one_like(like) + Scalar::one_like(like);
      u[static_cast<size_t>(a)][static_cast<size_t>(b)] = sol;
    }
  return u;
}

ConnectionMap koszul_connection(const InvariantMetric& g, const ReductiveSplit& split,
                                const LieAlgebraData& L) {
  int n = split.m_dim();
  Scalar like = zero_like_model(g);
  Scalar half = Scalar::one_like(like) / (Scalar::one_like(like) + Scalar::one_like(like));
  auto u = koszul_u(g, split, L);
  ConnectionMap cm;
  cm.lambda.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    Matrix lam = Matrix::zero_like(n, n, like);
    for (int b = 0; b < n; ++b) {
      auto w = bracket_m(L, split, unit_m(n, a, like), unit_m(n, b, like));
      for (int r = 0; r < n; ++r)
        lam.at(r, b) = half * w[static_cast<size_t>(r)] +
                       u[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(r)];
    }
    cm.lambda.push_back(std::move(lam));
  }
  return cm;
}

std::vector<Matrix> nabla_j(const ConnectionMap& lam, const InvariantACS& j) {
  std::vector<Matrix> out;
  out.reserve(lam.size());
  for (const auto& l : lam.lambda) out.push_back(l * j.j - j.j * l);
  return out;
}

std::vector<std::vector<std::vector<Scalar>>> nijenhuis(const InvariantACS& j,
                                                        const ReductiveSplit& split,
                                                        const LieAlgebraData& L) {
  int n = split.m_dim();
  Scalar like = Scalar::zero_like(j.j.at(0, 0));
  std::vector<std::vector<std::vector<Scalar>>> out(
      static_cast<size_t>(n), std::vector<std::vector<Scalar>>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ea = unit_m(n, a, like), eb = unit_m(n, b, like);
      auto ja = j.j.apply(ea), jb = j.j.apply(eb);
      auto term = sub(bracket_m(L, split, ja, jb), bracket_m(L, split, ea, eb));
      term = sub(term, j.j.apply(bracket_m(L, split, ja, eb)));
      term = sub(term, j.j.apply(bracket_m(L, split, ea, jb)));
      out[static_cast<size_t>(a)][static_cast<size_t>(b)] = term;
    }
  return out;
}

KForm kahler_form(const InvariantMetric& g, const InvariantACS& j) {
  int n = g.g.rows();
  Matrix om = j.j.transpose() * g.g;  // omega(a,b) = g(J e_a, e_b)
  KForm f(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!om.at(a, b).is_zero()) f.add_term({a, b}, om.at(a, b));
  return f;
}

namespace {

/// Projection of a 3-form onto its (3,0)+(0,3) part:
/// P(psi) = 1/4 (psi - Q(psi)) with Q the sum over slot pairs of J applied
/// twice (eigenvalue -3 on (3,0)+(0,3), +1 on (2,1)+(1,2)).
KForm type30_part(const KForm& psi, const Matrix& j) {
  Scalar one = Scalar::one_like(psi.coeffs().empty() ? Scalar(1) : psi.coeffs().begin()->second);
  Scalar quarter = one / (one + one + one + one);
  KForm q = pair_apply_sum(psi, j);
  return (psi - q).scaled(quarter);
}

}  // namespace

double dW34_diagnostic(const KForm& omega, const CoframeDifferential& coframe,
                       const InvariantACS& j) {
  KForm dom = invariant_d(omega, coframe);
  KForm w34 = dom - type30_part(dom, j.j);
  return w34.max_abs_coeff();
}

bool naturally_reductive_test(const InvariantMetric& g, const ReductiveSplit& split,
                              const LieAlgebraData& L, const ZeroTest& zt) {
  int n = split.m_dim();
  Scalar like = zero_like_model(g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Scalar lhs = g.inner(bracket_m(L, split, unit_m(n, a, like), unit_m(n, b, like)),
                             unit_m(n, c, like));
        Scalar rhs = g.inner(unit_m(n, a, like),
                             bracket_m(L, split, unit_m(n, b, like), unit_m(n, c, like)));
        if (!zt.zero(lhs - rhs)) return false;
      }
  return true;
}

bool canonical_3symmetric_check(const InvariantACS& j, const ReductiveSplit& split,
                                const LieAlgebraData& L, const ZeroTest& zt) {
  int n = split.m_dim();
  Scalar like = Scalar::zero_like(j.j.at(0, 0));
  Scalar minus_one = -Scalar::one_like(like);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ea = unit_m(n, a, like), eb = unit_m(n, b, like);
      auto lhs = bracket_m(L, split, ea, j.j.apply(eb));
      auto rhs = scale(minus_one, j.j.apply(bracket_m(L, split, ea, eb)));
      auto diff = sub(lhs, rhs);
      for (const auto& s : diff)
        if (!zt.zero(s)) return false;
    }
  return true;
}

TypeConstantResult type_constant(const InvariantMetric& g, const InvariantACS& j,
                                 const ConnectionMap& lam, const ZeroTest& zt,
                                 unsigned long seed) {
  int n = g.g.rows();
  Scalar like = zero_like_model(g);
  auto t = nabla_j(lam, j);

  // the structure must be strictly NK: nabla omega nonzero, totally antisymmetric
  bool nonzero = false;
  for (const auto& m : t)
    if (!m.is_zero(zt)) nonzero = true;
  if (!nonzero) fail(Errc::NotStrictNK, "nabla J vanishes (Kahler input)");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto tab = t[static_cast<size_t>(a)].col(b);
      auto tba = t[static_cast<size_t>(b)].col(a);
      auto s = add(tab, tba);
      for (const auto& x : s)
        if (!zt.zero(x)) fail(Errc::NotStrictNK, "nabla J not antisymmetric");
    }

  auto lhs_rhs = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    // (nabla_X J) Y with X = sum x_a e_a: sum_a x_a T_a y
    std::vector<Scalar> v(static_cast<size_t>(n), like);
    for (int a = 0; a < n; ++a) {
      if (x[static_cast<size_t>(a)].is_zero()) continue;
      auto w = t[static_cast<size_t>(a)].apply(y);
      v = add(v, scale(x[static_cast<size_t>(a)], w));
    }
    Scalar lhs = g.inner(v, v);
    Scalar jx_y = g.inner(j.j.apply(x), y);
    Scalar rhs = g.inner(x, x) * g.inner(y, y) - g.inner(x, y) * g.inner(x, y) - jx_y * jx_y;
    return std::pair<Scalar, Scalar>(lhs, rhs);
  };

  std::optional<Scalar> alpha;
  auto consider = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    auto [lhs, rhs] = lhs_rhs(x, y);
    if (zt.zero(rhs)) return zt.zero(lhs);
    Scalar a = lhs / rhs;
    if (!alpha) {
      alpha = a;
      return true;
    }
    return zt.zero(a - *alpha);
  };

  bool ok = true;
  for (int a = 0; a < n && ok; ++a)
    for (int b = 0; b < n && ok; ++b) ok = consider(unit_m(n, a, like), unit_m(n, b, like));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 16 && ok; ++trial) {
    std::vector<Scalar> x(static_cast<size_t>(n), like), y(static_cast<size_t>(n), like);
    for (int i = 0; i < n; ++i) {
      Scalar cx(coef(rng)), cy(coef(rng));
      x[static_cast<size_t>(i)] = like.backend() == Backend::Float ? cx.to_float() : cx + like;
      y[static_cast<size_t>(i)] = like.backend() == Backend::Float ? cy.to_float() : cy + like;
    }
    ok = consider(x, y);
  }

  TypeConstantResult res;
  res.constant = ok && alpha.has_value();
  if (alpha) res.alpha = *alpha;
  return res;
}

Scalar block_coefficient(const ConnectionMap& lam, const ReductiveSplit& split,
                         const LieAlgebraData& L, int bx, int bu, const ZeroTest& zt) {
  int n = split.m_dim();
  Scalar like = Scalar::zero_like(lam.lambda[0].at(0, 0));
  std::optional<Scalar> coeff;
  int offx = 0;
  for (int b = 0; b < bx; ++b) offx += static_cast<int>(split.m_blocks[static_cast<size_t>(b)].size());
  int offu = 0;
  for (int b = 0; b < bu; ++b) offu += static_cast<int>(split.m_blocks[static_cast<size_t>(b)].size());
  int nx = static_cast<int>(split.m_blocks[static_cast<size_t>(bx)].size());
  int nu = static_cast<int>(split.m_blocks[static_cast<size_t>(bu)].size());
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < nu; ++b) {
      int pa = offx + a, pb = offu + b;
      auto lhs = lam.lambda[static_cast<size_t>(pa)].col(pb);
      auto br = bracket_m(L, split, unit_m(n, pa, like), unit_m(n, pb, like));
      // lhs = coeff * br componentwise
      for (int r = 0; r < n; ++r) {
        const Scalar& bv = br[static_cast<size_t>(r)];
        const Scalar& lv = lhs[static_cast<size_t>(r)];
        if (zt.zero(bv)) {
          if (!zt.zero(lv)) fail(Errc::BlockNotScalar, "Lambda not proportional to the bracket");
          continue;
        }
        Scalar cand = lv / bv;
        if (!coeff)
          coeff = cand;
        else if (!zt.zero(cand - *coeff))
          fail(Errc::BlockNotScalar, "Lambda block coefficient not constant");
      }
    }
  if (!coeff) fail(Errc::BlockNotScalar, "block pair has vanishing brackets");
  return *coeff;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Kahler: return "Kahler";
    case Verdict::StrictNK: return "StrictNK";
    case Verdict::HermitianOther: return "Hermitian-other";
    case Verdict::Neither: return "Neither";
  }
  return "?";
}

ClassificationReport classify(const InvariantMetric& g, const InvariantACS& j,
                              const ReductiveSplit& split, const LieAlgebraData& L,
                              const CoframeDifferential& coframe, const ClassifyOptions& opts) {
  int n = split.m_dim();
  if (g.g.rows() != n || j.j.rows() != n) fail(Errc::InconsistentInputs, "sizes disagree with split");
  if (coframe.dim() != n) fail(Errc::InconsistentInputs, "coframe dimension disagrees with split");

  bool flt = g.g.at(0, 0).backend() == Backend::Float;
  double scale = std::max({g.g.max_abs(), j.j.max_abs(), 1.0});
  ZeroTest zt = flt ? ZeroTest::float_mode(opts.verdict_rel_tol * scale) : ZeroTest::exact_mode();

  split.validate(L, zt);
  g.validate(zt);
  j.validate(zt);
  j.validate_compatible(g, zt);

  auto lam = koszul_connection(g, split, L);
  auto t = nabla_j(lam, j);

  // nabla omega (a;b,c) = g(T_a e_b, e_c) = (G T_a)(c, b)
  std::vector<Matrix> w;
  w.reserve(t.size());
  for (const auto& m : t) w.push_back(g.g * m);

  ClassificationReport rep;
  double wmax = 0.0;
  for (const auto& m : w) wmax = std::max(wmax, m.max_abs());
  rep.nabla_omega_norm = wmax;

  // full antisymmetrization: A(a,b,c) = (W(a,b,c)+W(b,c,a)+W(c,a,b))/3
  auto wv = [&](int a, int b, int c) { return w[static_cast<size_t>(a)].at(c, b); };
  Scalar third = Scalar::one_like(g.g.at(0, 0)) /
                 (Scalar::one_like(g.g.at(0, 0)) + Scalar::one_like(g.g.at(0, 0)) +
                  Scalar::one_like(g.g.at(0, 0)));
  double amax = 0.0, rmax = 0.0;
  bool antisym = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Scalar av = (wv(a, b, c) + wv(b, c, a) + wv(c, a, b)) * third;
        Scalar rv = wv(a, b, c) - av;
        amax = std::max(amax, std::fabs(av.to_double()));
        rmax = std::max(rmax, std::fabs(rv.to_double()));
        if (!zt.zero(rv)) antisym = false;
      }
  rep.antisym_part_norm = amax;
  rep.sym_residual_norm = rmax;

  bool nabla_zero = true;
  for (const auto& m : t)
    if (!m.is_zero(zt)) nabla_zero = false;

  auto nij = nijenhuis(j, split, L);
  double nmax = 0.0;
  bool nij_zero = true;
  for (const auto& row : nij)
    for (const auto& v : row) {
      nmax = std::max(nmax, max_abs(v));
      for (const auto& s : v)
        if (!zt.zero(s)) nij_zero = false;
    }
  rep.nijenhuis_norm = nmax;

  KForm omega = kahler_form(g, j);
  KForm dom = invariant_d(omega, coframe);
  rep.dw34_norm = dW34_diagnostic(omega, coframe, j);
  rep.omega_wedge_domega_norm = wedge(omega, dom).max_abs_coeff();
  // invariant form: d(d omega) must vanish even on the reductive tables
  if (!invariant_d(dom, coframe).is_zero(zt))
    fail(Errc::InconsistentInputs, "d^2 omega != 0: coframe table disagrees with the split");

  if (nabla_zero)
    rep.verdict = Verdict::Kahler;
  else if (antisym)
    rep.verdict = Verdict::StrictNK;
  else if (nij_zero)
    rep.verdict = Verdict::HermitianOther;
  else
    rep.verdict = Verdict::Neither;

  rep.naturally_reductive = naturally_reductive_test(g, split, L, zt);
  rep.three_symmetric_canonical = canonical_3symmetric_check(j, split, L, zt);
  if (rep.verdict == Verdict::StrictNK) {
    auto tc = type_constant(g, j, lam, zt, opts.seed);
    if (tc.constant) rep.type_constant = tc.alpha;
  }
  return rep;
}

}  // namespace nkh
