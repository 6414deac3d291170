#include "nkh/stable.hpp"

#include <cmath>

namespace nkh {

namespace {

Scalar form_like(const KForm& f) {
  return f.coeffs().empty() ? Scalar(0) : Scalar::zero_like(f.coeffs().begin()->second);
}

}  // namespace

KMap k_map(const KForm& rho, const KForm& s) {
  if (rho.degree() != 3) fail(Errc::WrongDegree, "k_map expects a 3-form");
  int n = rho.dim();
  if (n != 6) fail(Errc::WrongDegree, "k_map is specific to dimension 6");
  if (s.dim() != n || s.degree() != n) fail(Errc::WrongDegree, "volume must be a top form");
  if (s.coeffs().empty()) fail(Errc::ZeroVolume, "volume form vanishes");
  Scalar svol = s.coeffs().begin()->second;

  Scalar like = Scalar::zero_like(rho.coeffs().empty() ? svol : rho.coeffs().begin()->second);
  Scalar one = Scalar::one_like(like);
  Matrix khat = Matrix::zero_like(n, n, like);
  for (int v = 0; v < n; ++v) {
    KForm eta = wedge(interior(v, rho), rho);
    for (const auto& [key, c] : eta.coeffs()) {
      // key misses exactly one index j; u_j from e^{key} ^ e^j = sign * e^{top}
      int j = 0;
      {
        std::vector<char> present(static_cast<size_t>(n), 0);
        for (int idx : key) present[static_cast<size_t>(idx)] = 1;
        for (int i = 0; i < n; ++i)
          if (!present[static_cast<size_t>(i)]) {
            j = i;
            break;
          }
      }
      int sign = ((n - 1 - j) % 2 == 0) ? 1 : -1;  // e^{comp(j)} ^ e^j = sign e^{top}
      Scalar u = (sign > 0 ? c : -c) / svol;
      khat.at(j, v) += u;
    }
  }
  Scalar six = (one + one) * (one + one + one);
  KMap km;
  km.khat = khat;
  km.lambda = (khat * khat).trace() / six;
  km.vol = s;
  return km;
}

InvariantACS j_from_rho(const KForm& rho, const KForm& s) {
  KMap km = k_map(rho, s);
  bool flt = !rho.coeffs().empty() && rho.coeffs().begin()->second.backend() == Backend::Float;
  int lam_sign = km.lambda.sign();
  if (flt) {
    double scale = std::max(1.0, std::pow(rho.max_abs_coeff(), 4));
    if (km.lambda.to_double() >= -1e-12 * scale)
      fail(Errc::NotStable, "lambda(rho) >= 0: no almost complex structure");
  } else if (lam_sign >= 0) {
    fail(Errc::NotStable, "lambda(rho) >= 0: no almost complex structure");
  }
  Scalar c2 = -km.lambda;
  Scalar c;
  if (flt) {
    c = Scalar::floating(std::sqrt(c2.to_double()));
  } else {
    auto r = sqrt_exact(c2);
    if (!r) fail(Errc::NotRepresentable, "sqrt(-lambda) = sqrt(" + c2.str() + ") has no exact form");
    c = *r;
  }
  InvariantACS j;
  j.j = km.khat.scaled(Scalar::one_like(c) / c);
  // J^2 = -Id holds by construction; verify to catch backend drift
  ZeroTest zt = flt ? ZeroTest::float_mode(1e-9 * std::max(1.0, j.j.max_abs())) : ZeroTest::exact_mode();
  j.validate(zt);
  return j;
}

KForm hat(const KForm& rho, const InvariantACS& j, const ZeroTest& zt) {
  if (rho.degree() != 3) fail(Errc::WrongDegree, "hat expects a 3-form");
  // type test: rho is (3,0)+(0,3) iff the pair-sum operator has eigenvalue -3
  KForm q = pair_apply_sum(rho, j.j);
  Scalar one = Scalar::one_like(form_like(rho));
  Scalar three = one + one + one;
  if (!(q + rho.scaled(three)).is_zero(zt))
    fail(Errc::WrongType, "rho is not of type (3,0)+(0,3) for this J");
  KForm rho_hat = slot_apply(rho, j.j, 0);  // rho(JX, Y, Z), alternating for this type
  // the two defining formulas agree: rho(JX,Y,Z) = -rho(JX,JY,JZ)
  KForm via_pullback = -rho.pullback(j.j);
  if (!(rho_hat - via_pullback).is_zero(zt))
    fail(Errc::WrongType, "the two defining formulas for rho_hat disagree");
  return rho_hat;
}

ReyesCarrionResult check_reyes_carrion(const ReyesCarrionProblem& p, const ZeroTest& zt) {
  if (p.omega.degree() != 2) fail(Errc::WrongDegree, "omega must be a 2-form");
  if (p.lambda.is_zero()) fail(Errc::InvalidParams, "lambda must be nonzero");
  int n = p.omega.dim();
  KForm om3 = wedge(wedge(p.omega, p.omega), p.omega);
  if (om3.is_zero(zt)) fail(Errc::Degenerate, "omega^3 = 0: omega degenerate");

  Scalar one = Scalar::one_like(p.lambda);
  Scalar three = one + one + one;
  KForm dom = invariant_d(p.omega, p.coframe);
  KForm rho = dom.scaled(one / (three * p.lambda));

  KForm s = KForm::monomial(n, [n] {
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    return all;
  }(), one);

  ReyesCarrionResult res;
  res.j = j_from_rho(rho, s);
  KForm rho_hat = hat(rho, res.j, zt);
  KForm lhs = invariant_d(rho_hat, p.coframe);
  Scalar two = one + one;
  KForm rhs = wedge(p.omega, p.omega).scaled(two * p.lambda);
  KForm defect = lhs + rhs;  // d rho_hat + 2 lambda omega^2
  res.residual = defect.max_abs_coeff();
  res.holds = defect.is_zero(zt);
  return res;
}

std::optional<Scalar> rc_lambda_squared(const KForm& omega, const CoframeDifferential& coframe,
                                        double* residual, const ZeroTest& zt) {
  KForm dom = invariant_d(omega, coframe);
  KForm s = KForm::monomial(omega.dim(), [&] {
    std::vector<int> all(static_cast<size_t>(omega.dim()));
    for (int i = 0; i < omega.dim(); ++i) all[static_cast<size_t>(i)] = i;
    return all;
  }(), Scalar::one_like(form_like(omega)));

  InvariantACS j = j_from_rho(dom, s);  // may throw NotStable
  KForm h = hat(dom, j, zt);
  KForm lhs = invariant_d(h, coframe);       // = -6 lambda^2 omega^2 if solvable
  KForm om2 = wedge(omega, omega);

  // proportionality constant from the first usable component
  std::optional<Scalar> kappa;
  for (const auto& [key, c] : om2.coeffs()) {
    if (zt.zero(c)) continue;
    kappa = lhs.coeff(key) / c;
    break;
  }
  if (!kappa) {
    if (residual) *residual = lhs.max_abs_coeff();
    return std::nullopt;
  }
  KForm defect = lhs - om2.scaled(*kappa);
  if (residual) *residual = defect.max_abs_coeff();
  if (!defect.is_zero(zt)) return std::nullopt;
  Scalar one = Scalar::one_like(*kappa);
  Scalar six = (one + one) * (one + one + one);
  Scalar lam2 = -*kappa / six;
  if (lam2.sign() <= 0 && lam2.backend() != Backend::Float) return std::nullopt;
  if (lam2.backend() == Backend::Float && lam2.to_double() <= 0) return std::nullopt;
  return lam2;
}

KForm cone_3form(const KForm& omega, const KForm& domega) {
  if (omega.degree() != 2 || domega.degree() != 3) fail(Errc::WrongDegree, "cone_3form degrees");
  if (omega.dim() != domega.dim()) fail(Errc::DimMismatch, "cone_3form dims differ");
  int n = omega.dim();
  KForm phi(n + 1, 3);
  for (const auto& [key, c] : omega.coeffs())
    phi.add_term({0, key[0] + 1, key[1] + 1}, c);
  for (const auto& [key, c] : domega.coeffs())
    phi.add_term({key[0] + 1, key[1] + 1, key[2] + 1}, c);
  return phi;
}

G2Result g2_generic(const KForm& phi, const ZeroTest& zt) {
  if (phi.degree() != 3) fail(Errc::WrongDegree, "g2_generic expects a 3-form");
  int n = phi.dim();
  if (n != 7) fail(Errc::WrongDegree, "g2_generic is specific to dimension 7");
  Scalar like = form_like(phi);
  std::vector<int> top(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) top[static_cast<size_t>(i)] = i;

  Matrix b = Matrix::zero_like(n, n, like);
  for (int u = 0; u < n; ++u) {
    KForm iu = interior(u, phi);
    for (int v = u; v < n; ++v) {
      KForm iv = (v == u) ? iu : interior(v, phi);
      Scalar val = wedge(wedge(iu, iv), phi).coeff(top);
      if (val.is_zero()) val = Scalar::zero_like(like);
      b.at(u, v) = val;
      b.at(v, u) = val;
    }
  }
  G2Result res;
  res.pairing = b;
  res.sign = b.definiteness(zt);
  res.generic = res.sign != 0;
  return res;
}

KForm standard_g2_form() {
  KForm phi(7, 3);
  const auto& table = octonion_table();
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      auto entry = table[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (entry.index < 1) continue;  // product landed on the real unit
      int c = entry.index;
      if (c <= b) continue;  // keep strictly increasing triples only
      phi.add_term({a - 1, b - 1, c - 1}, Scalar(entry.sign));
    }
  return phi;
}

}  // namespace nkh
