#pragma once

#include <optional>

#include "nkh/connection.hpp"
#include "nkh/kform.hpp"
#include "nkh/quatoct.hpp"

namespace nkh {

/// K_rho(v) = iota(v) rho ^ rho read as an endomorphism after dividing by a
/// chosen volume form.  lambda = trace(Khat^2)/6; rescaling the volume by mu
/// rescales Khat by 1/mu.
struct KMap {
  Matrix khat;
  Scalar lambda;
  KForm vol;
};

/// The 5-form/vector identification uses the wedge pairing with the stated
/// sign convention e^I ^ e^j = +s for the complement index j.
KMap k_map(const KForm& rho, const KForm& s);

/// Almost complex structure of a stable 3-form of negative lambda:
/// J = Khat / c with c = sqrt(-lambda), so that J^2 = -Id.
/// Throws NotStable when lambda >= 0, NotRepresentable when the exact
/// backend admits no exact c.
InvariantACS j_from_rho(const KForm& rho, const KForm& s);

/// rho_hat with rho_hat(X,Y,Z) = rho(JX,Y,Z); checks the defining identity
/// -rho(JX,JY,JZ) = rho(JX,Y,Z) and throws WrongType when it fails.
KForm hat(const KForm& rho, const InvariantACS& j, const ZeroTest& zt = ZeroTest::exact_mode());

struct ReyesCarrionProblem {
  KForm omega;   // degree 2, nondegenerate
  Scalar lambda; // nonzero NK constant, d omega = 3 lambda rho
  CoframeDifferential coframe;
};

struct ReyesCarrionResult {
  bool holds = false;
  double residual = 0.0;
  InvariantACS j;  // reconstructed from rho
};

/// Checks -2 lambda omega ^ omega = d rho_hat with rho = d omega / (3 lambda).
ReyesCarrionResult check_reyes_carrion(const ReyesCarrionProblem& p,
                                       const ZeroTest& zt = ZeroTest::exact_mode());

/// Solves for lambda^2 in d(hat(d omega)) = -6 lambda^2 omega ^ omega.
/// Returns nullopt when the two sides are not positively proportional
/// (i.e. no real nonzero lambda works); `residual` reports the
/// proportionality defect for the best candidate.
std::optional<Scalar> rc_lambda_squared(const KForm& omega, const CoframeDifferential& coframe,
                                        double* residual = nullptr,
                                        const ZeroTest& zt = ZeroTest::exact_mode());

/// Cone 3-form at unit radius: phi = dt ^ omega + d omega on the coframe
/// (dt, theta^0..theta^5), dt carrying index 0.
KForm cone_3form(const KForm& omega, const KForm& domega);

struct G2Result {
  bool generic = false;
  int sign = 0;  // +1 positive definite pairing, -1 negative definite
  Matrix pairing;
};

/// b_phi(u,v) * vol = iota(u) phi ^ iota(v) phi ^ phi; generic iff definite.
G2Result g2_generic(const KForm& phi, const ZeroTest& zt = ZeroTest::exact_mode());

/// The 3-form phi(x,y,z) = <xy, z> of the stored octonion table, on the
/// seven imaginary directions.
KForm standard_g2_form();

}  // namespace nkh
