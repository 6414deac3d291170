#pragma once

#include <array>
#include <optional>

#include "nkh/model_io.hpp"
#include "nkh/so3.hpp"
#include "nkh/stable.hpp"

namespace nkh {

// ---------------------------------------------------------------------------
// S^3 x S^3
// ---------------------------------------------------------------------------

/// Circular coframe on S^3 x S^3: d e_i = e_{i+1} ^ e_{i+2} on each factor,
/// indices (e1,e2,e3,f1,f2,f3) = (0..5).
CoframeDifferential s3s3_circular_coframe();

/// omega = sum a_i e_{i+1}^e_{i+2} + sum b_i f_{i+1}^f_{i+2} + sum c_ij e_i^f_j.
struct S3S3TwoForm {
  std::array<Scalar, 3> a;
  std::array<Scalar, 3> b;
  Matrix c;  // 3x3

  KForm to_form() const;
  /// tACB + det C, nonzero iff omega^3 != 0.
  Scalar nondegeneracy() const;
};

KForm s3s3_diagonal_form(const Scalar& l1, const Scalar& l2, const Scalar& l3);

struct S3S3Reduction {
  std::array<Scalar, 3> lambda;
  Matrix m, n;  // SO(3) rotations diagonalizing C
};

/// Checks nondegeneracy and the semi-Kahler condition omega ^ d omega = 0
/// (which forces a = b = 0), then diagonalizes C.
S3S3Reduction s3s3_reduce(const S3S3TwoForm& w, const ZeroTest& zt = ZeroTest::exact_mode());

struct S3S3PointReport {
  bool strict_nk = false;
  bool stable = false;           // d omega stable of negative type
  bool rc_solvable = false;      // some real lambda solves the equation
  bool positive = false;         // omega(J., .) positive definite
  int definite_sign = 0;
  double rc_residual = 0.0;
  std::optional<Scalar> lambda_squared;
  std::optional<Verdict> homog_verdict;  // independent classify cross-check
  bool cross_check_agrees = true;
};

/// Full classification of a diagonal invariant 2-form on S^3 x S^3 through
/// the stable-form route, cross-validated against classify() on the group
/// model when the reconstructed pair (g, J) is admissible.
S3S3PointReport s3s3_classify_diagonal(const Scalar& l1, const Scalar& l2, const Scalar& l3,
                                       const ZeroTest& zt = ZeroTest::exact_mode());
/// Same classification for an arbitrary circular-coframe 2-form.
S3S3PointReport s3s3_classify_form(const KForm& omega, const ZeroTest& zt = ZeroTest::exact_mode());

struct Li2Solution {
  std::string description;
  /// k value making the system hold on the all-equal family lambda_i = mu,
  /// expressed as k = k_coeff * mu^4 (computed by substitution).
  Scalar k_coeff;
};

/// Solution set of k/lambda_i = lambda_i(lambda_i^2 - lambda_{i+1}^2
/// - lambda_{i+2}^2): all |lambda_i| equal and nonzero; positivity of
/// omega(J., .) is decided by the sign of det C.
Li2Solution solve_li2();

/// Residual of the (li2) system at a candidate diagonal (after eliminating
/// k): zero iff the candidate lies in the solution family.
Scalar li2_residual(const Scalar& l1, const Scalar& l2, const Scalar& l3);

/// Ledger-Obata model: su(2)^3 over the diagonal, m = {(X,Y,Z): X+Y+Z = 0},
/// bi-invariant restriction metric, canonical cyclic J (QuadExt(3) entries).
HomogeneousModel ledger_obata_model();

/// S^3 x S^3 as a group model (trivial isotropy) with the coframe-dual
/// structure constants, carrying a caller-supplied metric and J.
HomogeneousModel s3s3_group_model(const InvariantMetric& g, const InvariantACS& j);

// ---------------------------------------------------------------------------
// Flag manifold F(1,2) = SU(3)/T^2
// ---------------------------------------------------------------------------

struct FlagMetricParams {
  Scalar r, s, t;
};
using SignTriple = std::array<int, 3>;

/// su(3) with basis (h1,h2 | l1,l2 | m1,m2 | n1,n2), blocks l, m, n scaled
/// by r, s, t; J multiplies the three complex coordinates by
/// (eps1 i, -eps2 i, eps3 i).
HomogeneousModel build_flag(const FlagMetricParams& p, const SignTriple& eps);

/// Connection coefficients (alpha, beta, gamma) of the Wang map in block
/// form, from the 3x3 linear system; cross-checked against block read-back.
std::array<Scalar, 3> flag_connection_coefficients(const FlagMetricParams& p);

struct FlagLoci {
  std::string strict_nk;                       // r=s=t with equal signs
  std::vector<std::string> kahler_families;    // one per mixed-sign class
  /// Which third line closes the sign system consistently with the
  /// computed loci: "(1-gamma)" or "(1-alpha)".
  std::string third_line_variant;
};

FlagLoci flag_solve();

/// The Kahler hyperplane (if any) attached to a sign pattern:
/// 0 -> r=s+t, 1 -> s=r+t, 2 -> t=r+s, nullopt for equal signs.
std::optional<int> flag_kahler_family(const SignTriple& eps);

// ---------------------------------------------------------------------------
// CP(3) = Sp(2)/(S^1 x SU(2))
// ---------------------------------------------------------------------------

struct CP3MetricParam {
  Scalar t;
};

/// sp(2) with basis (h0..h3 | M1,Mi,Mj,Mk | Nj,Nk); J acts on the m block
/// by left quaternion multiplication with i and on the n block by the
/// rotation eta * i (eta = +1 or -1).
HomogeneousModel build_cp3(const CP3MetricParam& p, int eta);

/// The eta passing the canonical 3-symmetric identity.
int cp3_canonical_eta();

struct CP3Locus {
  Scalar strict_nk_t;
  Scalar kahler_t;
  int strict_nk_eta;
  int kahler_eta;
  std::string description;
};

/// Verifies the t = 1 / t = 2 classification on a grid and returns the two
/// NK-class parameter values.
CP3Locus cp3_solve(const std::vector<Scalar>& grid);

// ---------------------------------------------------------------------------
// S^6 in the imaginary octonions
// ---------------------------------------------------------------------------

struct SpherePointFrame {
  std::array<Scalar, 7> x;                      // unit vector
  std::vector<std::array<Scalar, 7>> tangent;   // 6 spanning tangent vectors
  bool exact = true;
};

/// Exact rational point from the rational parametrization
/// x = ((1-|u|^2), 2u) / (1+|u|^2).
SpherePointFrame sphere_point_from_params(const std::array<Rational, 6>& u);
SpherePointFrame sphere_point_basis(int axis);  // x = e_axis
SpherePointFrame sphere_point_float(const std::array<double, 7>& x, double tol = 1e-9);

struct S6Report {
  bool ok = false;
  double antisym_residual = 0.0;
  double alpha_residual = 0.0;
  double j_square_residual = 0.0;
  double fd_residual = 0.0;  // finite-difference cross-check (float path)
  Scalar alpha;              // the type constant, 1 at the round scale
};

/// Nearly Kahler checks of J_x v = x cross v at the given point:
/// (nabla_X J)Y = proj(X cross Y), total antisymmetry and the type
/// constant identity with alpha = 1.
S6Report s6_check(const SpherePointFrame& frame, unsigned long seed = 0);

/// Pushes the structure forward by g in SO(7) and re-runs the checks at
/// g x with the conjugated cross product.
bool s6_orbit_check(const Matrix& g, const SpherePointFrame& frame, double tol = 1e-9);

// ---------------------------------------------------------------------------

/// Builds a catalog model by name: s3s3 (Ledger-Obata), flag, cp3.
HomogeneousModel catalog_model(const std::string& name);

}  // namespace nkh
