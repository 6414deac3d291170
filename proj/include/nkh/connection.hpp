#pragma once

#include <optional>

#include "nkh/lie.hpp"

namespace nkh {

/// Wang map of the Levi-Civita connection: one matrix Lambda(X_a) on m per
/// m-basis direction, Lambda(X)Y = 1/2 [X,Y]_m + U(X,Y).
struct ConnectionMap {
  std::vector<Matrix> lambda;  // indexed by m-position

  const Matrix& operator[](size_t a) const { return lambda[a]; }
  size_t size() const { return lambda.size(); }
};

ConnectionMap koszul_connection(const InvariantMetric& g, const ReductiveSplit& split,
                                const LieAlgebraData& L);

/// U(X_a, X_b) as m-coordinate vectors (the symmetric part of the Wang map).
std::vector<std::vector<std::vector<Scalar>>> koszul_u(const InvariantMetric& g,
                                                       const ReductiveSplit& split,
                                                       const LieAlgebraData& L);

/// (nabla_{X_a} J) as a matrix per m-direction: Lambda_a J - J Lambda_a.
std::vector<Matrix> nabla_j(const ConnectionMap& lam, const InvariantACS& j);

/// Nijenhuis tensor from m-projected brackets:
/// N(X,Y) = [JX,JY]_m - [X,Y]_m - J[JX,Y]_m - J[X,JY]_m.
std::vector<std::vector<std::vector<Scalar>>> nijenhuis(const InvariantACS& j,
                                                        const ReductiveSplit& split,
                                                        const LieAlgebraData& L);

/// Norm of the (2,1)+(1,2) part of d omega (max-abs coefficient).
double dW34_diagnostic(const KForm& omega, const CoframeDifferential& coframe, const InvariantACS& j);

bool naturally_reductive_test(const InvariantMetric& g, const ReductiveSplit& split,
                              const LieAlgebraData& L, const ZeroTest& zt = ZeroTest::exact_mode());

/// Canonical 3-symmetric identity [X, JY]_m = -J [X,Y]_m over all basis pairs.
bool canonical_3symmetric_check(const InvariantACS& j, const ReductiveSplit& split,
                                const LieAlgebraData& L, const ZeroTest& zt = ZeroTest::exact_mode());

struct TypeConstantResult {
  bool constant = false;
  Scalar alpha;
};

/// The constant alpha in |(nabla_X J)Y|^2 = alpha (|X|^2|Y|^2 - g(X,Y)^2
/// - g(JX,Y)^2), checked on all basis pairs and seeded random combinations.
/// Throws NotStrictNK unless the structure is strictly nearly Kahler.
TypeConstantResult type_constant(const InvariantMetric& g, const InvariantACS& j,
                                 const ConnectionMap& lam,
                                 const ZeroTest& zt = ZeroTest::exact_mode(),
                                 unsigned long seed = 0);

enum class Verdict { Kahler, StrictNK, HermitianOther, Neither };
const char* verdict_name(Verdict v);

struct ClassificationReport {
  Verdict verdict = Verdict::Neither;
  double nabla_omega_norm = 0.0;
  double antisym_part_norm = 0.0;
  double sym_residual_norm = 0.0;
  double nijenhuis_norm = 0.0;
  double dw34_norm = 0.0;
  double omega_wedge_domega_norm = 0.0;
  std::optional<Scalar> type_constant;
  bool naturally_reductive = false;
  bool three_symmetric_canonical = false;
};

struct ClassifyOptions {
  double verdict_rel_tol = 1e-9;
  unsigned long seed = 0;
};

/// Full classification of an invariant almost Hermitian structure.
/// `coframe` drives the independent d-omega diagnostics through the forms
/// layer; pass coframe_from_split(L, split) for the canonical choice.
ClassificationReport classify(const InvariantMetric& g, const InvariantACS& j,
                              const ReductiveSplit& split, const LieAlgebraData& L,
                              const CoframeDifferential& coframe, const ClassifyOptions& opts = {});

/// omega(X,Y) = g(JX, Y) as a 2-form over the m-coframe.
KForm kahler_form(const InvariantMetric& g, const InvariantACS& j);

/// Reads one scalar connection coefficient off a block pair:
/// Lambda(X)U = coeff [X,U]_m for X in block bx, U in block bu.
/// Throws BlockNotScalar when no single coefficient fits.
Scalar block_coefficient(const ConnectionMap& lam, const ReductiveSplit& split,
                         const LieAlgebraData& L, int bx, int bu,
                         const ZeroTest& zt = ZeroTest::exact_mode());

}  // namespace nkh
