#include <sstream>

#include "nkh/catalog.hpp"

namespace nkh {

CoframeDifferential s3s3_circular_coframe() {
  // d e_i = e_{i+1} ^ e_{i+2} on each factor, indices mod 3
  std::vector<KForm> table;
  table.reserve(6);
  for (int block = 0; block < 2; ++block) {
    int off = 3 * block;
    for (int i = 0; i < 3; ++i) {
      KForm f(6, 2);
      f.add_term({off + (i + 1) % 3, off + (i + 2) % 3}, Scalar(1));
      table.push_back(std::move(f));
    }
  }
  return CoframeDifferential::checked(std::move(table));
}

KForm S3S3TwoForm::to_form() const {
  KForm f(6, 2);
  for (int i = 0; i < 3; ++i) {
    f.add_term({(i + 1) % 3, (i + 2) % 3}, a[static_cast<size_t>(i)]);
    f.add_term({3 + (i + 1) % 3, 3 + (i + 2) % 3}, b[static_cast<size_t>(i)]);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f.add_term({i, 3 + j}, c.at(i, j));
  return f;
}

Scalar S3S3TwoForm::nondegeneracy() const {
  std::vector<Scalar> ca = c.transpose().apply({a[0], a[1], a[2]});
  Scalar tacb = dot({b[0], b[1], b[2]}, ca);
  return tacb + c.det();
}

KForm s3s3_diagonal_form(const Scalar& l1, const Scalar& l2, const Scalar& l3) {
  KForm f(6, 2);
  f.add_term({0, 3}, l1);
  f.add_term({1, 4}, l2);
  f.add_term({2, 5}, l3);
  return f;
}

S3S3Reduction s3s3_reduce(const S3S3TwoForm& w, const ZeroTest& zt) {
  KForm omega = w.to_form();
  bool flt = w.c.at(0, 0).backend() == Backend::Float;
  KForm om2 = wedge(omega, omega);
  KForm om3 = wedge(om2, omega);
  if (om3.is_zero(zt)) fail(Errc::Degenerate, "omega^3 = 0");
  // cross-check the closed form tACB + det C against omega^3
  Scalar nd = w.nondegeneracy();
  if (zt.zero(nd)) fail(Errc::Degenerate, "tACB + det C = 0");

  CoframeDifferential cd = s3s3_circular_coframe();
  if (flt) cd = cd.to_float();
  KForm dom = invariant_d(omega, cd);
  if (!wedge(omega, dom).is_zero(zt))
    fail(Errc::NotSemiKahler, "omega ^ d omega != 0 (tCA or CB survives)");

  // with omega ^ d omega = 0 and nondegeneracy, a = b = 0 is forced
  for (int i = 0; i < 3; ++i)
    if (!zt.zero(w.a[static_cast<size_t>(i)]) || !zt.zero(w.b[static_cast<size_t>(i)]))
      fail(Errc::InconsistentInputs, "mixed-block coefficients survive the semi-Kahler check");

  auto diag = so3_diagonalize(w.c);
  S3S3Reduction red;
  red.m = diag.m;
  red.n = diag.n;
  for (int i = 0; i < 3; ++i) red.lambda[static_cast<size_t>(i)] = diag.diag.at(i, i);
  return red;
}

S3S3PointReport s3s3_classify_form(const KForm& omega, const ZeroTest& zt) {
  S3S3PointReport rep;
  bool flt = !omega.coeffs().empty() &&
             omega.coeffs().begin()->second.backend() == Backend::Float;
  CoframeDifferential cd = s3s3_circular_coframe();
  if (flt) cd = cd.to_float();
  KForm om3 = wedge(wedge(omega, omega), omega);
  if (om3.is_zero(zt)) fail(Errc::Degenerate, "omega^3 = 0");

  Scalar like = Scalar::one_like(omega.coeffs().begin()->second);
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  KForm vol = KForm::monomial(6, all, like);
  KForm dom = invariant_d(omega, cd);

  InvariantACS j;
  try {
    j = j_from_rho(dom, vol);
    rep.stable = true;
  } catch (const Error& e) {
    if (e.code() != Errc::NotStable) throw;
    rep.stable = false;
    return rep;
  }

  auto lam2 = rc_lambda_squared(omega, cd, &rep.rc_residual, zt);
  rep.rc_solvable = lam2.has_value();
  rep.lambda_squared = lam2;

  // metric reconstruction g(X,Y) = omega(JX, Y); positive definite iff the
  // diagonalized coefficients have det C > 0
  int n = 6;
  Matrix om_mat = Matrix::zero_like(n, n, Scalar::zero_like(like));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) om_mat.at(p, q) = omega.value({p, q});
  // g(a,b) = omega(J e_a, e_b) = sum_c J(c,a) om(c,b) = (J^T Om)(a,b)
  Matrix g = j.j.transpose() * om_mat;
  bool symmetric = g.is_symmetric(zt);
  rep.definite_sign = symmetric ? g.definiteness(zt) : 0;
  rep.positive = rep.definite_sign > 0;
  rep.strict_nk = rep.stable && rep.rc_solvable && rep.positive;

  if (symmetric && rep.positive) {
    InvariantMetric gm{g};
    HomogeneousModel model = s3s3_group_model(gm, j);
    if (flt) model = model.to_float();
    ClassifyOptions opts;
    ClassificationReport cr = classify(model.metric, *model.acs, model.split, model.algebra,
                                       model.coframe, opts);
    rep.homog_verdict = cr.verdict;
    rep.cross_check_agrees = (cr.verdict == Verdict::StrictNK) == rep.strict_nk;
  } else {
    rep.homog_verdict = std::nullopt;
    rep.cross_check_agrees = !rep.strict_nk;
  }
  return rep;
}

S3S3PointReport s3s3_classify_diagonal(const Scalar& l1, const Scalar& l2, const Scalar& l3,
                                       const ZeroTest& zt) {
  return s3s3_classify_form(s3s3_diagonal_form(l1, l2, l3), zt);
}

Scalar li2_residual(const Scalar& l1, const Scalar& l2, const Scalar& l3) {
  if (l1.is_zero() || l2.is_zero() || l3.is_zero())
    fail(Errc::Degenerate, "li2 requires nonzero diagonal values");
  auto e = [&](const Scalar& x, const Scalar& y, const Scalar& z) {
    // k = x^2 (x^2 - y^2 - z^2) after multiplying (li2) by x
    Scalar x2 = x * x;
    return x2 * (x2 - y * y - z * z);
  };
  Scalar e1 = e(l1, l2, l3), e2 = e(l2, l3, l1), e3 = e(l3, l1, l2);
  return abs(e1 - e2) + abs(e1 - e3);
}

Li2Solution solve_li2() {
  Li2Solution sol;
  // substitute the all-equal candidate lambda_i = mu and read off k / mu^4
  Scalar mu(2);
  Scalar mu2 = mu * mu;
  Scalar k = mu2 * (mu2 - mu2 - mu2);  // = lambda_1^2(lambda_1^2-lambda_2^2-lambda_3^2)
  sol.k_coeff = k / (mu2 * mu2);
  std::ostringstream os;
  os << "|lambda_1| = |lambda_2| = |lambda_3| != 0; "
     << "omega(J.,.) positive definite iff det C > 0 (negative definite otherwise); "
     << "k = " << sol.k_coeff.str() << " * lambda_1^4 on the equal family"
     << " (sign fixed by direct substitution)";
  sol.description = os.str();
  return sol;
}

HomogeneousModel ledger_obata_model() {
  // su(2)^3 over the diagonal: h_i = (u_i,u_i,u_i), a_i = (u_i,-u_i,0),
  // b_i = (0,u_i,-u_i) with [u_i,u_j] = 2 u_k cyclic.
  std::vector<LieAlgebraData::Entry> es;
  auto third = [](long n) { return Scalar::rational(n, 3); };
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    int h = 0, a = 3, b = 6;
    // [h_i, h_j] = 2 h_k
    es.push_back({h + i, h + j, h + k, Scalar(2)});
    // [h_i, a_j] = 2 a_k, [h_i, b_j] = 2 b_k (and the eps-antisymmetric mates)
    es.push_back({h + i, a + j, a + k, Scalar(2)});
    es.push_back({h + i, a + k, a + j, Scalar(-2)});
    es.push_back({h + i, b + j, b + k, Scalar(2)});
    es.push_back({h + i, b + k, b + j, Scalar(-2)});
    // [a_i, a_j] = (4/3) h_k + (2/3) a_k + (4/3) b_k
    es.push_back({a + i, a + j, h + k, third(4)});
    es.push_back({a + i, a + j, a + k, third(2)});
    es.push_back({a + i, a + j, b + k, third(4)});
    // [b_i, b_j] = (4/3) h_k - (4/3) a_k - (2/3) b_k
    es.push_back({b + i, b + j, h + k, third(4)});
    es.push_back({b + i, b + j, a + k, third(-4)});
    es.push_back({b + i, b + j, b + k, third(-2)});
    // [a_i, b_j] = -(2/3)(h_k - a_k + b_k), [a_j, b_i] the opposite
    es.push_back({a + i, b + j, h + k, third(-2)});
    es.push_back({a + i, b + j, a + k, third(2)});
    es.push_back({a + i, b + j, b + k, third(-2)});
    es.push_back({a + j, b + i, h + k, third(2)});
    es.push_back({a + j, b + i, a + k, third(-2)});
    es.push_back({a + j, b + i, b + k, third(2)});
  }
  HomogeneousModel m;
  m.name = "s3s3";
  m.algebra = LieAlgebraData::from_entries(9, es);
  m.split.h_indices = {0, 1, 2};
  m.split.m_blocks = {{3, 4, 5}, {6, 7, 8}};
  m.split.block_names = {"a", "b"};
  m.split.validate(m.algebra);

  // product metric restricted to the sum-zero complement
  Matrix g = Matrix::zero_like(6, 6, Scalar(0));
  for (int i = 0; i < 3; ++i) {
    g.at(i, i) = Scalar(2);
    g.at(3 + i, 3 + i) = Scalar(2);
    g.at(i, 3 + i) = Scalar(-1);
    g.at(3 + i, i) = Scalar(-1);
  }
  m.metric.g = g;

  // canonical J = (1 + 2 sigma)/sqrt(3) on (a,b): Ja = (a + 2b)/sqrt(3),
  // Jb = (-2a - b)/sqrt(3)
  Scalar inv_s3 = Scalar::quadext(Rational(0), Rational(1, 3), 3);  // 1/sqrt(3) = sqrt(3)/3
  Matrix j = Matrix::zero_like(6, 6, Scalar::zero_like(inv_s3));
  for (int i = 0; i < 3; ++i) {
    j.at(i, i) = inv_s3;
    j.at(3 + i, i) = inv_s3 + inv_s3;
    j.at(i, 3 + i) = -(inv_s3 + inv_s3);
    j.at(3 + i, 3 + i) = -inv_s3;
  }
  m.acs = InvariantACS{j};
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

HomogeneousModel s3s3_group_model(const InvariantMetric& g, const InvariantACS& j) {
  // trivial isotropy; brackets dual to the circular coframe:
  // [X_i, X_j] = -X_k cyclic on each factor
  std::vector<LieAlgebraData::Entry> es;
  for (int block = 0; block < 2; ++block) {
    int off = 3 * block;
    for (int i = 0; i < 3; ++i)
      es.push_back({off + i, off + (i + 1) % 3, off + (i + 2) % 3, Scalar(-1)});
  }
  HomogeneousModel m;
  m.name = "s3s3-group";
  m.algebra = LieAlgebraData::from_entries(6, es);
  m.split.h_indices = {};
  m.split.m_blocks = {{0, 1, 2}, {3, 4, 5}};
  m.split.block_names = {"e", "f"};
  m.metric = g;
  m.acs = j;
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

HomogeneousModel catalog_model(const std::string& name) {
  if (name == "s3s3") return ledger_obata_model();
  if (name == "flag") return build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1});
  if (name == "cp3") return build_cp3({Scalar(1)}, cp3_canonical_eta());
  fail(Errc::UnknownModel, "no catalog model named '" + name + "'");
}

}  // namespace nkh
