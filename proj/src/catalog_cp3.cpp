#include <sstream>

#include "nkh/catalog.hpp"

namespace nkh {

namespace {

using QMat2 = std::array<std::array<Quaternion, 2>, 2>;

QMat2 qzero() {
  QMat2 m;
  for (auto& row : m)
    for (auto& q : row) q = Quaternion::real(Scalar(0));
  return m;
}

QMat2 qmul(const QMat2& a, const QMat2& b) {
  QMat2 r = qzero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

QMat2 qsub(const QMat2& a, const QMat2& b) {
  QMat2 r = qzero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

// <X,Y> = -1/2 Re tr(XY)
Scalar qinner(const QMat2& x, const QMat2& y) {
  Scalar tr(0);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) tr += (x[i][k] * y[k][i]).w;
  return -tr / Scalar(2);
}

// basis of sp(2) adapted to h + m + n:
// h0 = diag(i,0), h1..h3 = diag(0, i|j|k), M_a = [[0,a],[-a*,0]] for
// a = 1,i,j,k, N = diag(j,0), diag(k,0)
std::array<QMat2, 10> sp2_basis() {
  auto unit = [](int idx) { return Quaternion::unit(idx, Scalar(1)); };
  std::array<QMat2, 10> b;
  for (auto& m : b) m = qzero();
  b[0][0][0] = unit(1);
  b[1][1][1] = unit(1);
  b[2][1][1] = unit(2);
  b[3][1][1] = unit(3);
  for (int a = 0; a < 4; ++a) {
    b[static_cast<size_t>(4 + a)][0][1] = unit(a);
    b[static_cast<size_t>(4 + a)][1][0] = -unit(a).conj();
  }
  b[8][0][0] = unit(2);
  b[9][0][0] = unit(3);
  return b;
}

const LieAlgebraData& sp2_structure_constants() {
  static const LieAlgebraData L = [] {
    auto basis = sp2_basis();
    Matrix gram(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        gram.at(i, j) = qinner(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    Matrix ginv = gram.inverse();
    std::vector<LieAlgebraData::Entry> entries;
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j) {
        QMat2 br = qsub(qmul(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]),
                        qmul(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(i)]));
        std::vector<Scalar> w;
        w.reserve(10);
        for (int k = 0; k < 10; ++k) w.push_back(qinner(br, basis[static_cast<size_t>(k)]));
        auto coeff = ginv.apply(w);
        QMat2 rebuilt = qzero();
        for (int k = 0; k < 10; ++k) {
          if (coeff[static_cast<size_t>(k)].is_zero()) continue;
          for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s)
              rebuilt[r][s] = rebuilt[r][s] +
                              basis[static_cast<size_t>(k)][r][s].scaled(coeff[static_cast<size_t>(k)]);
        }
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s)
            if (!(rebuilt[r][s] == br[r][s]))
              fail(Errc::InvalidStructureConstants, "sp(2) bracket does not close on the basis");
        for (int k = 0; k < 10; ++k)
          if (!coeff[static_cast<size_t>(k)].is_zero())
            entries.push_back({i, j, k, coeff[static_cast<size_t>(k)]});
      }
    return LieAlgebraData::from_entries(10, entries);
  }();
  return L;
}

}  // namespace

HomogeneousModel build_cp3(const CP3MetricParam& p, int eta) {
  if (p.t.sign() <= 0) fail(Errc::InvalidParams, "cp3 metric parameter must be positive");
  if (eta != 1 && eta != -1) fail(Errc::InvalidParams, "cp3 eta must be +1 or -1");

  HomogeneousModel m;
  m.name = "cp3";
  m.algebra = sp2_structure_constants();
  m.split.h_indices = {0, 1, 2, 3};
  m.split.m_blocks = {{4, 5, 6, 7}, {8, 9}};
  m.split.block_names = {"m", "n"};
  m.split.validate(m.algebra);

  Scalar half_t = p.t / Scalar(2);
  m.metric.g = Matrix::diagonal({Scalar(1), Scalar(1), Scalar(1), Scalar(1), half_t, half_t});

  // J on the m block: left multiplication by i in the quaternion
  // coordinate (1,i,j,k) -> (i,-1,k,-j); on the n block the rotation by
  // eta i in the (j,k) plane.
  Matrix j = Matrix::zero_like(6, 6, Scalar(0));
  j.at(1, 0) = Scalar(1);
  j.at(0, 1) = Scalar(-1);
  j.at(3, 2) = Scalar(1);
  j.at(2, 3) = Scalar(-1);
  j.at(5, 4) = Scalar(eta);
  j.at(4, 5) = Scalar(-eta);
  m.acs = InvariantACS{j};
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

int cp3_canonical_eta() {
  static const int eta = [] {
    for (int cand : {1, -1}) {
      HomogeneousModel m = build_cp3({Scalar(1)}, cand);
      if (canonical_3symmetric_check(*m.acs, m.split, m.algebra)) return cand;
    }
    fail(Errc::InconsistentInputs, "no eta satisfies the canonical 3-symmetric identity");
  }();
  return eta;
}

CP3Locus cp3_solve(const std::vector<Scalar>& grid) {
  CP3Locus locus;
  bool found_snk = false, found_kahler = false;
  int extra_nk = 0;
  for (const Scalar& t : grid) {
    for (int eta : {1, -1}) {
      HomogeneousModel m = build_cp3({t}, eta);
      auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
      if (rep.verdict == Verdict::StrictNK) {
        if (found_snk && !(locus.strict_nk_t == t)) ++extra_nk;
        locus.strict_nk_t = t;
        locus.strict_nk_eta = eta;
        found_snk = true;
      } else if (rep.verdict == Verdict::Kahler) {
        if (found_kahler && !(locus.kahler_t == t)) ++extra_nk;
        locus.kahler_t = t;
        locus.kahler_eta = eta;
        found_kahler = true;
      }
    }
  }
  if (!found_snk || !found_kahler || extra_nk > 0)
    fail(Errc::InconsistentInputs, "cp3 grid classification does not isolate two NK metrics");
  std::ostringstream os;
  os << "strict NK at t = " << locus.strict_nk_t.str() << " (eta = " << locus.strict_nk_eta
     << "), Kahler at t = " << locus.kahler_t.str() << " (eta = " << locus.kahler_eta << ")";
  locus.description = os.str();
  return locus;
}

}  // namespace nkh
