#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nkh/catalog.hpp"

using namespace nkh;

namespace {

// su(2) with [b_i, b_j] = 2 b_k cyclic
LieAlgebraData su2() {
  return LieAlgebraData::from_entries(3, {{0, 1, 2, Scalar(2)},
                                          {1, 2, 0, Scalar(2)},
                                          {2, 0, 1, Scalar(2)}});
}

bool u_is_zero(const InvariantMetric& g, const ReductiveSplit& split, const LieAlgebraData& L) {
  auto u = koszul_u(g, split, L);
  for (const auto& row : u)
    for (const auto& v : row)
      for (const auto& s : v)
        if (!s.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("structure constant validation") {
  CHECK_NOTHROW(su2());
  // breaking Jacobi: [b0,b1]=b2, [b1,b2]=b1 leaves [b0,[b1,b2]]+cyc = b2
  CHECK_THROWS_AS(LieAlgebraData::from_entries(3, {{0, 1, 2, Scalar(1)},
                                                   {1, 2, 1, Scalar(1)}}),
                  Error);
  CHECK_THROWS_AS(LieAlgebraData::from_entries(2, {{0, 0, 1, Scalar(1)}}), Error);
}

TEST_CASE("reductive split validation") {
  auto L = su2();
  ReductiveSplit good{{}, {{0, 1, 2}}, {"m"}};
  CHECK_NOTHROW(good.validate(L));
  // su(2) has no 1-dimensional reductive complement of a 2-dim "h"
  ReductiveSplit bad{{0, 1}, {{2}}, {"m"}};
  CHECK_THROWS_AS(bad.validate(L), Error);
}

TEST_CASE("bi-invariant metric on a compact group: U = 0, Lambda = ad/2") {
  auto L = su2();
  ReductiveSplit split{{}, {{0, 1, 2}}, {"m"}};
  InvariantMetric g{Matrix::identity(3, Scalar(1))};
  CHECK(u_is_zero(g, split, L));
  CHECK(naturally_reductive_test(g, split, L));
  auto lam = koszul_connection(g, split, L);
  // Lambda(X) Y = [X, Y] / 2
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::vector<Scalar> ea(3, Scalar(0)), eb(3, Scalar(0));
      ea[static_cast<size_t>(a)] = Scalar(1);
      eb[static_cast<size_t>(b)] = Scalar(1);
      auto half_br = scale(Scalar::rational(1, 2), bracket_m(L, split, ea, eb));
      auto lv = lam.lambda[static_cast<size_t>(a)].col(b);
      for (int r = 0; r < 3; ++r) CHECK(lv[static_cast<size_t>(r)] == half_br[static_cast<size_t>(r)]);
    }
}

TEST_CASE("connection identities (L') and (L) hold exactly") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(1, 6);
  for (int trial = 0; trial < 6; ++trial) {
    FlagMetricParams p{Scalar::rational(num(rng), num(rng)), Scalar::rational(num(rng), num(rng)),
                       Scalar::rational(num(rng), num(rng))};
    HomogeneousModel m = build_flag(p, {1, 1, 1});
    auto lam = koszul_connection(m.metric, m.split, m.algebra);
    int n = m.split.m_dim();
    for (int a = 0; a < n; ++a) {
      // metric skewness (L'): G Lambda_a antisymmetric
      Matrix gl = m.metric.g * lam.lambda[static_cast<size_t>(a)];
      CHECK((gl + gl.transpose()).is_zero(ZeroTest::exact_mode()));
    }
    // torsion (L): Lambda(X)Y - Lambda(Y)X = [X,Y]_m
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<Scalar> ea(static_cast<size_t>(n), Scalar(0)), eb = ea;
        ea[static_cast<size_t>(a)] = Scalar(1);
        eb[static_cast<size_t>(b)] = Scalar(1);
        auto lhs = sub(lam.lambda[static_cast<size_t>(a)].col(b),
                       lam.lambda[static_cast<size_t>(b)].col(a));
        auto rhs = bracket_m(m.algebra, m.split, ea, eb);
        for (int r = 0; r < n; ++r) CHECK(lhs[static_cast<size_t>(r)] == rhs[static_cast<size_t>(r)]);
      }
    // U symmetric
    auto u = koszul_u(m.metric, m.split, m.algebra);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int r = 0; r < n; ++r)
          CHECK(u[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(r)] ==
                u[static_cast<size_t>(b)][static_cast<size_t>(a)][static_cast<size_t>(r)]);
  }
}

TEST_CASE("nabla J anticommutes with J") {
  for (auto params : {FlagMetricParams{Scalar(1), Scalar(1), Scalar(1)},
                      FlagMetricParams{Scalar(1), Scalar(2), Scalar(4)}}) {
    HomogeneousModel m = build_flag(params, {1, 1, 1});
    auto lam = koszul_connection(m.metric, m.split, m.algebra);
    auto t = nabla_j(lam, *m.acs);
    for (const auto& ta : t)
      CHECK((ta * m.acs->j + m.acs->j * ta).is_zero(ZeroTest::exact_mode()));
  }
}

TEST_CASE("flag connection coefficients: r=s=t gives alpha=beta=gamma=1/2") {
  FlagMetricParams p{Scalar(1), Scalar(1), Scalar(1)};
  auto abc = flag_connection_coefficients(p);
  CHECK(abc[0] == Scalar::rational(1, 2));
  CHECK(abc[1] == Scalar::rational(1, 2));
  CHECK(abc[2] == Scalar::rational(1, 2));

  // block read-back from the Wang map agrees
  HomogeneousModel m = build_flag(p, {1, 1, 1});
  auto lam = koszul_connection(m.metric, m.split, m.algebra);
  CHECK(block_coefficient(lam, m.split, m.algebra, 0, 1) == abc[0]);  // Lambda(l)m
  CHECK(block_coefficient(lam, m.split, m.algebra, 1, 2) == abc[1]);  // Lambda(m)n
  CHECK(block_coefficient(lam, m.split, m.algebra, 2, 0) == abc[2]);  // Lambda(n)l
}

TEST_CASE("flag metric (lambda+mu, lambda, mu) gives alpha = 0") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(1, 9);
  for (int trial = 0; trial < 8; ++trial) {
    Scalar l = Scalar::rational(num(rng), num(rng)), mu = Scalar::rational(num(rng), num(rng));
    auto abc = flag_connection_coefficients({l + mu, l, mu});
    CHECK(abc[0].is_zero());
    HomogeneousModel m = build_flag({l + mu, l, mu}, {1, 1, 1});
    auto lam = koszul_connection(m.metric, m.split, m.algebra);
    CHECK(block_coefficient(lam, m.split, m.algebra, 0, 1).is_zero());
  }
}

TEST_CASE("naturally reductive iff U vanishes on catalog models") {
  std::vector<HomogeneousModel> models;
  models.push_back(ledger_obata_model());
  models.push_back(build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1}));
  models.push_back(build_flag({Scalar(1), Scalar(1), Scalar(2)}, {1, 1, 1}));
  models.push_back(build_flag({Scalar(2), Scalar(1), Scalar(1)}, {-1, 1, 1}));
  models.push_back(build_cp3({Scalar(1)}, cp3_canonical_eta()));
  models.push_back(build_cp3({Scalar(2)}, cp3_canonical_eta()));
  for (const auto& m : models) {
    bool nr = naturally_reductive_test(m.metric, m.split, m.algebra);
    CHECK(nr == u_is_zero(m.metric, m.split, m.algebra));
  }
  // flag (1,1,2) violates natural reductivity
  CHECK_FALSE(naturally_reductive_test(models[2].metric, models[2].split, models[2].algebra));
}

TEST_CASE("Ledger-Obata model is the canonical strict NK structure") {
  HomogeneousModel m = ledger_obata_model();
  REQUIRE(m.acs.has_value());
  auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
  CHECK(rep.verdict == Verdict::StrictNK);
  CHECK(rep.naturally_reductive);
  CHECK(rep.three_symmetric_canonical);
  CHECK(rep.dw34_norm == 0.0);
  CHECK(rep.omega_wedge_domega_norm == 0.0);
  CHECK(rep.nijenhuis_norm > 0.0);
  REQUIRE(rep.type_constant.has_value());
  CHECK(rep.type_constant->sign() > 0);

  // rescaling the metric so that alpha = 1 keeps the identity exact
  InvariantMetric scaled{m.metric.g.scaled(*rep.type_constant)};
  auto lam = koszul_connection(scaled, m.split, m.algebra);
  auto tc = type_constant(scaled, *m.acs, lam);
  CHECK(tc.constant);
  CHECK(tc.alpha == Scalar::one_like(tc.alpha));
}

TEST_CASE("classify on the flag family") {
  // strict NK point
  HomogeneousModel snk = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1});
  auto rep = classify(snk.metric, *snk.acs, snk.split, snk.algebra, snk.coframe);
  CHECK(rep.verdict == Verdict::StrictNK);
  CHECK(rep.three_symmetric_canonical);
  CHECK(rep.nijenhuis_norm > 0.0);
  CHECK(rep.dw34_norm == 0.0);

  // Kahler family point: nabla J = 0 exactly
  HomogeneousModel k = build_flag({Scalar(2), Scalar(1), Scalar(1)}, {-1, 1, 1});
  auto krep = classify(k.metric, *k.acs, k.split, k.algebra, k.coframe);
  CHECK(krep.verdict == Verdict::Kahler);
  CHECK(krep.nabla_omega_norm == 0.0);
  CHECK(krep.nijenhuis_norm == 0.0);
  CHECK(krep.dw34_norm == 0.0);
  CHECK_FALSE(krep.three_symmetric_canonical);

  // generic equal-sign point: neither; the canonical J keeps d omega of
  // type (3,0)+(0,3), the failure shows in the symmetric residual
  HomogeneousModel nn = build_flag({Scalar(1), Scalar(1), Scalar(2)}, {1, 1, 1});
  auto nrep = classify(nn.metric, *nn.acs, nn.split, nn.algebra, nn.coframe);
  CHECK(nrep.verdict == Verdict::Neither);
  CHECK(nrep.sym_residual_norm > 0.0);
  CHECK(nrep.nijenhuis_norm > 0.0);
  CHECK(nrep.dw34_norm == 0.0);

  // mixed signs off the Kahler locus: integrable J, Hermitian non-Kahler
  HomogeneousModel h = build_flag({Scalar(1), Scalar(2), Scalar(4)}, {-1, 1, 1});
  auto hrep = classify(h.metric, *h.acs, h.split, h.algebra, h.coframe);
  CHECK(hrep.verdict == Verdict::HermitianOther);
  CHECK(hrep.nijenhuis_norm == 0.0);
}

TEST_CASE("abelian algebra with trivial isotropy is flat Kahler") {
  LieAlgebraData L = LieAlgebraData::from_entries(2, {});
  ReductiveSplit split{{}, {{0, 1}}, {"m"}};
  InvariantMetric g{Matrix::identity(2, Scalar(1))};
  Matrix j(2, 2, Scalar(0));
  j.at(0, 1) = Scalar(-1);
  j.at(1, 0) = Scalar(1);
  auto rep = classify(g, InvariantACS{j}, split, L, coframe_from_split(L, split));
  CHECK(rep.verdict == Verdict::Kahler);
  CHECK(rep.naturally_reductive);
}

TEST_CASE("type constant errors and values") {
  HomogeneousModel k = build_flag({Scalar(2), Scalar(1), Scalar(1)}, {-1, 1, 1});
  auto lam = koszul_connection(k.metric, k.split, k.algebra);
  CHECK_THROWS_AS(type_constant(k.metric, *k.acs, lam), Error);

  HomogeneousModel snk = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1});
  auto lam2 = koszul_connection(snk.metric, snk.split, snk.algebra);
  auto tc = type_constant(snk.metric, *snk.acs, lam2);
  CHECK(tc.constant);
  CHECK(tc.alpha.sign() > 0);
}

TEST_CASE("canonical 3-symmetric identity on sign patterns") {
  HomogeneousModel plus = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1});
  CHECK(canonical_3symmetric_check(*plus.acs, plus.split, plus.algebra));
  HomogeneousModel minus = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {-1, -1, -1});
  CHECK(canonical_3symmetric_check(*minus.acs, minus.split, minus.algebra));
  HomogeneousModel mixed = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, -1, 1});
  CHECK_FALSE(canonical_3symmetric_check(*mixed.acs, mixed.split, mixed.algebra));
}

TEST_CASE("classify verdict invariant under uniform metric scaling") {
  for (const Scalar& c : {Scalar(2), Scalar::rational(1, 3)}) {
    for (auto eps : {SignTriple{1, 1, 1}, SignTriple{-1, 1, 1}}) {
      for (auto params : {FlagMetricParams{Scalar(1), Scalar(1), Scalar(1)},
                          FlagMetricParams{Scalar(2), Scalar(1), Scalar(1)},
                          FlagMetricParams{Scalar(1), Scalar(2), Scalar(4)}}) {
        HomogeneousModel m = build_flag(params, eps);
        auto base = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
        InvariantMetric gs{m.metric.g.scaled(c)};
        auto scaled = classify(gs, *m.acs, m.split, m.algebra, m.coframe);
        CHECK(base.verdict == scaled.verdict);
      }
    }
  }
}

TEST_CASE("nijenhuis and dW34 diagnostics match verdict classes") {
  HomogeneousModel k = build_flag({Scalar(2), Scalar(1), Scalar(1)}, {-1, 1, 1});
  auto krep = classify(k.metric, *k.acs, k.split, k.algebra, k.coframe);
  CHECK(krep.nijenhuis_norm == 0.0);
  CHECK(krep.dw34_norm == 0.0);

  HomogeneousModel snk = build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1});
  auto srep = classify(snk.metric, *snk.acs, snk.split, snk.algebra, snk.coframe);
  CHECK(srep.nijenhuis_norm > 0.0);
  CHECK(srep.dw34_norm == 0.0);

  // off both NK loci with a mixed-sign J the W3+W4 component survives
  HomogeneousModel nn = build_flag({Scalar(1), Scalar(2), Scalar(4)}, {-1, 1, 1});
  auto nrep = classify(nn.metric, *nn.acs, nn.split, nn.algebra, nn.coframe);
  CHECK(nrep.dw34_norm > 0.0);
  // same metric, canonical J: the failure lives in W1+W2 instead
  HomogeneousModel nc = build_flag({Scalar(1), Scalar(2), Scalar(4)}, {1, 1, 1});
  auto ncrep = classify(nc.metric, *nc.acs, nc.split, nc.algebra, nc.coframe);
  CHECK(ncrep.dw34_norm == 0.0);
  CHECK(ncrep.nijenhuis_norm > 0.0);
}

TEST_CASE("block coefficient read-back rejects unusable blocks") {
  // the cp3 (n,n) block brackets into h only, so no coefficient exists
  HomogeneousModel m = build_cp3({Scalar(1)}, cp3_canonical_eta());
  auto lam = koszul_connection(m.metric, m.split, m.algebra);
  bool threw = false;
  try {
    block_coefficient(lam, m.split, m.algebra, 1, 1);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Errc::BlockNotScalar);
  }
  CHECK(threw);
}
