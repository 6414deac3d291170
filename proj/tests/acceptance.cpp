// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "nkh/catalog.hpp"

using namespace nkh;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, title,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion1_s3s3_uniqueness() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  auto sol = solve_li2();
  ok = ok && sol.description.find("|lambda_1| = |lambda_2| = |lambda_3|") != std::string::npos;

  std::vector<Scalar> grid{Scalar::rational(1, 2), Scalar(1), Scalar::rational(3, 2), Scalar(2)};
  int snk = 0;
  for (const auto& l1 : grid)
    for (const auto& l2 : grid)
      for (const auto& l3 : grid) {
        auto rep = s3s3_classify_diagonal(l1, l2, l3);
        bool expect = (l1 == l2) && (l2 == l3) && (l1 * l2 * l3).sign() > 0;
        if (rep.strict_nk != expect || !rep.cross_check_agrees) ok = false;
        if (rep.strict_nk) {
          ++snk;
          if (rep.rc_residual != 0.0) ok = false;  // exact backend: zero residual
        }
        // float backend within 1e-9
        auto frep = s3s3_classify_diagonal(l1.to_float(), l2.to_float(), l3.to_float(),
                                           ZeroTest::float_mode(1e-9));
        if (frep.strict_nk != expect) ok = false;
        if (frep.strict_nk && frep.rc_residual > 1e-9) ok = false;
      }
  ok = ok && snk == 4;

  double dt = seconds_since(t0);
  if (dt >= 5.0) ok = false;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d strict NK points on the 64-point grid, %.2f s", snk, dt);
  report(1, "S3xS3 uniqueness: strict NK exactly on the equal-modulus family", ok, buf);
}

void criterion2_canonical_structure() {
  bool ok = true;
  Scalar mu = Scalar::quadext(Rational(0), Rational(1, 2), 3);  // sqrt(3)/2

  ReyesCarrionProblem p;
  p.omega = s3s3_diagonal_form(mu, mu, mu);
  p.lambda = Scalar::quadext(Rational(1, 3), Rational(0), 3);
  p.coframe = s3s3_circular_coframe();
  auto res = check_reyes_carrion(p);
  ok = ok && res.holds && res.residual == 0.0;

  // reconstructed J against the block matrices D, E (rows (D E; -E -D))
  Scalar mu2 = mu * mu;
  Scalar c = sqrt_scalar(Scalar(3) * mu2 * mu2, 3);
  Scalar dval = -mu2 / c;
  Scalar eval = Scalar(-2) * mu2 / c;
  Matrix block_rows(6, 6, Scalar::zero_like(dval));
  for (int i = 0; i < 3; ++i) {
    block_rows.at(i, i) = dval;
    block_rows.at(i, 3 + i) = eval;
    block_rows.at(3 + i, i) = -eval;
    block_rows.at(3 + i, 3 + i) = -dval;
  }
  ok = ok && (res.j.j == block_rows.transpose());
  ok = ok && ((res.j.j * res.j.j) == -Matrix::identity(6, dval));

  report(2, "canonical S3xS3 form solves the Reyes Carrion equation exactly in Q(sqrt 3)", ok,
         "lambda = 1/3, J matches the (D,E) blocks");
}

void criterion3_flag() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::vector<Scalar> grid{Scalar::rational(1, 2), Scalar(1),  Scalar::rational(3, 2),
                           Scalar(2),              Scalar::rational(5, 2), Scalar(3)};
  std::vector<SignTriple> patterns;
  for (int mask = 0; mask < 8; ++mask)
    patterns.push_back({(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1});

  std::map<std::string, std::optional<int>> family;
  auto key = [](const SignTriple& e) {
    std::string s;
    for (int v : e) s += v > 0 ? '+' : '-';
    return s;
  };
  for (const auto& eps : patterns) family[key(eps)] = flag_kahler_family(eps);

  int snk = 0, kahler = 0;
  for (const auto& r : grid)
    for (const auto& s : grid)
      for (const auto& t : grid)
        for (const auto& eps : patterns) {
          HomogeneousModel m = build_flag({r, s, t}, eps);
          auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
          bool equal_signs = eps[0] == eps[1] && eps[1] == eps[2];
          bool expect_snk = equal_signs && r == s && s == t;
          auto fam = family.at(key(eps));
          bool expect_kahler = false;
          if (fam == 0) expect_kahler = (r == s + t);
          if (fam == 1) expect_kahler = (s == r + t);
          if (fam == 2) expect_kahler = (t == r + s);
          if ((rep.verdict == Verdict::StrictNK) != expect_snk) ok = false;
          if ((rep.verdict == Verdict::Kahler) != expect_kahler) ok = false;
          if (rep.verdict == Verdict::StrictNK) ++snk;
          if (rep.verdict == Verdict::Kahler) ++kahler;
        }
  auto loci = flag_solve();
  ok = ok && loci.third_line_variant == "(1-gamma)";

  double dt = seconds_since(t0);
  if (dt >= 30.0) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d SNK and %d Kahler points on 6^3 x 8; sign pairing closes with %s; %.1f s", snk,
                kahler, loci.third_line_variant.c_str(), dt);
  report(3, "flag manifold: strict NK on r=s=t equal signs, Kahler on the sum loci", ok, buf);
}

void criterion4_cp3() {
  bool ok = true;
  int can = cp3_canonical_eta();
  int snk_hits = 0, kahler_hits = 0;
  for (int k = 1; k <= 16; ++k) {
    Scalar t = Scalar::rational(k, 4);
    for (int eta : {1, -1}) {
      HomogeneousModel m = build_cp3({t}, eta);
      auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
      bool is_nk_class = rep.verdict == Verdict::StrictNK || rep.verdict == Verdict::Kahler;
      bool expect_snk = (k == 4) && eta == can;
      bool expect_kahler = (k == 8) && eta == -can;
      if ((rep.verdict == Verdict::StrictNK) != expect_snk) ok = false;
      if ((rep.verdict == Verdict::Kahler) != expect_kahler) ok = false;
      if (is_nk_class && !(expect_snk || expect_kahler)) ok = false;
      if (expect_snk) ++snk_hits;
      if (expect_kahler) ++kahler_hits;

      // float residuals
      HomogeneousModel mf = build_cp3({t}, eta).to_float();
      auto frep = classify(mf.metric, *mf.acs, mf.split, mf.algebra, mf.coframe);
      if (expect_snk && (frep.verdict != Verdict::StrictNK || frep.sym_residual_norm > 1e-9))
        ok = false;
      if (expect_kahler && (frep.verdict != Verdict::Kahler || frep.nabla_omega_norm > 1e-9))
        ok = false;
    }
  }
  ok = ok && snk_hits == 1 && kahler_hits == 1;
  report(4, "CP(3): NK verdicts exactly at t = 1 (strict NK) and t = 2 (Kahler)", ok);
}

void criterion5_gray() {
  bool ok = true;
  int structures = 0;
  auto check_model = [&](const HomogeneousModel& m) {
    auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
    if (!rep.three_symmetric_canonical) return;  // only canonical-J structures count
    ++structures;
    bool nk_class = rep.verdict == Verdict::Kahler || rep.verdict == Verdict::StrictNK;
    // NK class means nabla omega totally antisymmetric (zero residual)
    if (nk_class && rep.sym_residual_norm != 0.0) ok = false;
    if (rep.naturally_reductive != nk_class) ok = false;
  };
  check_model(ledger_obata_model());
  check_model(build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1}));
  check_model(build_flag({Scalar(2), Scalar(2), Scalar(2)}, {-1, -1, -1}));
  check_model(build_flag({Scalar(1), Scalar(1), Scalar(2)}, {1, 1, 1}));
  check_model(build_flag({Scalar(1), Scalar(2), Scalar(3)}, {1, 1, 1}));
  check_model(build_cp3({Scalar(1)}, cp3_canonical_eta()));
  check_model(build_cp3({Scalar(2)}, cp3_canonical_eta()));
  check_model(build_cp3({Scalar::rational(5, 2)}, cp3_canonical_eta()));
  ok = ok && structures >= 4;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d canonical 3-symmetric structures checked", structures);
  report(5, "Gray's theorem instance: naturally reductive iff NK class", ok, buf);
}

void criterion6_type_constant() {
  bool ok = true;

  auto rescaled_alpha_is_one = [&](HomogeneousModel m) {
    auto lam = koszul_connection(m.metric, m.split, m.algebra);
    auto tc = type_constant(m.metric, *m.acs, lam);
    if (!tc.constant || tc.alpha.sign() <= 0) return false;
    InvariantMetric scaled{m.metric.g.scaled(tc.alpha)};
    auto lam2 = koszul_connection(scaled, m.split, m.algebra);
    auto tc2 = type_constant(scaled, *m.acs, lam2);
    return tc2.constant && tc2.alpha == Scalar::one_like(tc2.alpha);
  };
  ok = ok && rescaled_alpha_is_one(ledger_obata_model());
  ok = ok && rescaled_alpha_is_one(build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1}));
  ok = ok && rescaled_alpha_is_one(build_cp3({Scalar(1)}, cp3_canonical_eta()));

  // S^6: alpha = 1 at 100 random rational points, residual zero <= 1e-9
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<long> num(-4, 4);
  int points = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Rational, 6> u;
    for (auto& q : u) {
      q = Rational(num(rng), 1 + std::abs(num(rng)));
      q.canonicalize();
    }
    SpherePointFrame f = sphere_point_from_params(u);
    auto rep = s6_check(f, trial);
    if (!rep.ok || !(rep.alpha == Scalar(1)) || rep.alpha_residual > 1e-9) ok = false;
    ++points;
  }
  ok = ok && points == 100;
  report(6, "type constant: rescaled alpha = 1 exactly; S^6 gives alpha = 1 at 100 points", ok);
}

void criterion7_g2_cone() {
  bool ok = true;
  auto cone_is_generic = [&](const HomogeneousModel& m) {
    KForm omega = kahler_form(m.metric, *m.acs);
    KForm dom = invariant_d(omega, m.coframe);
    return g2_generic(cone_3form(omega, dom)).generic;
  };
  ok = ok && cone_is_generic(ledger_obata_model());
  ok = ok && cone_is_generic(build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1}));
  ok = ok && cone_is_generic(build_cp3({Scalar(1)}, cp3_canonical_eta()));

  // canonical circular-coframe structure
  Scalar mu = Scalar::quadext(Rational(0), Rational(1, 2), 3);
  KForm omega = s3s3_diagonal_form(mu, mu, mu);
  KForm dom = invariant_d(omega, s3s3_circular_coframe());
  ok = ok && g2_generic(cone_3form(omega, dom)).generic;

  ok = ok && g2_generic(standard_g2_form()).generic;

  KForm decomposable(7, 3);
  decomposable.add_term({0, 1, 2}, Scalar(1));
  decomposable.add_term({3, 4, 5}, Scalar(1));
  ok = ok && !g2_generic(decomposable).generic;

  report(7, "G2 cone: strict NK cones and the octonion form generic, decomposable form not", ok);
}

void criterion8_property_suites() {
  bool ok = true;
  std::string failed;

  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      if (!failed.empty()) failed += ", ";
      failed += what;
    }
  };

  // Jacobi on all shipped algebras (throws on failure)
  try {
    ledger_obata_model().algebra.verify_jacobi();
    build_flag({Scalar(1), Scalar(1), Scalar(1)}, {1, 1, 1}).algebra.verify_jacobi();
    build_cp3({Scalar(1)}, 1).algebra.verify_jacobi();
    s3s3_group_model(InvariantMetric{Matrix::identity(6, Scalar(1))},
                     InvariantACS{[] {
                       Matrix j(6, 6, Scalar(0));
                       for (int i = 0; i < 3; ++i) {
                         j.at(3 + i, i) = Scalar(1);
                         j.at(i, 3 + i) = Scalar(-1);
                       }
                       return j;
                     }()})
        .algebra.verify_jacobi();
  } catch (const Error&) {
    expect(false, "jacobi");
  }

  // d^2 = 0 on the circular coframe, random invariant forms
  {
    CoframeDifferential cd = s3s3_circular_coframe();
    expect(cd.closed_square(), "d^2");
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> num(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
      KForm f(6, 2);
      for (int terms = 0; terms < 4; ++terms)
        f.add_term({static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)},
                   Scalar::rational(num(rng), 1 + std::abs(num(rng))));
      expect(invariant_d(invariant_d(f, cd), cd).coeffs().empty(), "d^2 random");
    }
  }

  // connection identities on random flag metrics
  {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> num(1, 9);
    for (int trial = 0; trial < 4; ++trial) {
      FlagMetricParams p{Scalar::rational(num(rng), num(rng)), Scalar::rational(num(rng), num(rng)),
                         Scalar::rational(num(rng), num(rng))};
      HomogeneousModel m = build_flag(p, {1, 1, 1});
      auto lam = koszul_connection(m.metric, m.split, m.algebra);
      int n = m.split.m_dim();
      for (int a = 0; a < n; ++a) {
        Matrix gl = m.metric.g * lam.lambda[static_cast<size_t>(a)];
        expect((gl + gl.transpose()).is_zero(ZeroTest::exact_mode()), "(L')");
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::vector<Scalar> ea(static_cast<size_t>(n), Scalar(0)), eb = ea;
          ea[static_cast<size_t>(a)] = Scalar(1);
          eb[static_cast<size_t>(b)] = Scalar(1);
          auto lhs = sub(lam.lambda[static_cast<size_t>(a)].col(b),
                         lam.lambda[static_cast<size_t>(b)].col(a));
          auto rhs = bracket_m(m.algebra, m.split, ea, eb);
          for (int r = 0; r < n; ++r)
            expect(lhs[static_cast<size_t>(r)] == rhs[static_cast<size_t>(r)], "(L)");
        }
    }
  }

  // J^2 = -Id on every reconstructed structure of the diagonal sweep
  {
    std::vector<int> pattern{1, 2, 3};
    KForm omega = s3s3_diagonal_form(Scalar(2), Scalar(3), Scalar(4));
    KForm dom = invariant_d(omega, s3s3_circular_coframe());
    KForm vol = KForm::monomial(6, {0, 1, 2, 3, 4, 5}, Scalar(1));
    auto j = j_from_rho(dom, vol);
    expect((j.j * j.j) == -Matrix::identity(6, j.j.at(0, 0)), "J^2");
  }

  // hat involution on random adapted-frame forms
  {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> num(-4, 4);
    KForm vol = KForm::monomial(6, {0, 1, 2, 3, 4, 5}, Scalar(1));
    for (int trial = 0; trial < 10; ++trial) {
      Scalar a = Scalar::rational(num(rng), 1 + std::abs(num(rng)));
      Scalar b = Scalar::rational(num(rng), 1 + std::abs(num(rng)));
      if ((a * a + b * b).is_zero()) continue;
      KForm rho(6, 3);
      rho.add_term({0, 2, 4}, a);
      rho.add_term({1, 3, 4}, -a);
      rho.add_term({0, 3, 5}, -a);
      rho.add_term({1, 2, 5}, -a);
      rho.add_term({0, 2, 5}, -b);
      rho.add_term({0, 3, 4}, -b);
      rho.add_term({1, 3, 5}, b);
      rho.add_term({1, 2, 4}, -b);
      auto j = j_from_rho(rho, vol);
      KForm h = hat(rho, j);
      expect(hat(h, j) == -rho, "hat involution");
    }
  }

  // SO(3) x SO(3) verdict invariance with exact rational rotations
  {
    for (unsigned long seed = 1; seed <= 4; ++seed) {
      Matrix m3 = rational_so_matrix(3, seed);
      Matrix n3 = rational_so_matrix(3, seed + 50);
      Matrix r(6, 6, Scalar(0));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          r.at(i, j) = m3.at(i, j);
          r.at(3 + i, 3 + j) = n3.at(i, j);
        }
      for (auto lams : {std::array<long, 3>{1, 1, 1}, std::array<long, 3>{2, 3, 4}}) {
        KForm omega = s3s3_diagonal_form(Scalar(lams[0]), Scalar(lams[1]), Scalar(lams[2]));
        auto base = s3s3_classify_form(omega);
        auto rot = s3s3_classify_form(omega.pullback(r));
        expect(base.strict_nk == rot.strict_nk, "SO(3)xSO(3) invariance");
      }
    }
  }

  // SO(7) orbit property on S^6
  {
    SpherePointFrame f = sphere_point_basis(1);
    for (unsigned long seed = 1; seed <= 6; ++seed) {
      Matrix g = rational_so_matrix(7, seed).to_float();
      expect(s6_orbit_check(g, f), "SO(7) orbit");
    }
  }

  report(8, "property suites: jacobi, d^2, (L')/(L), J^2, hat, rotation and orbit invariance", ok,
         failed);
}

}  // namespace

int main() {
  try {
    criterion1_s3s3_uniqueness();
    criterion2_canonical_structure();
    criterion3_flag();
    criterion4_cp3();
    criterion5_gray();
    criterion6_type_constant();
    criterion7_g2_cone();
    criterion8_property_suites();
  } catch (const Error& e) {
    std::printf("[FAIL] unexpected error: %s\n", e.what());
    return 1;
  }
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return 1;
}
