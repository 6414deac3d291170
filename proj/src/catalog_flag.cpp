#include <sstream>

#include "nkh/catalog.hpp"

namespace nkh {

namespace {

// Minimal complex-rational matrix arithmetic for the su(3) generator.
struct CRat {
  Rational re, im;
  CRat() : re(0), im(0) {}
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  CRat operator*(const CRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  bool is_zero() const { return re == 0 && im == 0; }
};

using CMat3 = std::array<std::array<CRat, 3>, 3>;

CMat3 cmul(const CMat3& a, const CMat3& b) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

CMat3 csub(const CMat3& a, const CMat3& b) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

// <X|Y> = -1/2 Re tr(XY)
Rational cinner(const CMat3& x, const CMat3& y) {
  CRat tr;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) tr = tr + x[i][k] * y[k][i];
  return Rational(-tr.re / 2);
}

// basis of su(3) adapted to h + l + m + n
std::array<CMat3, 8> su3_basis() {
  auto c = [](long re, long im) { return CRat(Rational(re), Rational(im)); };
  std::array<CMat3, 8> b{};
  // h1 = diag(i,-i,0), h2 = diag(0,i,-i)
  b[0][0][0] = c(0, 1);
  b[0][1][1] = c(0, -1);
  b[1][1][1] = c(0, 1);
  b[1][2][2] = c(0, -1);
  // <a,b,c> blocks: l = <a,0,0>, m = <0,b,0>, n = <0,0,c>
  auto angle = [&](CRat a, CRat bb, CRat cc) {
    CMat3 mres{};
    mres[0][1] = a;
    mres[1][0] = CRat(-a.re, a.im);  // -conj(a)
    mres[0][2] = bb;
    mres[2][0] = CRat(-bb.re, bb.im);
    mres[1][2] = cc;
    mres[2][1] = CRat(-cc.re, cc.im);
    return mres;
  };
  b[2] = angle(c(1, 0), c(0, 0), c(0, 0));  // l1
  b[3] = angle(c(0, 1), c(0, 0), c(0, 0));  // l2
  b[4] = angle(c(0, 0), c(1, 0), c(0, 0));  // m1
  b[5] = angle(c(0, 0), c(0, 1), c(0, 0));  // m2
  b[6] = angle(c(0, 0), c(0, 0), c(1, 0));  // n1
  b[7] = angle(c(0, 0), c(0, 0), c(0, 1));  // n2
  return b;
}

const LieAlgebraData& su3_structure_constants() {
  static const LieAlgebraData L = [] {
    auto basis = su3_basis();
    // Gram matrix of the basis under <.|.>
    Matrix gram(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        gram.at(i, j) = Scalar::rational(cinner(basis[static_cast<size_t>(i)],
                                                basis[static_cast<size_t>(j)]));
    Matrix ginv = gram.inverse();
    std::vector<LieAlgebraData::Entry> entries;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) {
        CMat3 br = csub(cmul(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]),
                        cmul(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(i)]));
        std::vector<Scalar> w;
        w.reserve(8);
        for (int k = 0; k < 8; ++k)
          w.push_back(Scalar::rational(cinner(br, basis[static_cast<size_t>(k)])));
        auto coeff = ginv.apply(w);
        // verify the expansion reproduces the bracket exactly
        CMat3 rebuilt{};
        for (int k = 0; k < 8; ++k) {
          const auto& q = coeff[static_cast<size_t>(k)].rat();
          if (q == 0) continue;
          for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) {
              CRat scaled(q * basis[static_cast<size_t>(k)][r][s].re,
                          q * basis[static_cast<size_t>(k)][r][s].im);
              rebuilt[r][s] = rebuilt[r][s] + scaled;
            }
        }
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s)
            if (!(rebuilt[r][s] == br[r][s]))
              fail(Errc::InvalidStructureConstants, "su(3) bracket does not close on the basis");
        for (int k = 0; k < 8; ++k)
          if (!coeff[static_cast<size_t>(k)].is_zero())
            entries.push_back({i, j, k, coeff[static_cast<size_t>(k)]});
      }
    return LieAlgebraData::from_entries(8, entries);
  }();
  return L;
}

}  // namespace

HomogeneousModel build_flag(const FlagMetricParams& p, const SignTriple& eps) {
  if (p.r.sign() <= 0 || p.s.sign() <= 0 || p.t.sign() <= 0)
    fail(Errc::InvalidParams, "flag metric parameters must be positive");
  for (int e : eps)
    if (e != 1 && e != -1) fail(Errc::InvalidParams, "flag signs must be +1 or -1");

  HomogeneousModel m;
  m.name = "flag";
  m.algebra = su3_structure_constants();
  m.split.h_indices = {0, 1};
  m.split.m_blocks = {{2, 3}, {4, 5}, {6, 7}};
  m.split.block_names = {"l", "m", "n"};
  m.split.validate(m.algebra);

  m.metric.g = Matrix::diagonal({p.r, p.r, p.s, p.s, p.t, p.t});

  // J<a,b,c> = <eps1 i a, -eps2 i b, eps3 i c> on the pairs (l1,l2), (m1,m2), (n1,n2)
  Matrix j = Matrix::zero_like(6, 6, Scalar(0));
  auto put_rot = [&](int off, int sign) {
    j.at(off, off + 1) = Scalar(-sign);
    j.at(off + 1, off) = Scalar(sign);
  };
  put_rot(0, eps[0]);
  put_rot(2, -eps[1]);
  put_rot(4, eps[2]);
  m.acs = InvariantACS{j};
  m.coframe = coframe_from_split(m.algebra, m.split);
  return m;
}

std::array<Scalar, 3> flag_connection_coefficients(const FlagMetricParams& p) {
  // alpha t = (1-gamma) s;  beta r = (1-alpha) t;  gamma s = (1-beta) r
  Matrix a = Matrix::from_rows({{p.t, Scalar(0), p.s},
                                {p.t, p.r, Scalar(0)},
                                {Scalar(0), p.r, p.s}});
  auto sol = a.solve({p.s, p.t, p.r});
  return {sol[0], sol[1], sol[2]};
}

std::optional<int> flag_kahler_family(const SignTriple& eps) {
  if (eps[0] == eps[1] && eps[1] == eps[2]) return std::nullopt;
  static const std::array<std::array<Rational, 2>, 3> samples = {
      std::array<Rational, 2>{Rational(1), Rational(1)},
      std::array<Rational, 2>{Rational(2), Rational(3)},
      std::array<Rational, 2>{Rational(1, 2), Rational(5, 3)}};
  for (int family = 0; family < 3; ++family) {
    bool all_kahler = true;
    for (const auto& lm : samples) {
      Scalar l = Scalar::rational(lm[0]), mu = Scalar::rational(lm[1]);
      Scalar sum = l + mu;
      FlagMetricParams p;
      if (family == 0) p = {sum, l, mu};       // r = s + t
      else if (family == 1) p = {l, sum, mu};  // s = r + t
      else p = {l, mu, sum};                   // t = r + s
      HomogeneousModel m = build_flag(p, eps);
      auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
      if (rep.verdict != Verdict::Kahler) {
        all_kahler = false;
        break;
      }
    }
    if (all_kahler) return family;
  }
  return std::nullopt;
}

FlagLoci flag_solve() {
  FlagLoci loci;
  loci.strict_nk = "r = s = t with eps1 = eps2 = eps3";

  // the three mixed-sign classes, one representative each (negating all
  // three signs gives the conjugate structure with the same conditions)
  struct Pattern {
    SignTriple eps;
    const char* label;
  };
  const std::array<Pattern, 3> patterns = {{{{-1, 1, 1}, "(-++)"},
                                            {{1, -1, 1}, "(+-+)"},
                                            {{1, 1, -1}, "(++-)"}}};
  const std::array<const char*, 3> family_names = {"r = s + t", "s = r + t", "t = r + s"};

  std::array<std::optional<int>, 3> found;
  for (size_t i = 0; i < patterns.size(); ++i) {
    found[i] = flag_kahler_family(patterns[i].eps);
    std::ostringstream os;
    os << "pattern " << patterns[i].label << " (and its negation): ";
    if (found[i])
      os << "Kahler family " << family_names[static_cast<size_t>(*found[i])];
    else
      os << "no Kahler family";
    loci.kahler_families.push_back(os.str());
  }

  // third sign-system line: the (1-gamma) variant predicts that pattern
  // (-++) carries the alpha = 0 family r = s + t; the literal (1-alpha)
  // line admits no solution for that pattern.
  if (found[0] && *found[0] == 0)
    loci.third_line_variant = "(1-gamma)";
  else if (!found[0])
    loci.third_line_variant = "(1-alpha)";
  else
    loci.third_line_variant = "unresolved";
  return loci;
}

}  // namespace nkh
