#include "nkh/lie.hpp"

#include <algorithm>

namespace nkh {

LieAlgebraData LieAlgebraData::from_entries(int dim, const std::vector<Entry>& entries,
                                            bool check_jacobi) {
  if (dim <= 0) fail(Errc::InvalidParams, "algebra dimension must be positive");
  LieAlgebraData L;
  L.dim_ = dim;
  Scalar like = entries.empty() ? Scalar(0) : Scalar::zero_like(entries.front().value);
  L.c_.assign(static_cast<size_t>(dim) * dim * dim, like);
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
      fail(Errc::InvalidStructureConstants, "structure constant index out of range");
    if (e.i == e.j && !e.value.is_zero())
      fail(Errc::InvalidStructureConstants, "c[i][i][k] must vanish");
    L.c_[L.index(e.i, e.j, e.k)] = e.value;
    L.c_[L.index(e.j, e.i, e.k)] = -e.value;
  }
  L.verify_antisymmetry();
  if (check_jacobi) L.verify_jacobi();
  return L;
}

std::vector<Scalar> LieAlgebraData::bracket_basis(int i, int j) const {
  std::vector<Scalar> v;
  v.reserve(static_cast<size_t>(dim_));
  for (int k = 0; k < dim_; ++k) v.push_back(c(i, j, k));
  return v;
}

std::vector<Scalar> LieAlgebraData::bracket(const std::vector<Scalar>& x,
                                            const std::vector<Scalar>& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    fail(Errc::DimMismatch, "bracket operand length");
  std::vector<Scalar> out(static_cast<size_t>(dim_), Scalar::zero_like(c_[0]));
  for (int i = 0; i < dim_; ++i) {
    if (x[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[static_cast<size_t>(j)].is_zero()) continue;
      Scalar f = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
      for (int k = 0; k < dim_; ++k) {
        const Scalar& cc = c(i, j, k);
        if (!cc.is_zero()) out[static_cast<size_t>(k)] += f * cc;
      }
    }
  }
  return out;
}

void LieAlgebraData::verify_antisymmetry() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (!(c(i, j, k) + c(j, i, k)).is_zero())
          fail(Errc::InvalidStructureConstants, "antisymmetry violated");
}

void LieAlgebraData::verify_jacobi(const ZeroTest& zt) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k) {
        std::vector<Scalar> sum(static_cast<size_t>(dim_), Scalar::zero_like(c_[0]));
        // [b_a, [b_b, b_d]] accumulated over the cyclic triple
        auto addCyc = [&](int a, int b, int d) {
          auto inner = bracket_basis(b, d);
          for (int m = 0; m < dim_; ++m) {
            if (inner[static_cast<size_t>(m)].is_zero()) continue;
            for (int t = 0; t < dim_; ++t) {
              const Scalar& cc = c(a, m, t);
              if (!cc.is_zero()) sum[static_cast<size_t>(t)] += inner[static_cast<size_t>(m)] * cc;
            }
          }
        };
        addCyc(i, j, k);
        addCyc(j, k, i);
        addCyc(k, i, j);
        for (const auto& s : sum)
          if (!zt.zero(s))
            fail(Errc::InvalidStructureConstants,
                 "Jacobi identity fails on triple (" + std::to_string(i) + "," + std::to_string(j) +
                     "," + std::to_string(k) + ")");
      }
}

LieAlgebraData LieAlgebraData::to_float() const {
  LieAlgebraData L;
  L.dim_ = dim_;
  L.c_.reserve(c_.size());
  for (const auto& s : c_) L.c_.push_back(s.to_float());
  return L;
}

std::vector<int> ReductiveSplit::m_indices() const {
  std::vector<int> v;
  for (const auto& b : m_blocks) v.insert(v.end(), b.begin(), b.end());
  return v;
}

int ReductiveSplit::m_dim() const {
  int n = 0;
  for (const auto& b : m_blocks) n += static_cast<int>(b.size());
  return n;
}

int ReductiveSplit::m_pos(int global_index) const {
  int pos = 0;
  for (const auto& b : m_blocks)
    for (int g : b) {
      if (g == global_index) return pos;
      ++pos;
    }
  return -1;
}

void ReductiveSplit::validate(const LieAlgebraData& L, const ZeroTest& zt) const {
  std::vector<char> in_h(static_cast<size_t>(L.dim()), 0), seen(static_cast<size_t>(L.dim()), 0);
  for (int i : h_indices) {
    if (i < 0 || i >= L.dim() || seen[static_cast<size_t>(i)])
      fail(Errc::InvalidParams, "bad h index");
    in_h[static_cast<size_t>(i)] = 1;
    seen[static_cast<size_t>(i)] = 1;
  }
  for (const auto& b : m_blocks)
    for (int i : b) {
      if (i < 0 || i >= L.dim() || seen[static_cast<size_t>(i)])
        fail(Errc::InvalidParams, "bad m index");
      seen[static_cast<size_t>(i)] = 1;
    }
  for (int i = 0; i < L.dim(); ++i)
    if (!seen[static_cast<size_t>(i)]) fail(Errc::InvalidParams, "basis index not covered by split");

  // [h,h] subset h
  for (int a : h_indices)
    for (int b : h_indices) {
      auto v = L.bracket_basis(a, b);
      for (int k = 0; k < L.dim(); ++k)
        if (!in_h[static_cast<size_t>(k)] && !zt.zero(v[static_cast<size_t>(k)]))
          fail(Errc::InvalidParams, "[h,h] leaves h");
    }
  // [h,m] subset m
  for (int a : h_indices)
    for (int b : m_indices()) {
      auto v = L.bracket_basis(a, b);
      for (int k : h_indices)
        if (!zt.zero(v[static_cast<size_t>(k)]))
          fail(Errc::InvalidParams, "[h,m] leaves m: split is not reductive");
    }
}

void InvariantMetric::validate(const ZeroTest& zt) const {
  if (!g.is_symmetric(zt)) fail(Errc::InconsistentInputs, "metric not symmetric");
  if (!g.positive_definite(zt)) fail(Errc::InconsistentInputs, "metric not positive definite");
}

Scalar InvariantMetric::inner(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
  return dot(x, g.apply(y));
}

void InvariantACS::validate(const ZeroTest& zt) const {
  Matrix sq = j * j;
  Matrix minus_id = -Matrix::identity(j.rows(), j.at(0, 0));
  if (!sq.equals(minus_id, zt)) fail(Errc::InconsistentInputs, "J^2 != -Id");
}

void InvariantACS::validate_compatible(const InvariantMetric& g, const ZeroTest& zt) const {
  Matrix lhs = j.transpose() * g.g * j;
  if (!lhs.equals(g.g, zt)) fail(Errc::InconsistentInputs, "J not compatible with metric");
}

std::vector<Scalar> bracket_m(const LieAlgebraData& L, const ReductiveSplit& split,
                              const std::vector<Scalar>& x_m, const std::vector<Scalar>& y_m) {
  auto m = split.m_indices();
  if (x_m.size() != m.size() || y_m.size() != m.size())
    fail(Errc::DimMismatch, "bracket_m operand length");
  Scalar like = x_m.empty() ? Scalar(0) : Scalar::zero_like(x_m[0]);
  std::vector<Scalar> x(static_cast<size_t>(L.dim()), like), y(static_cast<size_t>(L.dim()), like);
  for (size_t p = 0; p < m.size(); ++p) {
    x[static_cast<size_t>(m[p])] = x_m[p];
    y[static_cast<size_t>(m[p])] = y_m[p];
  }
  auto full = L.bracket(x, y);
  std::vector<Scalar> out;
  out.reserve(m.size());
  for (int g : m) out.push_back(full[static_cast<size_t>(g)]);
  return out;
}

CoframeDifferential coframe_from_split(const LieAlgebraData& L, const ReductiveSplit& split) {
  auto m = split.m_indices();
  int n = static_cast<int>(m.size());
  std::vector<KForm> table;
  table.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    KForm f(n, 2);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const Scalar& cab = L.c(m[static_cast<size_t>(a)], m[static_cast<size_t>(b)],
                               m[static_cast<size_t>(k)]);
        if (!cab.is_zero()) f.add_term({a, b}, -cab);
      }
    table.push_back(std::move(f));
  }
  return CoframeDifferential::reductive(std::move(table));
}

}  // namespace nkh
