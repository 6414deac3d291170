#include "nkh/kform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nkh {

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim) fail(Errc::WrongDegree, "form degree out of range");
}

KForm KForm::monomial(int dim, Key indices, const Scalar& coeff) {
  KForm f(dim, static_cast<int>(indices.size()));
  f.add_term(indices, coeff);
  return f;
}

void KForm::add_term(const Key& indices, const Scalar& coeff) {
  if (static_cast<int>(indices.size()) != degree_) fail(Errc::WrongDegree, "term degree mismatch");
  if (coeff.is_zero()) return;
  Key k = indices;
  // insertion sort, counting adjacent transpositions
  int swaps = 0;
  for (size_t i = 1; i < k.size(); ++i) {
    size_t j = i;
    while (j > 0 && k[j - 1] > k[j]) {
      std::swap(k[j - 1], k[j]);
      ++swaps;
      --j;
    }
  }
  for (size_t i = 0; i + 1 < k.size(); ++i)
    if (k[i] == k[i + 1]) return;  // repeated index: alternation kills it
  for (int idx : k)
    if (idx < 0 || idx >= dim_) fail(Errc::DimMismatch, "form index out of range");
  Scalar signed_coeff = (swaps % 2 == 0) ? coeff : -coeff;
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(k), signed_coeff);
  } else {
    it->second += signed_coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Scalar KForm::coeff(const Key& key) const {
  auto it = coeffs_.find(key);
  if (it == coeffs_.end())
    return coeffs_.empty() ? Scalar(0) : Scalar::zero_like(coeffs_.begin()->second);
  return it->second;
}

Scalar KForm::value(const Key& indices) const {
  Key k = indices;
  int swaps = 0;
  for (size_t i = 1; i < k.size(); ++i) {
    size_t j = i;
    while (j > 0 && k[j - 1] > k[j]) {
      std::swap(k[j - 1], k[j]);
      ++swaps;
      --j;
    }
  }
  for (size_t i = 0; i + 1 < k.size(); ++i)
    if (k[i] == k[i + 1])
      return coeffs_.empty() ? Scalar(0) : Scalar::zero_like(coeffs_.begin()->second);
  Scalar c = coeff(k);
  return (swaps % 2 == 0) ? c : -c;
}

KForm KForm::operator+(const KForm& o) const {
  if (dim_ != o.dim_) fail(Errc::DimMismatch, "form add dim");
  if (degree_ != o.degree_) fail(Errc::WrongDegree, "form add degree");
  KForm r = *this;
  for (const auto& [k, c] : o.coeffs_) {
    auto it = r.coeffs_.find(k);
    if (it == r.coeffs_.end()) {
      r.coeffs_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.coeffs_.erase(it);
    }
  }
  return r;
}

KForm KForm::operator-(const KForm& o) const { return *this + (-o); }

KForm KForm::operator-() const {
  KForm r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

KForm KForm::scaled(const Scalar& c) const {
  KForm r(dim_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : coeffs_) {
    Scalar cv = v * c;
    if (!cv.is_zero()) r.coeffs_.emplace(k, cv);
  }
  return r;
}

bool KForm::operator==(const KForm& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) return false;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (const auto& [k, c] : coeffs_) {
    auto it = o.coeffs_.find(k);
    if (it == o.coeffs_.end() || !(it->second == c)) return false;
  }
  return true;
}

bool KForm::is_zero(const ZeroTest& zt) const {
  for (const auto& [k, c] : coeffs_)
    if (!zt.zero(c)) return false;
  return true;
}

double KForm::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::fabs(c.to_double()));
  return m;
}

Scalar KForm::evaluate(const std::vector<std::vector<Scalar>>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) fail(Errc::WrongDegree, "evaluate arity");
  Scalar total = Scalar(0);
  bool first = true;
  for (const auto& [key, c] : coeffs_) {
    Matrix sub(degree_, degree_);
    for (int r = 0; r < degree_; ++r)
      for (int col = 0; col < degree_; ++col)
        sub.at(r, col) = vectors[static_cast<size_t>(col)][static_cast<size_t>(key[static_cast<size_t>(r)])];
    Scalar term = c * sub.det();
    if (first) {
      total = term;
      first = false;
    } else {
      total += term;
    }
  }
  return total;
}

KForm KForm::pullback(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) fail(Errc::DimMismatch, "pullback shape");
  KForm out(dim_, degree_);
  // substitute theta^i -> sum_j a(i, j) theta^j in every slot
  for (const auto& [key, c] : coeffs_) {
    std::vector<int> pick(static_cast<size_t>(degree_), 0);
    // iterate over all index assignments for the k slots
    while (true) {
      Scalar f = c;
      for (int s = 0; s < degree_; ++s) {
        f = f * a.at(key[static_cast<size_t>(s)], pick[static_cast<size_t>(s)]);
        if (f.is_zero()) break;
      }
      if (!f.is_zero()) out.add_term(pick, f);
      int s = degree_ - 1;
      while (s >= 0 && ++pick[static_cast<size_t>(s)] == dim_) {
        pick[static_cast<size_t>(s)] = 0;
        --s;
      }
      if (s < 0) break;
    }
  }
  return out;
}

namespace {

// iterate strictly increasing index tuples of length k in 0..n-1
bool next_combination(std::vector<int>& key, int n) {
  int k = static_cast<int>(key.size());
  for (int i = k - 1; i >= 0; --i) {
    if (key[static_cast<size_t>(i)] < n - (k - i)) {
      ++key[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j) key[static_cast<size_t>(j)] = key[static_cast<size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> key(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) key[static_cast<size_t>(i)] = i;
  return key;
}

}  // namespace

KForm slot_apply(const KForm& f, const Matrix& a, int slot) {
  if (a.rows() != f.dim() || a.cols() != f.dim()) fail(Errc::DimMismatch, "slot_apply shape");
  if (slot < 0 || slot >= f.degree()) fail(Errc::InvalidParams, "slot out of range");
  KForm out(f.dim(), f.degree());
  if (f.degree() == 0 || f.coeffs().empty()) return out;
  std::vector<int> key = first_combination(f.degree());
  do {
    Scalar acc = Scalar(0);
    bool started = false;
    for (int m = 0; m < f.dim(); ++m) {
      const Scalar& w = a.at(m, key[static_cast<size_t>(slot)]);
      if (w.is_zero()) continue;
      std::vector<int> probe = key;
      probe[static_cast<size_t>(slot)] = m;
      Scalar v = f.value(probe);
      if (v.is_zero()) continue;
      if (!started) {
        acc = v * w;
        started = true;
      } else {
        acc += v * w;
      }
    }
    if (started && !acc.is_zero()) out.add_term(key, acc);
  } while (next_combination(key, f.dim()));
  return out;
}

KForm pair_apply_sum(const KForm& f, const Matrix& a) {
  if (a.rows() != f.dim() || a.cols() != f.dim()) fail(Errc::DimMismatch, "pair_apply_sum shape");
  KForm out(f.dim(), f.degree());
  if (f.degree() < 2 || f.coeffs().empty()) return out;
  std::vector<int> key = first_combination(f.degree());
  do {
    Scalar acc = Scalar(0);
    bool started = false;
    for (int s = 0; s < f.degree(); ++s)
      for (int t = s + 1; t < f.degree(); ++t) {
        for (int m = 0; m < f.dim(); ++m) {
          const Scalar& ws = a.at(m, key[static_cast<size_t>(s)]);
          if (ws.is_zero()) continue;
          for (int n = 0; n < f.dim(); ++n) {
            const Scalar& wt = a.at(n, key[static_cast<size_t>(t)]);
            if (wt.is_zero()) continue;
            std::vector<int> probe = key;
            probe[static_cast<size_t>(s)] = m;
            probe[static_cast<size_t>(t)] = n;
            Scalar v = f.value(probe);
            if (v.is_zero()) continue;
            Scalar term = v * ws * wt;
            if (!started) {
              acc = term;
              started = true;
            } else {
              acc += term;
            }
          }
        }
      }
    if (started && !acc.is_zero()) out.add_term(key, acc);
  } while (next_combination(key, f.dim()));
  return out;
}

std::string KForm::str(const std::vector<std::string>& labels) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : coeffs_) {
    std::string cs = c.str();
    if (!first) os << " ";
    os << (cs[0] == '-' ? "" : "+") << cs;
    first = false;
    if (key.empty()) continue;
    os << " ";
    for (size_t i = 0; i < key.size(); ++i) {
      if (i) os << "^";
      int idx = key[i];
      if (idx < static_cast<int>(labels.size()))
        os << labels[static_cast<size_t>(idx)];
      else
        os << "x" << idx;
    }
  }
  return os.str();
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) fail(Errc::DimMismatch, "wedge dims differ");
  int deg = a.degree() + b.degree();
  if (deg > a.dim()) return KForm(a.dim(), a.dim());  // zero form of top degree
  KForm out(a.dim(), deg);
  for (const auto& [ka, ca] : a.coeffs())
    for (const auto& [kb, cb] : b.coeffs()) {
      KForm::Key k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add_term(k, ca * cb);
    }
  return out;
}

KForm interior(int v, const KForm& a) {
  if (a.degree() == 0) fail(Errc::DegreeZero, "interior product of a 0-form");
  if (v < 0 || v >= a.dim()) fail(Errc::DimMismatch, "interior index out of range");
  KForm out(a.dim(), a.degree() - 1);
  for (const auto& [key, c] : a.coeffs()) {
    for (size_t pos = 0; pos < key.size(); ++pos) {
      if (key[pos] != v) continue;
      KForm::Key k;
      k.reserve(key.size() - 1);
      for (size_t i = 0; i < key.size(); ++i)
        if (i != pos) k.push_back(key[i]);
      out.add_term(k, (pos % 2 == 0) ? c : -c);
      break;  // indices are strictly increasing, v occurs at most once
    }
  }
  return out;
}

KForm interior(const std::vector<Scalar>& v, const KForm& a) {
  if (static_cast<int>(v.size()) != a.dim()) fail(Errc::DimMismatch, "interior vector length");
  if (a.degree() == 0) fail(Errc::DegreeZero, "interior product of a 0-form");
  KForm out(a.dim(), a.degree() - 1);
  for (int i = 0; i < a.dim(); ++i) {
    if (v[static_cast<size_t>(i)].is_zero()) continue;
    out = out + interior(i, a).scaled(v[static_cast<size_t>(i)]);
  }
  return out;
}

KForm KForm::to_float() const {
  KForm out(dim_, degree_);
  for (const auto& [k, c] : coeffs_) {
    Scalar f = c.to_float();
    if (!f.is_zero()) out.coeffs_.emplace(k, f);
  }
  return out;
}

CoframeDifferential CoframeDifferential::to_float() const {
  std::vector<KForm> table;
  table.reserve(table_.size());
  for (const auto& f : table_) table.push_back(f.to_float());
  return CoframeDifferential(std::move(table));
}

CoframeDifferential::CoframeDifferential(std::vector<KForm> table)
    : dim_(static_cast<int>(table.size())), table_(std::move(table)) {
  for (const auto& f : table_) {
    if (f.dim() != dim_) fail(Errc::DimMismatch, "coframe table dim");
    if (f.degree() != 2) fail(Errc::WrongDegree, "coframe differential must be a 2-form");
  }
}

CoframeDifferential CoframeDifferential::checked(std::vector<KForm> table) {
  CoframeDifferential cd(std::move(table));
  if (!cd.closed_square())
    fail(Errc::InvalidStructureConstants, "d^2 != 0: dual structure constants violate Jacobi");
  return cd;
}

CoframeDifferential CoframeDifferential::reductive(std::vector<KForm> table) {
  return CoframeDifferential(std::move(table));
}

bool CoframeDifferential::closed_square() const {
  ZeroTest zt = ZeroTest::exact_mode();
  double scale = 0.0;
  bool flt = false;
  for (const auto& f : table_) {
    scale = std::max(scale, f.max_abs_coeff());
    if (!f.coeffs().empty() && f.coeffs().begin()->second.backend() == Backend::Float) flt = true;
  }
  if (flt) zt = ZeroTest::float_mode(1e-9 * std::max(1.0, scale));
  for (int i = 0; i < dim_; ++i)
    if (!invariant_d(d(i), *this).is_zero(zt)) return false;
  return true;
}

KForm invariant_d(const KForm& a, const CoframeDifferential& cd) {
  if (a.dim() != cd.dim()) fail(Errc::DimMismatch, "invariant_d dim mismatch");
  KForm out(a.dim(), a.degree() + 1 > a.dim() ? a.dim() : a.degree() + 1);
  if (a.degree() + 1 > a.dim()) return out;  // zero: no (n+1)-forms
  for (const auto& [key, c] : a.coeffs()) {
    for (size_t j = 0; j < key.size(); ++j) {
      // d theta^{i_j} wedged with the remaining monomial, Leibniz sign
      KForm::Key rest;
      rest.reserve(key.size() - 1);
      for (size_t i = 0; i < key.size(); ++i)
        if (i != j) rest.push_back(key[i]);
      KForm restf = KForm::monomial(a.dim(), rest, Scalar::one_like(c));
      KForm term = wedge(cd.d(key[j]), restf);
      out = out + term.scaled((j % 2 == 0) ? c : -c);
    }
  }
  return out;
}

}  // namespace nkh
