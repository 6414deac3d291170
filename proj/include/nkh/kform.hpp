#pragma once

#include <map>
#include <string>
#include <vector>

#include "nkh/matrix.hpp"

namespace nkh {

/// Alternating k-form on a based n-dimensional space.  Sparse: strictly
/// increasing index tuples mapped to nonzero coefficients.
class KForm {
 public:
  using Key = std::vector<int>;

  KForm() : dim_(0), degree_(0) {}
  KForm(int dim, int degree);

  static KForm monomial(int dim, Key indices, const Scalar& coeff);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Key, Scalar>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  /// Adds coeff * theta^{i1} ^ ... ^ theta^{ik} with indices in any order;
  /// the sign comes from counting adjacent transpositions, repeated
  /// indices drop the term.
  void add_term(const Key& indices, const Scalar& coeff);
  /// Coefficient on a strictly increasing key (zero scalar if absent).
  Scalar coeff(const Key& sorted_key) const;
  /// Value on an arbitrary index tuple (signed lookup, 0 on repeats).
  Scalar value(const Key& indices) const;

  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm operator-() const;
  KForm scaled(const Scalar& c) const;

  bool operator==(const KForm& o) const;
  bool is_zero(const ZeroTest& zt) const;
  double max_abs_coeff() const;

  /// Evaluates the form on `degree` many vectors given in coordinates.
  Scalar evaluate(const std::vector<std::vector<Scalar>>& vectors) const;

  /// f(A v1, ..., A vk) as a form (pullback along the column-action map A).
  KForm pullback(const Matrix& a) const;

  KForm to_float() const;

  std::string str(const std::vector<std::string>& labels = {}) const;

 private:
  int dim_, degree_;
  std::map<Key, Scalar> coeffs_;
};

KForm wedge(const KForm& a, const KForm& b);

/// The form whose coefficient on an increasing basis tuple equals
/// f(e_{k_0}, .., A e_{k_slot}, .., e_{k_last}).  Agrees with applying A in
/// that slot whenever the resulting multilinear map is alternating (e.g.
/// J in one slot of a type-(3,0)+(0,3) form).
KForm slot_apply(const KForm& f, const Matrix& a, int slot);

/// Sum over unordered slot pairs of applying A in both slots; alternating
/// for every alternating input, used by the type projections.
KForm pair_apply_sum(const KForm& f, const Matrix& a);

/// Interior product with a basis vector (contraction in the first slot).
KForm interior(int v, const KForm& a);
/// Interior product with a coefficient vector.
KForm interior(const std::vector<Scalar>& v, const KForm& a);

/// Differentials of a coframe: for each index i a 2-form equal to d theta^i.
class CoframeDifferential {
 public:
  CoframeDifferential() : dim_(0) {}

  /// Construction with the d^2 = 0 check on every generator (equivalent to
  /// the Jacobi identity of the dual structure constants).
  static CoframeDifferential checked(std::vector<KForm> table);
  /// Construction without the global d^2 = 0 check.  Used for the
  /// m-projected tables of reductive quotients, where d^2 vanishes only on
  /// the invariant forms actually differentiated.
  static CoframeDifferential reductive(std::vector<KForm> table);

  int dim() const { return dim_; }
  const KForm& d(int i) const { return table_[static_cast<size_t>(i)]; }
  bool closed_square() const;  // d(d theta^i) == 0 for all i
  CoframeDifferential to_float() const;

 private:
  explicit CoframeDifferential(std::vector<KForm> table);
  int dim_;
  std::vector<KForm> table_;
};

/// Exterior derivative of an invariant (constant-coefficient) form, driven
/// by the coframe-differential table and the Leibniz rule.
KForm invariant_d(const KForm& a, const CoframeDifferential& cd);

}  // namespace nkh
