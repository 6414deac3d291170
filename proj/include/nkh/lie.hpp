#pragma once

#include <string>
#include <vector>

#include "nkh/kform.hpp"
#include "nkh/matrix.hpp"

namespace nkh {

/// Structure constants c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k.
/// Antisymmetry and the Jacobi identity are checked at construction.
class LieAlgebraData {
 public:
  struct Entry {
    int i, j, k;
    Scalar value;
  };

  /// Builds from the nonzero entries; the antisymmetric completion
  /// c[j][i][k] = -c[i][j][k] is filled in automatically.
  static LieAlgebraData from_entries(int dim, const std::vector<Entry>& entries,
                                     bool check_jacobi = true);

  int dim() const { return dim_; }
  const Scalar& c(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// [b_i, b_j] as a coordinate vector.
  std::vector<Scalar> bracket_basis(int i, int j) const;
  /// [x, y] for coordinate vectors on the full algebra.
  std::vector<Scalar> bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;

  void verify_antisymmetry() const;
  void verify_jacobi(const ZeroTest& zt = ZeroTest::exact_mode()) const;

  LieAlgebraData to_float() const;

 private:
  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<Scalar> c_;
};

/// Partition of the basis into h-indices and labeled m-blocks.
/// Validation checks [h,h] subset h and [h,m] subset m from the structure
/// constants (infinitesimal Ad(H)-invariance; the isotropy groups in scope
/// are connected).
struct ReductiveSplit {
  std::vector<int> h_indices;
  std::vector<std::vector<int>> m_blocks;
  std::vector<std::string> block_names;

  std::vector<int> m_indices() const;
  int m_dim() const;
  /// Position of a global index inside the flattened m list, -1 if absent.
  int m_pos(int global_index) const;
  void validate(const LieAlgebraData& L, const ZeroTest& zt = ZeroTest::exact_mode()) const;
};

/// Invariant metric on m, stored as the Gram matrix over the m-basis.
struct InvariantMetric {
  Matrix g;

  void validate(const ZeroTest& zt) const;  // symmetric positive definite
  Scalar inner(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
};

/// Invariant almost complex structure on m.
struct InvariantACS {
  Matrix j;

  void validate(const ZeroTest& zt) const;  // J^2 = -Id
  void validate_compatible(const InvariantMetric& g, const ZeroTest& zt) const;
};

/// m-projected bracket of two m-coordinate vectors.
std::vector<Scalar> bracket_m(const LieAlgebraData& L, const ReductiveSplit& split,
                              const std::vector<Scalar>& x_m, const std::vector<Scalar>& y_m);

/// Coframe-differential table of the m-coframe for a reductive quotient:
/// d theta^k (X_i, X_j) = -theta^k([X_i, X_j]_m).
CoframeDifferential coframe_from_split(const LieAlgebraData& L, const ReductiveSplit& split);

}  // namespace nkh
