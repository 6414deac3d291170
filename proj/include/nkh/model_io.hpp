#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nkh/connection.hpp"

namespace nkh {

/// A parsed homogeneous model: algebra, split, metric and (optionally) an
/// invariant almost complex structure, plus the m-coframe table.
struct HomogeneousModel {
  std::string name;
  LieAlgebraData algebra;
  ReductiveSplit split;
  InvariantMetric metric;
  std::optional<InvariantACS> acs;
  CoframeDifferential coframe;

  HomogeneousModel to_float() const;
};

/// Structure-constant document format:
///
///   dim 9
///   h_indices 0 1 2
///   m_blocks a:3,4,5 b:6,7,8
///   3 4 5 2/3            # c[3][4][5] = 2/3, antisymmetric completion automatic
///   bracket 3 7 0 -1/3   # keyword form of the same line
///   metric 0 0 2         # m-local indices, optional (default identity)
///   acs 0 1 -1           # m-local indices, optional
///
/// '#' starts a comment; omitted structure constants are zero.
HomogeneousModel parse_model(std::istream& in, const std::string& name = "custom");
HomogeneousModel load_model_file(const std::string& path);

}  // namespace nkh
