#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rslab/core/structure.hpp"
#include "rslab/harness/report.hpp"

namespace rslab {

struct QeProbeConfig {
  /// Closure bounds to sweep; one report row per value (the row's `n`).
  std::vector<std::size_t> ells{1, 2};
  /// Quantifier depth of the compared formulas (<= 2).
  std::size_t depth = 1;
  /// Tuple length (1 or 2).
  std::size_t tuple_length = 1;
  /// Tuple pairs with isomorphic closures to collect per ell.
  std::size_t pairs = 50;
  /// Random draws per ell before giving up; 0 means 50 * pairs.
  std::size_t max_attempts = 0;
  std::uint64_t seed = 0;
  /// Pair each sampled tuple of G1 with the same tuple of G2.
  bool same_tuple = false;
};

/// Rank-d type of a tuple: depth 0 is its atomic diagram, depth k+1 the set
/// of depth-k types of its one-point extensions. Two tuples have equal rank-d
/// types iff they satisfy the same formulas of quantifier depth <= d. Ids are
/// comparable across structures evaluated by the same oracle.
class TupleTypeOracle {
 public:
  std::uint64_t type(const Structure& g, std::vector<Vertex>& tuple, std::size_t depth);

 private:
  std::map<std::vector<std::uint64_t>, std::uint64_t> ids_;
};

/// Samples tuple pairs (a from G1, a' from G2) whose closures cl^ell are
/// isomorphic by a map sending a to a', and reports per ell the share of
/// pairs with equal rank-`depth` types (mean and freq columns). Rows with no
/// pair found have freq NaN and mark the report inconclusive.
ExperimentReport qe_probe(const Structure& g1, const Structure& g2, const QeProbeConfig& cfg);

}  // namespace rslab
