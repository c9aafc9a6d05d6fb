#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rslab/core/structure.hpp"

namespace rslab {

/// cl^m_M(A): union of all B with A <=_i B within M and |B - A| < m.
///
/// Only sets X = B - A that are connected in the co-membership graph of M are
/// examined: a disconnected intrinsic extension splits into intrinsic
/// extensions by its components. Vertices whose total weighted incidence in M
/// is at most 1 are dropped, since removing such a vertex from any B never
/// lowers delta. Components touching a neighbour of A are grown from those
/// neighbours; components far from A are intrinsic over A iff they are over
/// the empty set, and those are computed once per engine.
class ClosureEngine {
 public:
  /// `m` must outlive the engine.
  ClosureEngine(const Structure& m, std::size_t m_bound);

  VertexSet closure(std::span<const Vertex> a);

  const Structure& structure() const noexcept { return *m_; }
  std::size_t m_bound() const noexcept { return bound_; }

 private:
  const std::vector<VertexSet>& floating();

  const Structure* m_;
  std::size_t bound_;
  std::vector<char> eligible_;
  std::optional<std::vector<VertexSet>> floating_;
};

VertexSet closure(const Structure& m, std::span<const Vertex> a, std::size_t m_bound);

}  // namespace rslab
