#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rslab/core/structure.hpp"
#include "rslab/dimension/dim_form.hpp"

namespace rslab {

using Mask = std::uint32_t;

/// Relative bookkeeping for extensions of a base set A by subsets of a small
/// candidate set X inside a structure M. Stores, per relation, the hyperedges
/// of M that lie in A u X and meet X, each as the bitmask of its X-vertices;
/// that is enough to evaluate delta(A u Y / A) for every Y within X.
class RelativeView {
 public:
  static constexpr std::size_t kMaxOutside = 30;

  /// `base` and `outside` sorted and disjoint; |outside| <= kMaxOutside.
  RelativeView(const Structure& m, std::span<const Vertex> base, std::span<const Vertex> outside);

  std::size_t size() const noexcept { return outside_.size(); }
  const std::vector<Vertex>& outside() const noexcept { return outside_; }
  Mask full() const noexcept { return size() == 0 ? 0 : (Mask{0xffffffffu} >> (32 - size())); }

  /// delta(A u Y / A) for Y given as a mask over outside().
  DimForm delta_over_base(Mask y) const;
  /// e(A u Y / A).
  DimForm edges_over_base(Mask y) const;
  /// Weighted incidence of outside()[j] inside A u Y, as the form
  /// 1 - delta(A u Y / A u Y - {x}); requires bit j set in y.
  DimForm vertex_weight(std::size_t j, Mask y) const;

  VertexSet vertices(Mask y) const;

 private:
  std::size_t relations_;
  std::vector<Vertex> outside_;
  std::vector<std::vector<Mask>> masks_;  // per relation
};

}  // namespace rslab
