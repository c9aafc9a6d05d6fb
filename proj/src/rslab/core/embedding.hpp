#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rslab/core/structure.hpp"

namespace rslab {

constexpr Vertex kUnassigned = std::numeric_limits<Vertex>::max();

/// Image of each source vertex, indexed by source vertex.
using VertexMap = std::vector<Vertex>;

enum class EmbedMode {
  /// Hyperedge present in the source iff its image is present in the target.
  isomorphism,
  /// Every source hyperedge with a vertex outside `base` has its image
  /// present; hyperedges inside the base and extra target hyperedges are
  /// unconstrained.
  homomorphism_rel_base,
};

struct Embedding {
  VertexMap map;
  EmbedMode mode = EmbedMode::isomorphism;
  VertexSet base;  // only meaningful for homomorphism_rel_base
};

/// Returns true to continue the enumeration, false to stop.
using EmbeddingVisitor = std::function<bool(std::span<const Vertex>)>;

/// Backtracking enumerator of injective maps of one source structure into
/// targets. The static search order puts pre-assigned source vertices first,
/// then repeatedly the vertex with the most hyperedge ties to already placed
/// vertices (ties broken by degree, then index). Candidates come from the
/// target's neighbour index whenever a placed vertex shares a required
/// hyperedge with the next one.
///
/// Maps are produced in lexicographic order of the images taken along the
/// search order; each map appears exactly once.
class EmbeddingSearch {
 public:
  /// With `distinct_images` (isomorphism mode only) the search reports one map
  /// per image: automorphisms of the source fixing the pre-assigned vertices
  /// are factored out by requiring, along the search order, each vertex to
  /// take the smallest image within its orbit under the stabilizer of the
  /// vertices placed before it.
  EmbeddingSearch(const Structure& source, EmbedMode mode, VertexSet base = {},
                  VertexSet preassigned = {}, bool distinct_images = false);

  /// `partial` has one entry per source vertex: a target vertex for every
  /// vertex in `preassigned`, kUnassigned elsewhere. Returns the number of maps
  /// visited.
  std::size_t run(const Structure& target, std::span<const Vertex> partial,
                  const EmbeddingVisitor& visit) const;

  const std::vector<Vertex>& order() const noexcept { return order_; }

 private:
  struct EdgeCheck {
    RelIndex rel;
    std::vector<Vertex> vertices;  // source vertices
  };
  struct Step {
    Vertex vertex = 0;
    bool fixed = false;
    std::vector<EdgeCheck> required;
    std::vector<EdgeCheck> forbidden;
    std::vector<std::size_t> min_degree;  // per relation
    std::vector<Vertex> above;            // image must exceed theirs
    // Candidates lie in the intersection of the neighbour lists of the
    // anchors' images; no anchors means scan the whole target. Binary
    // required edges are enforced by the intersection alone.
    std::vector<EdgeCheck> anchors;  // {rel, {earlier vertex}}
  };

  const Structure* source_;
  EmbedMode mode_;
  VertexSet base_;
  VertexSet preassigned_;
  std::vector<Vertex> order_;
  std::vector<Step> steps_;
};

std::size_t for_each_embedding(const Structure& source, const Structure& target,
                               std::span<const Vertex> partial, EmbedMode mode,
                               std::span<const Vertex> base, const EmbeddingVisitor& visit);

std::vector<VertexMap> collect_embeddings(const Structure& source, const Structure& target,
                                          std::span<const Vertex> partial = {},
                                          EmbedMode mode = EmbedMode::isomorphism,
                                          std::span<const Vertex> base = {});

std::size_t count_embeddings(const Structure& source, const Structure& target,
                             std::span<const Vertex> partial = {},
                             EmbedMode mode = EmbedMode::isomorphism,
                             std::span<const Vertex> base = {});

std::optional<VertexMap> find_embedding(const Structure& source, const Structure& target,
                                        std::span<const Vertex> partial = {},
                                        EmbedMode mode = EmbedMode::isomorphism,
                                        std::span<const Vertex> base = {});

/// Checks injectivity and the edge conditions of `mode` for a total map.
bool is_embedding(const Structure& source, const Structure& target, std::span<const Vertex> map,
                  EmbedMode mode = EmbedMode::isomorphism, std::span<const Vertex> base = {});

bool are_isomorphic(const Structure& a, const Structure& b);

/// Sorted image of `vertices` under `map`.
VertexSet image_of(std::span<const Vertex> map, std::span<const Vertex> vertices);

}  // namespace rslab
