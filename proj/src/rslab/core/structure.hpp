#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rslab/core/signature.hpp"

namespace rslab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Hyperedge = std::vector<Vertex>;
/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// A finite structure over a Signature: universe {0, ..., n-1} and, per
/// relation, a set of hyperedges. Relations are symmetric and irreflexive, so
/// a hyperedge is a set of exactly `arity` distinct vertices, stored sorted.
///
/// Immutable once built. Besides the canonical edge list, each relation keeps
/// an incidence index and a co-membership neighbour index; `adjacent()` is the
/// union of the latter over all relations.
class Structure {
 public:
  /// Empty structure on n points.
  Structure(SignaturePtr sig, Vertex n);

  /// Canonicalizes (sorts vertices, deduplicates hyperedges) and validates.
  /// `edges[i]` holds the hyperedges of relation i; missing trailing relations
  /// are treated as empty.
  Structure(SignaturePtr sig, Vertex n, const std::vector<std::vector<Hyperedge>>& edges);

  /// Builds from flat per-relation arrays that are already canonical: every
  /// edge sorted, edges in strictly increasing lexicographic order. Checked in
  /// linear time.
  static Structure from_canonical(SignaturePtr sig, Vertex n, std::vector<std::vector<Vertex>> flat);

  const Signature& signature() const noexcept { return *sig_; }
  const SignaturePtr& signature_ptr() const noexcept { return sig_; }
  Vertex size() const noexcept { return n_; }
  std::size_t relation_count() const noexcept { return rels_.size(); }
  std::uint32_t arity(RelIndex i) const { return rels_[i].arity; }

  std::size_t edge_count(RelIndex i) const { return rels_[i].flat.size() / rels_[i].arity; }
  std::size_t total_edges() const noexcept;
  std::span<const Vertex> edge(RelIndex i, EdgeId e) const {
    const auto& r = rels_[i];
    return {r.flat.data() + static_cast<std::size_t>(e) * r.arity, r.arity};
  }
  const std::vector<Vertex>& flat_edges(RelIndex i) const { return rels_[i].flat; }

  /// `sorted` must be sorted ascending with size == arity(i).
  bool has_edge(RelIndex i, std::span<const Vertex> sorted) const;

  /// Ids of the R_i hyperedges containing v, ascending.
  std::span<const EdgeId> incident(RelIndex i, Vertex v) const {
    const auto& r = rels_[i];
    return {r.inc.data() + r.inc_off[v], r.inc_off[v + 1] - r.inc_off[v]};
  }
  std::size_t degree(RelIndex i, Vertex v) const { return rels_[i].inc_off[v + 1] - rels_[i].inc_off[v]; }

  /// Vertices sharing an R_i hyperedge with v, ascending.
  std::span<const Vertex> neighbors(RelIndex i, Vertex v) const {
    const auto& r = rels_[i];
    return {r.nbr.data() + r.nbr_off[v], r.nbr_off[v + 1] - r.nbr_off[v]};
  }

  /// Vertices sharing any hyperedge with v, ascending.
  std::span<const Vertex> adjacent(Vertex v) const {
    if (rels_.size() == 1) return neighbors(0, v);
    return {adj_.data() + adj_off_[v], adj_off_[v + 1] - adj_off_[v]};
  }

  friend bool operator==(const Structure& a, const Structure& b);

 private:
  struct RelData {
    std::uint32_t arity = 0;
    std::vector<Vertex> flat;
    std::vector<std::uint32_t> inc_off;
    std::vector<EdgeId> inc;
    std::vector<std::uint32_t> nbr_off;
    std::vector<Vertex> nbr;
  };

  Structure() = default;
  void build_indexes();

  SignaturePtr sig_;
  Vertex n_ = 0;
  std::vector<RelData> rels_;
  std::vector<std::uint32_t> adj_off_;
  std::vector<Vertex> adj_;
};

/// Substructure induced on `subset` (sorted), relabelled 0..|subset|-1 in
/// increasing order.
Structure induced_substructure(const Structure& m, std::span<const Vertex> subset);

/// Number of R_i hyperedges lying entirely inside `subset` (sorted).
std::size_t count_edges_within(const Structure& m, RelIndex i, std::span<const Vertex> subset);

bool contains_sorted(std::span<const Vertex> set, Vertex v);
VertexSet make_vertex_set(std::vector<Vertex> v);
VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b);
bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet full_set(Vertex n);

}  // namespace rslab
