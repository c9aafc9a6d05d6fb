#include "rslab/amalgam/semigeneric.hpp"

#include <algorithm>

#include "rslab/core/error.hpp"

namespace rslab {

bool closure_matches(const Structure& g, std::span<const Vertex> a, std::span<const Vertex> c, std::size_t m) {
  if (!is_subset(a, c)) fail(ErrorCode::invalid_argument, "A must be contained in C");
  VertexSet cl = closure(g, a, m);
  return std::equal(cl.begin(), cl.end(), c.begin(), c.end());
}

std::optional<VertexMap> semigeneric_witness(ClosureEngine& engine, const ExtensionPattern& pat,
                                             std::span<const Vertex> f) {
  const Structure& g = engine.structure();
  if (!is_strong(pat)) fail(ErrorCode::precondition, "pattern base is not strong");
  if (f.size() != pat.base().size()) fail(ErrorCode::invalid_argument, "embedding must list one image per base vertex");
  for (Vertex v : f) {
    if (v >= g.size()) fail(ErrorCode::invalid_argument, "embedding image out of range");
  }
  if (!is_embedding(pat.base_structure(), g, f)) {
    fail(ErrorCode::precondition, "map is not an isomorphism-mode embedding of the base");
  }
  const VertexSet fa = make_vertex_set({f.begin(), f.end()});
  const VertexSet cl_a = engine.closure(fa);
  const VertexSet all = full_set(pat.whole().size());

  std::vector<Vertex> partial(pat.whole().size(), kUnassigned);
  for (std::size_t j = 0; j < f.size(); ++j) partial[pat.base()[j]] = f[j];

  std::optional<VertexMap> found;
  for_each_embedding(pat.whole(), g, partial, EmbedMode::isomorphism, {}, [&](std::span<const Vertex> map) {
    const VertexSet img = image_of(map, all);
    const VertexSet fresh = set_difference(img, fa);
    if (std::any_of(fresh.begin(), fresh.end(), [&](Vertex v) { return contains_sorted(cl_a, v); })) return true;
    // No hyperedge inside cl(fA) u gB may mix fresh vertices with cl(fA) - fA.
    for (Vertex y : fresh) {
      for (RelIndex i = 0; i < g.relation_count(); ++i) {
        for (EdgeId e : g.incident(i, y)) {
          auto ed = g.edge(i, e);
          bool in_union = true, leaves_img = false;
          for (Vertex w : ed) {
            const bool in_img = contains_sorted(img, w);
            in_union = in_union && (in_img || contains_sorted(cl_a, w));
            leaves_img = leaves_img || !in_img;
          }
          if (in_union && leaves_img) return true;
        }
      }
    }
    const VertexSet expected = set_union(img, cl_a);
    if (engine.closure(img) != expected) return true;
    found.emplace(map.begin(), map.end());
    return false;
  });
  return found;
}

std::optional<VertexMap> semigeneric_witness(const Structure& g, const ExtensionPattern& pat,
                                             std::span<const Vertex> f, std::size_t m) {
  ClosureEngine engine(g, m);
  return semigeneric_witness(engine, pat, f);
}

}  // namespace rslab
