#include "rslab/amalgam/free_join.hpp"

#include <algorithm>

#include "rslab/core/error.hpp"
#include "rslab/extcalc/extension.hpp"
#include "rslab/extcalc/k0plus.hpp"

namespace rslab {

namespace {

void check_list(const Structure& s, std::span<const Vertex> list, const char* what) {
  VertexSet sorted = make_vertex_set({list.begin(), list.end()});
  if (sorted.size() != list.size()) fail(ErrorCode::invalid_argument, std::string(what) + " repeats a vertex");
  if (!sorted.empty() && sorted.back() >= s.size()) fail(ErrorCode::invalid_argument, std::string(what) + " vertex out of range");
}

}  // namespace

FreeJoin free_join(const Structure& b, std::span<const Vertex> a_in_b, const Structure& c,
                   std::span<const Vertex> a_in_c) {
  bool same_sig = b.relation_count() == c.relation_count();
  for (RelIndex i = 0; same_sig && i < b.relation_count(); ++i) same_sig = b.arity(i) == c.arity(i);
  if (!same_sig) fail(ErrorCode::invalid_argument, "structures have different signatures");
  if (a_in_b.size() != a_in_c.size()) fail(ErrorCode::invalid_argument, "base correspondence sizes differ");
  check_list(b, a_in_b, "base in B");
  check_list(c, a_in_c, "base in C");

  // The correspondence must be an isomorphism A_B -> A_C.
  VertexSet ab = make_vertex_set({a_in_b.begin(), a_in_b.end()});
  VertexSet ac = make_vertex_set({a_in_c.begin(), a_in_c.end()});
  VertexMap corr(ab.size());
  for (std::size_t j = 0; j < a_in_b.size(); ++j) {
    auto pb = std::lower_bound(ab.begin(), ab.end(), a_in_b[j]) - ab.begin();
    auto pc = std::lower_bound(ac.begin(), ac.end(), a_in_c[j]) - ac.begin();
    corr[static_cast<std::size_t>(pb)] = static_cast<Vertex>(pc);
  }
  if (!is_embedding(induced_substructure(b, ab), induced_substructure(c, ac), corr)) {
    fail(ErrorCode::invalid_argument, "base correspondence is not an isomorphism");
  }

  VertexMap c_map(c.size(), kUnassigned);
  for (std::size_t j = 0; j < a_in_c.size(); ++j) c_map[a_in_c[j]] = a_in_b[j];
  Vertex next = b.size();
  for (Vertex v = 0; v < c.size(); ++v) {
    if (c_map[v] == kUnassigned) c_map[v] = next++;
  }

  std::vector<std::vector<Hyperedge>> edges(b.relation_count());
  for (RelIndex i = 0; i < b.relation_count(); ++i) {
    for (EdgeId e = 0; e < b.edge_count(i); ++e) {
      auto ed = b.edge(i, e);
      edges[i].emplace_back(ed.begin(), ed.end());
    }
    for (EdgeId e = 0; e < c.edge_count(i); ++e) {
      Hyperedge h;
      bool inside_base = true;
      for (Vertex v : c.edge(i, e)) {
        h.push_back(c_map[v]);
        inside_base = inside_base && c_map[v] < b.size();
      }
      // Edges of C on A are already present as edges of B on A.
      if (!inside_base) edges[i].push_back(std::move(h));
    }
  }
  return {Structure(b.signature_ptr(), next, edges), std::move(c_map)};
}

AmalgamationVerdict check_full_amalgamation(const Structure& b, std::span<const Vertex> a_in_b, const Structure& c,
                                            std::span<const Vertex> a_in_c) {
  VertexSet ab = make_vertex_set({a_in_b.begin(), a_in_b.end()});
  if (!is_strong(b, ab, full_set(b.size()))) fail(ErrorCode::precondition, "base is not strong in B");
  FreeJoin j = free_join(b, a_in_b, c, a_in_c);
  AmalgamationVerdict v;
  v.in_k0_plus = in_k0_plus(j.joined);
  VertexSet c_image = make_vertex_set(std::vector<Vertex>(j.c_map.begin(), j.c_map.end()));
  v.c_strong_in_d = is_strong(j.joined, c_image, full_set(j.joined.size()));
  return v;
}

}  // namespace rslab
