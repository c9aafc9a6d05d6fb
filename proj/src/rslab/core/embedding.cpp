#include "rslab/core/embedding.hpp"

#include <algorithm>
#include <array>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

// Calls fn(subset) for every size-k subset of `pool` (as sorted vertex lists).
template <class Fn>
void for_each_combination(const std::vector<Vertex>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Vertex> cur(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) cur[i] = pool[idx[i]];
    fn(cur);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool edge_in_base(std::span<const Vertex> e, std::span<const Vertex> base) {
  return std::all_of(e.begin(), e.end(), [&](Vertex v) { return contains_sorted(base, v); });
}

}  // namespace

EmbeddingSearch::EmbeddingSearch(const Structure& source, EmbedMode mode, VertexSet base,
                                 VertexSet preassigned, bool distinct_images)
    : source_(&source), mode_(mode), base_(std::move(base)), preassigned_(std::move(preassigned)) {
  const Vertex n = source.size();
  const std::size_t p = source.relation_count();
  for (Vertex v : preassigned_) {
    if (v >= n) fail(ErrorCode::invalid_argument, "pre-assigned vertex out of range");
  }

  auto required_edge = [&](std::span<const Vertex> e) {
    return mode_ == EmbedMode::isomorphism || !edge_in_base(e, base_);
  };

  // Static order.
  std::vector<char> placed(n, 0);
  for (Vertex v : preassigned_) {
    order_.push_back(v);
    placed[v] = 1;
  }
  std::vector<std::size_t> total_degree(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (RelIndex i = 0; i < p; ++i) total_degree[v] += source.degree(i, v);
  }
  while (order_.size() < n) {
    Vertex best = kUnassigned;
    std::size_t best_ties = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::size_t ties = 0;
      for (Vertex w : source.adjacent(v)) ties += placed[w];
      if (best == kUnassigned || ties > best_ties ||
          (ties == best_ties && total_degree[v] > total_degree[best])) {
        best = v;
        best_ties = ties;
      }
    }
    order_.push_back(best);
    placed[best] = 1;
  }

  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order_[k]] = k;

  steps_.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    Step& st = steps_[pos];
    const Vertex u = order_[pos];
    st.vertex = u;
    st.fixed = contains_sorted(preassigned_, u);
    st.min_degree.assign(p, 0);
    for (RelIndex i = 0; i < p; ++i) {
      for (EdgeId e : source.incident(i, u)) {
        auto ed = source.edge(i, e);
        if (!required_edge(ed)) continue;
        ++st.min_degree[i];
        std::size_t last = 0;
        for (Vertex w : ed) last = std::max(last, position[w]);
        if (last != pos) continue;
        for (Vertex w : ed) {
          if (w == u) continue;
          bool seen = std::any_of(st.anchors.begin(), st.anchors.end(), [&](const EdgeCheck& a) {
            return a.rel == i && a.vertices[0] == w;
          });
          if (!seen) st.anchors.push_back({i, {w}});
        }
        if (ed.size() != 2 || st.fixed) st.required.push_back({i, std::vector<Vertex>(ed.begin(), ed.end())});
      }
    }
    if (mode_ == EmbedMode::isomorphism) {
      std::vector<Vertex> earlier(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(pos));
      std::sort(earlier.begin(), earlier.end());
      for (RelIndex i = 0; i < p; ++i) {
        const std::size_t k = source.arity(i);
        for_each_combination(earlier, k - 1, [&](const std::vector<Vertex>& sub) {
          std::vector<Vertex> e = sub;
          e.push_back(u);
          std::sort(e.begin(), e.end());
          if (!source.has_edge(i, e)) st.forbidden.push_back({i, std::move(e)});
        });
      }
    }
  }

  if (distinct_images) {
    if (mode_ != EmbedMode::isomorphism) fail(ErrorCode::invalid_argument, "distinct images need isomorphism mode");
    std::vector<Vertex> identity(n, kUnassigned);
    for (Vertex v : preassigned_) identity[v] = v;
    std::vector<VertexMap> group = collect_embeddings(source, source, identity);
    for (std::size_t pos = 0; pos < n && group.size() > 1; ++pos) {
      const Vertex u = order_[pos];
      VertexSet orbit;
      for (const auto& g : group) orbit.push_back(g[u]);
      orbit = make_vertex_set(std::move(orbit));
      for (Vertex w : orbit) {
        if (w != u) steps_[position[w]].above.push_back(u);
      }
      std::erase_if(group, [&](const VertexMap& g) { return g[u] != u; });
    }
  }
}

std::size_t EmbeddingSearch::run(const Structure& target, std::span<const Vertex> partial,
                                 const EmbeddingVisitor& visit) const {
  const Structure& source = *source_;
  const Vertex n = source.size();
  if (target.relation_count() != source.relation_count()) {
    fail(ErrorCode::invalid_argument, "source and target use different signatures");
  }
  if (!partial.empty() && partial.size() != n) fail(ErrorCode::invalid_argument, "partial map has wrong length");
  for (Vertex v = 0; v < n; ++v) {
    Vertex img = partial.empty() ? kUnassigned : partial[v];
    if (contains_sorted(preassigned_, v) != (img != kUnassigned)) {
      fail(ErrorCode::invalid_argument, "partial map does not match the pre-assigned vertices");
    }
    if (img != kUnassigned && img >= target.size()) fail(ErrorCode::invalid_argument, "partial map leaves the target");
  }
  if (n > target.size()) return 0;

  VertexMap map(n, kUnassigned);
  std::vector<char> used(target.size(), 0);
  {
    std::vector<Vertex> fixed;
    for (Vertex v : preassigned_) fixed.push_back(partial[v]);
    std::sort(fixed.begin(), fixed.end());
    if (std::adjacent_find(fixed.begin(), fixed.end()) != fixed.end()) return 0;  // not injective
  }

  std::size_t visited = 0;
  bool stop = false;
  std::array<Vertex, 16> small{};
  std::vector<Vertex> large;
  std::vector<std::vector<std::span<const Vertex>>> scratch(n);
  std::vector<std::vector<std::size_t>> cursors(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    scratch[pos].resize(steps_[pos].anchors.size());
    cursors[pos].resize(steps_[pos].anchors.size());
  }

  auto image_present = [&](const EdgeCheck& chk) {
    const std::size_t k = chk.vertices.size();
    std::span<Vertex> buf;
    if (k <= small.size()) {
      buf = std::span<Vertex>(small.data(), k);
    } else {
      large.resize(k);
      buf = large;
    }
    for (std::size_t j = 0; j < k; ++j) buf[j] = map[chk.vertices[j]];
    std::sort(buf.begin(), buf.end());
    return target.has_edge(chk.rel, buf);
  };

  auto acceptable = [&](const Step& st, Vertex x) {
    if (used[x]) return false;
    for (RelIndex i = 0; i < st.min_degree.size(); ++i) {
      if (target.degree(i, x) < st.min_degree[i]) return false;
    }
    map[st.vertex] = x;
    for (const auto& chk : st.required) {
      if (!image_present(chk)) {
        map[st.vertex] = kUnassigned;
        return false;
      }
    }
    for (const auto& chk : st.forbidden) {
      if (image_present(chk)) {
        map[st.vertex] = kUnassigned;
        return false;
      }
    }
    return true;
  };

  auto descend = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      ++visited;
      if (!visit(map)) stop = true;
      return;
    }
    const Step& st = steps_[pos];
    Vertex floor = 0;
    for (Vertex a : st.above) floor = std::max(floor, map[a] + 1);
    auto attempt = [&](Vertex x) {
      if (!acceptable(st, x)) return;
      used[x] = 1;
      self(self, pos + 1);
      used[x] = 0;
      map[st.vertex] = kUnassigned;
    };
    if (st.fixed) {
      attempt(partial[st.vertex]);
    } else if (st.anchors.size() == 1) {
      auto cands = target.neighbors(st.anchors[0].rel, map[st.anchors[0].vertices[0]]);
      for (auto it = std::lower_bound(cands.begin(), cands.end(), floor); it != cands.end(); ++it) {
        attempt(*it);
        if (stop) return;
      }
    } else if (!st.anchors.empty()) {
      // Merge intersection; each list keeps a cursor that only moves forward.
      auto& lists = scratch[pos];
      auto& cursor = cursors[pos];
      const std::size_t k = st.anchors.size();
      std::size_t shortest = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const auto& a = st.anchors[j];
        auto nb = target.neighbors(a.rel, map[a.vertices[0]]);
        lists[j] = nb.subspan(static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), floor) - nb.begin()));
        cursor[j] = 0;
        if (lists[j].size() < lists[shortest].size()) shortest = j;
      }
      for (Vertex x : lists[shortest]) {
        bool common = true;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == shortest) continue;
          const auto& l = lists[j];
          std::size_t& c = cursor[j];
          while (c < l.size() && l[c] < x) ++c;
          if (c == l.size()) return;
          if (l[c] != x) {
            common = false;
            break;
          }
        }
        if (!common) continue;
        attempt(x);
        if (stop) return;
      }
    } else {
      for (Vertex x = floor; x < target.size(); ++x) {
        attempt(x);
        if (stop) return;
      }
    }
  };
  descend(descend, 0);
  return visited;
}

namespace {

VertexSet assigned_vertices(std::span<const Vertex> partial) {
  VertexSet out;
  for (Vertex v = 0; v < partial.size(); ++v) {
    if (partial[v] != kUnassigned) out.push_back(v);
  }
  return out;
}

}  // namespace

std::size_t for_each_embedding(const Structure& source, const Structure& target,
                               std::span<const Vertex> partial, EmbedMode mode,
                               std::span<const Vertex> base, const EmbeddingVisitor& visit) {
  EmbeddingSearch search(source, mode, VertexSet(base.begin(), base.end()), assigned_vertices(partial));
  return search.run(target, partial, visit);
}

std::vector<VertexMap> collect_embeddings(const Structure& source, const Structure& target,
                                          std::span<const Vertex> partial, EmbedMode mode,
                                          std::span<const Vertex> base) {
  std::vector<VertexMap> out;
  for_each_embedding(source, target, partial, mode, base, [&](std::span<const Vertex> m) {
    out.emplace_back(m.begin(), m.end());
    return true;
  });
  return out;
}

std::size_t count_embeddings(const Structure& source, const Structure& target,
                             std::span<const Vertex> partial, EmbedMode mode,
                             std::span<const Vertex> base) {
  return for_each_embedding(source, target, partial, mode, base, [](std::span<const Vertex>) { return true; });
}

std::optional<VertexMap> find_embedding(const Structure& source, const Structure& target,
                                        std::span<const Vertex> partial, EmbedMode mode,
                                        std::span<const Vertex> base) {
  std::optional<VertexMap> out;
  for_each_embedding(source, target, partial, mode, base, [&](std::span<const Vertex> m) {
    out.emplace(m.begin(), m.end());
    return false;
  });
  return out;
}

bool is_embedding(const Structure& source, const Structure& target, std::span<const Vertex> map,
                  EmbedMode mode, std::span<const Vertex> base) {
  if (map.size() != source.size() || source.relation_count() != target.relation_count()) return false;
  std::vector<Vertex> img(map.begin(), map.end());
  std::sort(img.begin(), img.end());
  if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
  if (!img.empty() && img.back() >= target.size()) return false;

  std::vector<Vertex> buf;
  for (RelIndex i = 0; i < source.relation_count(); ++i) {
    for (EdgeId e = 0; e < source.edge_count(i); ++e) {
      auto ed = source.edge(i, e);
      if (mode == EmbedMode::homomorphism_rel_base && edge_in_base(ed, base)) continue;
      buf.clear();
      for (Vertex v : ed) buf.push_back(map[v]);
      std::sort(buf.begin(), buf.end());
      if (!target.has_edge(i, buf)) return false;
    }
    if (mode == EmbedMode::isomorphism) {
      // Reflection: the image spans no more target edges than the source has.
      std::size_t inside = 0;
      for (Vertex w : img) {
        for (EdgeId e : target.incident(i, w)) {
          auto ed = target.edge(i, e);
          if (ed[0] != w) continue;
          inside += std::all_of(ed.begin(), ed.end(), [&](Vertex u) { return contains_sorted(img, u); });
        }
      }
      if (inside != source.edge_count(i)) return false;
    }
  }
  return true;
}

bool are_isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size() || a.relation_count() != b.relation_count()) return false;
  for (RelIndex i = 0; i < a.relation_count(); ++i) {
    if (a.edge_count(i) != b.edge_count(i) || a.arity(i) != b.arity(i)) return false;
  }
  // Equal sizes make every injective map surjective.
  return find_embedding(a, b).has_value();
}

VertexSet image_of(std::span<const Vertex> map, std::span<const Vertex> vertices) {
  std::vector<Vertex> out;
  out.reserve(vertices.size());
  for (Vertex v : vertices) out.push_back(map[v]);
  return make_vertex_set(std::move(out));
}

}  // namespace rslab
