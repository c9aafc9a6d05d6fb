#include "rslab/extcalc/copies.hpp"

#include <algorithm>
#include <set>

#include "rslab/core/embedding.hpp"
#include "rslab/core/error.hpp"

namespace rslab {

namespace {

std::vector<Vertex> partial_from_base(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f) {
  const VertexSet& base = pat.base();
  if (f.size() != base.size()) fail(ErrorCode::invalid_argument, "embedding must list one image per base vertex");
  for (Vertex v : f) {
    if (v >= m.size()) fail(ErrorCode::invalid_argument, "embedding image out of range");
  }
  if (!is_embedding(pat.base_structure(), m, f)) {
    fail(ErrorCode::precondition, "map is not an isomorphism-mode embedding of the base");
  }
  std::vector<Vertex> partial(pat.whole().size(), kUnassigned);
  for (std::size_t j = 0; j < base.size(); ++j) partial[base[j]] = f[j];
  return partial;
}

class PackingSearch {
 public:
  explicit PackingSearch(const std::vector<VertexSet>& sets) : sets_(sets) {
    std::sort(sets_.begin(), sets_.end(), [](const VertexSet& x, const VertexSet& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
  }

  std::size_t run() {
    std::vector<std::size_t> chosen;
    search(0, chosen);
    return best_;
  }

 private:
  static bool disjoint(const VertexSet& x, const VertexSet& y) {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return false;
      if (x[i] < y[j]) ++i; else ++j;
    }
    return true;
  }

  void search(std::size_t from, std::vector<std::size_t>& chosen) {
    best_ = std::max(best_, chosen.size());
    if (chosen.size() + (sets_.size() - from) <= best_) return;
    for (std::size_t k = from; k < sets_.size(); ++k) {
      if (chosen.size() + (sets_.size() - k) <= best_) return;
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return disjoint(sets_[c], sets_[k]); });
      if (!ok) continue;
      chosen.push_back(k);
      search(k + 1, chosen);
      chosen.pop_back();
    }
  }

  std::vector<VertexSet> sets_;
  std::size_t best_ = 0;
};

}  // namespace

std::vector<VertexSet> copies(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f) {
  std::vector<Vertex> partial = partial_from_base(m, pat, f);
  std::set<VertexSet> images;
  const VertexSet all = full_set(pat.whole().size());
  const EmbeddingSearch search(pat.whole(), EmbedMode::isomorphism, {}, pat.base(), /*distinct_images=*/true);
  search.run(m, partial, [&](std::span<const Vertex> map) {
    images.insert(image_of(map, all));
    return true;
  });
  return {images.begin(), images.end()};
}

std::size_t chi(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f) {
  return copies(m, pat, f).size();
}

std::size_t chi_star(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f) {
  std::vector<VertexSet> found = copies(m, pat, f);
  if (found.empty()) return 0;
  VertexSet fa = make_vertex_set({f.begin(), f.end()});
  for (VertexSet& c : found) c = set_difference(c, fa);
  // With an empty extension there is exactly one copy, f(A) itself.
  if (found.front().empty()) return 1;
  return max_disjoint_family(found);
}

std::size_t max_disjoint_family(const std::vector<VertexSet>& sets) {
  return PackingSearch(sets).run();
}

}  // namespace rslab
