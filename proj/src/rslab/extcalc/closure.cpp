#include "rslab/extcalc/closure.hpp"

#include <algorithm>

#include "rslab/core/error.hpp"
#include "rslab/dimension/dim_form.hpp"
#include "rslab/extcalc/connected_sets.hpp"
#include "rslab/extcalc/extension.hpp"
#include "rslab/extcalc/relative_view.hpp"

namespace rslab {

namespace {

// Every vertex of an intrinsic extension carries weighted incidence > 1
// inside it.
bool heavy_inside(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> x) {
  RelativeView view(m, a, x);
  const Signature& sig = m.signature();
  for (std::size_t j = 0; j < view.size(); ++j) {
    DimForm slack = view.vertex_weight(j, view.full());
    slack = -slack;
    slack.set_c0(1);
    if (sign(slack, sig) != Sign::negative) return false;
  }
  return true;
}

}  // namespace

ClosureEngine::ClosureEngine(const Structure& m, std::size_t m_bound)
    : m_(&m), bound_(m_bound), eligible_(m.size(), 0) {
  if (m_bound > kMaxExtensionVertices + 1) {
    fail(ErrorCode::limit, "closure bound m = " + std::to_string(m_bound) + " exceeds " +
                               std::to_string(kMaxExtensionVertices + 1));
  }
  const Signature& sig = m.signature();
  DimForm slack(m.relation_count());
  for (Vertex v = 0; v < m.size(); ++v) {
    slack.set_c0(1);
    for (RelIndex i = 0; i < m.relation_count(); ++i) slack.set_coeff(i, -static_cast<std::int64_t>(m.degree(i, v)));
    eligible_[v] = sign(slack, sig) == Sign::negative;
  }
}

const std::vector<VertexSet>& ClosureEngine::floating() {
  if (floating_) return *floating_;
  floating_.emplace();
  const Structure& m = *m_;
  if (bound_ < 3) return *floating_;  // single vertices are never intrinsic over the empty set
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < m.size(); ++v) {
    if (eligible_[v]) roots.push_back(v);
  }
  VertexSet x;
  for_each_connected_set(
      m, roots, [&](Vertex v) { return eligible_[v] != 0; }, [](Vertex v) { return std::uint64_t{v}; },
      bound_ - 1, [&](std::span<const Vertex> s) {
        if (s.size() < 2) return true;
        x.assign(s.begin(), s.end());
        std::sort(x.begin(), x.end());
        if (heavy_inside(m, {}, x) && is_intrinsic(m, {}, x)) floating_->push_back(x);
        return true;
      });
  return *floating_;
}

VertexSet ClosureEngine::closure(std::span<const Vertex> a) {
  const Structure& m = *m_;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] >= m.size()) fail(ErrorCode::invalid_argument, "vertex " + std::to_string(a[j]) + " out of range");
    if (j > 0 && a[j - 1] >= a[j]) fail(ErrorCode::invalid_argument, "vertex subset must be sorted and distinct");
  }
  VertexSet result(a.begin(), a.end());
  if (bound_ <= 1) return result;

  // Eligible neighbours of A outside A seed the touching components.
  VertexSet near(a.begin(), a.end());
  std::vector<Vertex> seeds;
  for (Vertex v : a) {
    for (Vertex u : m.adjacent(v)) near.push_back(u);
  }
  near = make_vertex_set(std::move(near));
  for (Vertex u : near) {
    if (!contains_sorted(a, u) && eligible_[u]) seeds.push_back(u);
  }

  std::vector<VertexSet> found;
  auto allowed = [&](Vertex v) { return eligible_[v] != 0 && !contains_sorted(a, v); };
  // Seeds rank first so each touching set is produced once, from its
  // lowest-ranked seed.
  auto rank = [&](Vertex v) -> std::uint64_t {
    auto it = std::lower_bound(seeds.begin(), seeds.end(), v);
    if (it != seeds.end() && *it == v) return static_cast<std::uint64_t>(it - seeds.begin());
    return std::uint64_t{m.size()} + v;
  };
  VertexSet x;
  for_each_connected_set(m, seeds, allowed, rank, bound_ - 1, [&](std::span<const Vertex> s) {
    x.assign(s.begin(), s.end());
    std::sort(x.begin(), x.end());
    if (is_subset(x, result)) return true;
    if (heavy_inside(m, a, x) && is_intrinsic(m, a, set_union(a, x))) result = set_union(result, x);
    return true;
  });

  for (const VertexSet& piece : floating()) {
    bool apart = std::none_of(piece.begin(), piece.end(), [&](Vertex v) { return contains_sorted(near, v); });
    if (apart) result = set_union(result, piece);
  }
  return result;
}

VertexSet closure(const Structure& m, std::span<const Vertex> a, std::size_t m_bound) {
  ClosureEngine engine(m, m_bound);
  return engine.closure(a);
}

}  // namespace rslab
