#include "rslab/core/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

std::string show_edge(std::span<const Vertex> e) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ']';
  return os.str();
}

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Structure::Structure(SignaturePtr sig, Vertex n) : sig_(std::move(sig)), n_(n) {
  rels_.resize(sig_->size());
  for (RelIndex i = 0; i < rels_.size(); ++i) rels_[i].arity = sig_->relation(i).arity;
  build_indexes();
}

Structure::Structure(SignaturePtr sig, Vertex n, const std::vector<std::vector<Hyperedge>>& edges)
    : sig_(std::move(sig)), n_(n) {
  if (edges.size() > sig_->size()) fail(ErrorCode::invalid_argument, "more edge lists than relations");
  rels_.resize(sig_->size());
  for (RelIndex i = 0; i < rels_.size(); ++i) {
    auto& rel = rels_[i];
    rel.arity = sig_->relation(i).arity;
    if (i >= edges.size()) continue;
    std::vector<Hyperedge> list;
    list.reserve(edges[i].size());
    for (const auto& raw : edges[i]) {
      const std::string where = " in relation '" + sig_->relation(i).name + "' at hyperedge " + show_edge(raw);
      if (raw.size() != rel.arity) fail(ErrorCode::invalid_argument, "arity mismatch" + where);
      Hyperedge e = raw;
      std::sort(e.begin(), e.end());
      for (Vertex v : e) {
        if (v >= n) fail(ErrorCode::invalid_argument, "vertex out of range" + where);
      }
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
        fail(ErrorCode::invalid_argument, "irreflexivity violated" + where);
      }
      list.push_back(std::move(e));
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    rel.flat.reserve(list.size() * rel.arity);
    for (const auto& e : list) rel.flat.insert(rel.flat.end(), e.begin(), e.end());
  }
  build_indexes();
}

Structure Structure::from_canonical(SignaturePtr sig, Vertex n, std::vector<std::vector<Vertex>> flat) {
  Structure s;
  s.sig_ = std::move(sig);
  s.n_ = n;
  if (flat.size() != s.sig_->size()) fail(ErrorCode::invalid_argument, "edge list count differs from relation count");
  s.rels_.resize(flat.size());
  for (RelIndex i = 0; i < flat.size(); ++i) {
    auto& rel = s.rels_[i];
    rel.arity = s.sig_->relation(i).arity;
    rel.flat = std::move(flat[i]);
    const std::size_t k = rel.arity;
    if (rel.flat.size() % k != 0) fail(ErrorCode::invalid_argument, "flat edge array length not a multiple of arity");
    const std::size_t m = rel.flat.size() / k;
    for (std::size_t e = 0; e < m; ++e) {
      std::span<const Vertex> cur(rel.flat.data() + e * k, k);
      for (std::size_t j = 0; j < k; ++j) {
        if (cur[j] >= n) fail(ErrorCode::invalid_argument, "vertex out of range at hyperedge " + show_edge(cur));
        if (j > 0 && cur[j - 1] >= cur[j]) fail(ErrorCode::invalid_argument, "hyperedge not canonical: " + show_edge(cur));
      }
      if (e > 0 && !lex_less({rel.flat.data() + (e - 1) * k, k}, cur)) {
        fail(ErrorCode::invalid_argument, "hyperedges not in canonical order at " + show_edge(cur));
      }
    }
  }
  s.build_indexes();
  return s;
}

void Structure::build_indexes() {
  for (auto& rel : rels_) {
    const std::size_t k = rel.arity;
    const std::size_t m = rel.flat.size() / k;
    rel.inc_off.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (Vertex v : rel.flat) ++rel.inc_off[v + 1];
    std::partial_sum(rel.inc_off.begin(), rel.inc_off.end(), rel.inc_off.begin());
    rel.inc.resize(rel.flat.size());
    {
      std::vector<std::uint32_t> pos(rel.inc_off.begin(), rel.inc_off.end() - 1);
      for (std::size_t e = 0; e < m; ++e) {
        for (std::size_t j = 0; j < k; ++j) rel.inc[pos[rel.flat[e * k + j]]++] = static_cast<EdgeId>(e);
      }
    }

    rel.nbr_off.assign(static_cast<std::size_t>(n_) + 1, 0);
    if (k == 2) {
      // Filling in edge order leaves every list sorted: edges (u,x), u < x,
      // precede edges (x,v), x < v.
      rel.nbr_off = rel.inc_off;
      rel.nbr.resize(rel.flat.size());
      std::vector<std::uint32_t> pos(rel.nbr_off.begin(), rel.nbr_off.end() - 1);
      for (std::size_t e = 0; e < m; ++e) {
        Vertex a = rel.flat[2 * e];
        Vertex b = rel.flat[2 * e + 1];
        rel.nbr[pos[a]++] = b;
        rel.nbr[pos[b]++] = a;
      }
    } else {
      std::vector<std::vector<Vertex>> lists(n_);
      for (Vertex v = 0; v < n_; ++v) {
        for (EdgeId e : std::span<const EdgeId>(rel.inc.data() + rel.inc_off[v], rel.inc_off[v + 1] - rel.inc_off[v])) {
          for (std::size_t j = 0; j < k; ++j) {
            Vertex w = rel.flat[e * k + j];
            if (w != v) lists[v].push_back(w);
          }
        }
        std::sort(lists[v].begin(), lists[v].end());
        lists[v].erase(std::unique(lists[v].begin(), lists[v].end()), lists[v].end());
        rel.nbr_off[v + 1] = rel.nbr_off[v] + static_cast<std::uint32_t>(lists[v].size());
      }
      rel.nbr.reserve(rel.nbr_off.back());
      for (auto& l : lists) rel.nbr.insert(rel.nbr.end(), l.begin(), l.end());
    }
  }

  if (rels_.size() != 1) {
    adj_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
    adj_.clear();
    std::vector<Vertex> merged;
    for (Vertex v = 0; v < n_; ++v) {
      merged.clear();
      for (RelIndex i = 0; i < rels_.size(); ++i) {
        auto nb = neighbors(i, v);
        merged.insert(merged.end(), nb.begin(), nb.end());
      }
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      adj_.insert(adj_.end(), merged.begin(), merged.end());
      adj_off_[v + 1] = static_cast<std::uint32_t>(adj_.size());
    }
  }
}

std::size_t Structure::total_edges() const noexcept {
  std::size_t t = 0;
  for (RelIndex i = 0; i < rels_.size(); ++i) t += edge_count(i);
  return t;
}

bool Structure::has_edge(RelIndex i, std::span<const Vertex> sorted) const {
  const auto& rel = rels_[i];
  const std::size_t k = rel.arity;
  if (sorted.size() != k) return false;
  if (k == 2) {
    if (sorted[0] >= n_ || sorted[1] >= n_) return false;
    auto na = neighbors(i, sorted[0]);
    auto nb = neighbors(i, sorted[1]);
    return na.size() <= nb.size() ? std::binary_search(na.begin(), na.end(), sorted[1])
                                  : std::binary_search(nb.begin(), nb.end(), sorted[0]);
  }
  std::size_t lo = 0;
  std::size_t hi = rel.flat.size() / k;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lex_less({rel.flat.data() + mid * k, k}, sorted)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == rel.flat.size() / k) return false;
  return std::equal(sorted.begin(), sorted.end(), rel.flat.begin() + static_cast<std::ptrdiff_t>(lo * k));
}

bool operator==(const Structure& a, const Structure& b) {
  if (a.n_ != b.n_ || a.rels_.size() != b.rels_.size()) return false;
  if (a.sig_ != b.sig_ && a.sig_->size() != b.sig_->size()) return false;
  for (RelIndex i = 0; i < a.rels_.size(); ++i) {
    if (a.rels_[i].arity != b.rels_[i].arity || a.rels_[i].flat != b.rels_[i].flat) return false;
  }
  return true;
}

Structure induced_substructure(const Structure& m, std::span<const Vertex> subset) {
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (subset[j] >= m.size()) fail(ErrorCode::invalid_argument, "vertex " + std::to_string(subset[j]) + " out of range");
    if (j > 0 && subset[j - 1] >= subset[j]) fail(ErrorCode::invalid_argument, "vertex subset must be sorted and distinct");
  }
  auto index_of = [&](Vertex v) -> std::ptrdiff_t {
    auto it = std::lower_bound(subset.begin(), subset.end(), v);
    return (it != subset.end() && *it == v) ? it - subset.begin() : -1;
  };
  std::vector<std::vector<Vertex>> flat(m.relation_count());
  for (RelIndex i = 0; i < m.relation_count(); ++i) {
    for (Vertex v : subset) {
      for (EdgeId e : m.incident(i, v)) {
        auto ed = m.edge(i, e);
        if (ed[0] != v) continue;
        bool inside = true;
        for (Vertex w : ed) inside = inside && index_of(w) >= 0;
        if (!inside) continue;
        for (Vertex w : ed) flat[i].push_back(static_cast<Vertex>(index_of(w)));
      }
    }
  }
  return Structure::from_canonical(m.signature_ptr(), static_cast<Vertex>(subset.size()), std::move(flat));
}

std::size_t count_edges_within(const Structure& m, RelIndex i, std::span<const Vertex> subset) {
  std::size_t count = 0;
  for (Vertex v : subset) {
    for (EdgeId e : m.incident(i, v)) {
      auto ed = m.edge(i, e);
      if (ed[0] != v) continue;
      bool inside = true;
      for (std::size_t j = 1; j < ed.size() && inside; ++j) inside = contains_sorted(subset, ed[j]);
      if (inside) ++count;
    }
  }
  return count;
}

bool contains_sorted(std::span<const Vertex> set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet make_vertex_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet full_set(Vertex n) {
  VertexSet s(n);
  std::iota(s.begin(), s.end(), Vertex{0});
  return s;
}

}  // namespace rslab
