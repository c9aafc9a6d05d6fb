#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "rslab/core/structure.hpp"

namespace rslab {

/// Enumerates connected vertex sets of the co-membership graph of `m`
/// restricted to vertices with allowed(v), each exactly once (ESU scheme).
/// Every set contains a root and its lowest-ranked vertex is that root;
/// rank(v) must be a strict total order on allowed vertices. visit(S) gets the
/// set unsorted, |S| between 1 and max_size, and returns false to stop.
template <class Allowed, class Rank, class Visit>
class ConnectedSetWalker {
 public:
  ConnectedSetWalker(const Structure& m, Allowed allowed, Rank rank, std::size_t max_size, Visit& visit)
      : m_(m), allowed_(allowed), rank_(rank), max_size_(max_size), visit_(visit) {}

  /// Returns false if the visitor stopped the walk.
  bool from_root(Vertex root) {
    if (max_size_ == 0 || !allowed_(root)) return true;
    set_.assign(1, root);
    root_rank_ = rank_(root);
    std::vector<Vertex> ext;
    for (Vertex u : m_.adjacent(root)) {
      if (allowed_(u) && rank_(u) > root_rank_) ext.push_back(u);
    }
    return extend(std::move(ext));
  }

 private:
  bool near_set(Vertex u) const {
    for (Vertex s : set_) {
      if (s == u) return true;
      auto adj = m_.adjacent(s);
      if (std::binary_search(adj.begin(), adj.end(), u)) return true;
    }
    return false;
  }

  bool extend(std::vector<Vertex> ext) {
    if (!visit_(std::span<const Vertex>(set_))) return false;
    if (set_.size() >= max_size_) return true;
    while (!ext.empty()) {
      Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : m_.adjacent(w)) {
        if (!allowed_(u) || rank_(u) <= root_rank_ || near_set(u)) continue;
        if (std::find(next.begin(), next.end(), u) != next.end()) continue;
        next.push_back(u);
      }
      set_.push_back(w);
      bool go = extend(std::move(next));
      set_.pop_back();
      if (!go) return false;
    }
    return true;
  }

  const Structure& m_;
  Allowed allowed_;
  Rank rank_;
  std::size_t max_size_;
  Visit& visit_;
  std::vector<Vertex> set_;
  std::uint64_t root_rank_ = 0;
};

template <class Allowed, class Rank, class Visit>
bool for_each_connected_set(const Structure& m, std::span<const Vertex> roots, Allowed allowed, Rank rank,
                            std::size_t max_size, Visit&& visit) {
  ConnectedSetWalker<Allowed, Rank, std::remove_reference_t<Visit>> walker(m, allowed, rank, max_size, visit);
  for (Vertex r : roots) {
    if (!walker.from_root(r)) return false;
  }
  return true;
}

}  // namespace rslab
