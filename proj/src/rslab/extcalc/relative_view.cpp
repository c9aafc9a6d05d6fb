#include "rslab/extcalc/relative_view.hpp"

#include <algorithm>
#include <bit>

#include "rslab/core/error.hpp"

namespace rslab {

RelativeView::RelativeView(const Structure& m, std::span<const Vertex> base, std::span<const Vertex> outside)
    : relations_(m.relation_count()), outside_(outside.begin(), outside.end()), masks_(m.relation_count()) {
  if (outside_.size() > kMaxOutside) fail(ErrorCode::limit, "extension too large for exhaustive subset checks");
  for (std::size_t j = 0; j < outside_.size(); ++j) {
    if (outside_[j] >= m.size()) fail(ErrorCode::invalid_argument, "vertex out of range");
    if (j > 0 && outside_[j - 1] >= outside_[j]) fail(ErrorCode::invalid_argument, "vertex subset must be sorted and distinct");
    if (contains_sorted(base, outside_[j])) fail(ErrorCode::invalid_argument, "base and extension overlap");
  }
  auto slot = [&](Vertex v) -> int {
    auto it = std::lower_bound(outside_.begin(), outside_.end(), v);
    return (it != outside_.end() && *it == v) ? static_cast<int>(it - outside_.begin()) : -1;
  };
  for (RelIndex i = 0; i < relations_; ++i) {
    for (std::size_t j = 0; j < outside_.size(); ++j) {
      for (EdgeId e : m.incident(i, outside_[j])) {
        Mask mask = 0;
        bool inside = true;
        int first = -1;
        for (Vertex w : m.edge(i, e)) {
          int s = slot(w);
          if (s >= 0) {
            mask |= Mask{1} << s;
            if (first < 0) first = s;
          } else if (!contains_sorted(base, w)) {
            inside = false;
            break;
          }
        }
        // Count each hyperedge once, from its first outside vertex.
        if (inside && first == static_cast<int>(j)) masks_[i].push_back(mask);
      }
    }
  }
}

DimForm RelativeView::edges_over_base(Mask y) const {
  DimForm f(relations_);
  for (RelIndex i = 0; i < relations_; ++i) {
    std::int64_t c = 0;
    for (Mask mk : masks_[i]) c += (mk & ~y) == 0;
    f.set_coeff(i, c);
  }
  return f;
}

DimForm RelativeView::delta_over_base(Mask y) const {
  DimForm f(relations_);
  f.set_c0(std::popcount(y));
  for (RelIndex i = 0; i < relations_; ++i) {
    std::int64_t c = 0;
    for (Mask mk : masks_[i]) c += (mk & ~y) == 0;
    f.set_coeff(i, -c);
  }
  return f;
}

DimForm RelativeView::vertex_weight(std::size_t j, Mask y) const {
  DimForm f(relations_);
  const Mask bit = Mask{1} << j;
  for (RelIndex i = 0; i < relations_; ++i) {
    std::int64_t c = 0;
    for (Mask mk : masks_[i]) c += (mk & bit) != 0 && (mk & ~y) == 0;
    f.set_coeff(i, c);
  }
  return f;
}

VertexSet RelativeView::vertices(Mask y) const {
  VertexSet out;
  for (std::size_t j = 0; j < outside_.size(); ++j) {
    if (y >> j & 1) out.push_back(outside_[j]);
  }
  return out;
}

}  // namespace rslab
