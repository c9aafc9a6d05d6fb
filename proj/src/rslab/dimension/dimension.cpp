#include "rslab/dimension/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

void check_subset(const Structure& m, std::span<const Vertex> s) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] >= m.size()) fail(ErrorCode::invalid_argument, "vertex " + std::to_string(s[j]) + " out of range");
    if (j > 0 && s[j - 1] >= s[j]) fail(ErrorCode::invalid_argument, "vertex subset must be sorted and distinct");
  }
}

// Calls fn(subset) for every subset of `pool` of size <= cap, sizes ascending,
// each size in lexicographic order.
template <class Fn>
void for_each_small_subset(const VertexSet& pool, std::size_t cap, Fn&& fn) {
  std::vector<Vertex> cur;
  for (std::size_t k = 0; k <= std::min(cap, pool.size()); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      cur.clear();
      for (auto i : idx) cur.push_back(pool[i]);
      fn(cur);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

DimForm delta(const Structure& a) {
  DimForm f(a.relation_count());
  f.set_c0(a.size());
  for (RelIndex i = 0; i < a.relation_count(); ++i) f.set_coeff(i, -static_cast<std::int64_t>(a.edge_count(i)));
  return f;
}

DimForm delta_of(const Structure& m, std::span<const Vertex> subset) {
  check_subset(m, subset);
  DimForm f(m.relation_count());
  f.set_c0(static_cast<std::int64_t>(subset.size()));
  for (RelIndex i = 0; i < m.relation_count(); ++i) {
    f.set_coeff(i, -static_cast<std::int64_t>(count_edges_within(m, i, subset)));
  }
  return f;
}

DimForm delta_rel(const Structure& b, std::span<const Vertex> base) {
  check_subset(b, base);
  return delta(b) - delta_of(b, base);
}

DimForm e_rel(const Structure& b, std::span<const Vertex> base) {
  check_subset(b, base);
  DimForm f(b.relation_count());
  for (RelIndex i = 0; i < b.relation_count(); ++i) {
    f.set_coeff(i, static_cast<std::int64_t>(b.edge_count(i) - count_edges_within(b, i, base)));
  }
  return f;
}

double gamma_prod(const Structure& b, std::span<const Vertex> base) {
  DimForm e = e_rel(b, base);
  double g = 1.0;
  for (RelIndex i = 0; i < b.relation_count(); ++i) {
    g *= std::pow(b.signature().relation(i).gamma, static_cast<double>(e.coeff(i)));
  }
  return g;
}

DimForm d_cap(const Structure& n, std::span<const Vertex> a, std::size_t cap) {
  check_subset(n, a);
  const Signature& sig = n.signature();
  VertexSet rest = set_difference(full_set(n.size()), a);
  DimForm best;
  bool have = false;
  for_each_small_subset(rest, cap, [&](const std::vector<Vertex>& extra) {
    VertexSet b = set_union(a, extra);
    DimForm d = delta_of(n, b);
    if (!have || less(d, best, sig)) {
      best = d;
      have = true;
    }
  });
  return best;
}

}  // namespace rslab
