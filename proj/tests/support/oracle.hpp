#pragma once

// Brute-force reference implementations for small structures. Everything here
// works on vertex bitmasks over a plain edge list and evaluates delta in exact
// rationals; nothing calls the library's dimension or extension code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "rslab/core/embedding.hpp"
#include "rslab/core/structure.hpp"

namespace oracle {

using rslab::Rational;
using rslab::Vertex;
using Bits = std::uint64_t;

struct Edge {
  std::size_t rel;
  Bits mask;
};

/// Plain edge list with exact weights. Only valid for structures with at most
/// 64 vertices.
struct Plain {
  std::size_t n = 0;
  std::vector<Rational> alpha;
  std::vector<Edge> edges;
  /// Exact ties with differing edge counts are broken by the first relation
  /// whose count differs (fewer edges = larger).
  bool independence = false;
};

inline Plain plain(const rslab::Structure& s) {
  Plain p;
  p.n = s.size();
  p.independence = s.signature().independence_mode();
  for (const auto& r : s.signature().relations()) p.alpha.push_back(r.alpha);
  for (rslab::RelIndex i = 0; i < s.relation_count(); ++i) {
    for (rslab::EdgeId e = 0; e < s.edge_count(i); ++e) {
      Bits m = 0;
      for (Vertex v : s.edge(i, e)) m |= Bits{1} << v;
      p.edges.push_back({i, m});
    }
  }
  return p;
}

inline Bits bits_of(std::span<const Vertex> vs) {
  Bits m = 0;
  for (Vertex v : vs) m |= Bits{1} << v;
  return m;
}

inline rslab::VertexSet set_of(Bits m) {
  rslab::VertexSet out;
  for (Vertex v = 0; v < 64; ++v) {
    if (m >> v & 1) out.push_back(v);
  }
  return out;
}

inline int popcount(Bits m) { return __builtin_popcountll(m); }

inline bool subset(Bits a, Bits b) { return (a & ~b) == 0; }

/// delta of the substructure induced on mask, exactly.
inline Rational delta(const Plain& p, Bits mask) {
  Rational d = popcount(mask);
  for (const auto& e : p.edges) {
    if (subset(e.mask, mask)) d -= p.alpha[e.rel];
  }
  return d;
}

/// Calls fn(s) for every s with lo <= s <= hi (lo subset of hi).
template <class Fn>
void for_each_between(Bits lo, Bits hi, Fn&& fn) {
  const Bits free = hi & ~lo;
  Bits s = 0;
  while (true) {
    fn(lo | s);
    if (s == free) break;
    s = (s - free) & free;
  }
}

/// Sign of delta(hi) - delta(lo): -1, 0 or 1.
inline int cmp(const Plain& p, Bits hi, Bits lo) {
  const Rational d = delta(p, hi) - delta(p, lo);
  if (d != 0) return d > 0 ? 1 : -1;
  if (!p.independence) return 0;
  std::vector<long> diff(p.alpha.size(), 0);
  for (const auto& e : p.edges) diff[e.rel] += static_cast<long>(subset(e.mask, hi)) - static_cast<long>(subset(e.mask, lo));
  for (long c : diff) {
    if (c != 0) return c > 0 ? -1 : 1;
  }
  return 0;
}

inline bool strong(const Plain& p, Bits a, Bits b) {
  bool ok = true;
  for_each_between(a, b, [&](Bits b1) {
    if (b1 != a && cmp(p, b1, a) <= 0) ok = false;
  });
  return ok;
}

inline bool intrinsic(const Plain& p, Bits a, Bits b) {
  bool ok = true;
  for_each_between(a, b, [&](Bits b1) {
    if (b1 != b && cmp(p, b, b1) >= 0) ok = false;
  });
  return ok;
}

inline bool primitive(const Plain& p, Bits a, Bits b) {
  if (cmp(p, b, a) <= 0) return false;
  bool ok = true;
  for_each_between(a, b, [&](Bits a1) {
    if (a1 != a && cmp(p, b, a1) > 0) ok = false;
  });
  return ok;
}

inline Bits full(std::size_t n) { return n == 64 ? ~Bits{0} : (Bits{1} << n) - 1; }

/// cl^m(A): union over every B with A <=_i B and |B - A| < m, by enumerating
/// all such B.
inline Bits closure(const Plain& p, Bits a, std::size_t m) {
  Bits out = a;
  for_each_between(a, full(p.n), [&](Bits b) {
    if (static_cast<std::size_t>(popcount(b & ~a)) < m && intrinsic(p, a, b)) out |= b;
  });
  return out;
}

/// Every subset of at most max_size vertices (0 = any) has delta >= 0.
inline bool in_k0_plus(const Plain& p, std::size_t max_size = 0) {
  bool ok = true;
  for_each_between(0, full(p.n), [&](Bits s) {
    if ((max_size == 0 || static_cast<std::size_t>(popcount(s)) <= max_size) && cmp(p, s, 0) < 0) ok = false;
  });
  return ok;
}

/// min delta(B) over A <= B <= N with |B - A| <= cap.
inline Rational d_cap(const Plain& p, Bits a, std::size_t cap) {
  Rational best = delta(p, a);
  for_each_between(a, full(p.n), [&](Bits b) {
    if (static_cast<std::size_t>(popcount(b & ~a)) <= cap) best = std::min(best, delta(p, b));
  });
  return best;
}

inline bool has_edge(const Plain& p, std::size_t rel, Bits m) {
  return std::any_of(p.edges.begin(), p.edges.end(), [&](const Edge& e) { return e.rel == rel && e.mask == m; });
}

/// All injective maps of the source into the target (as vectors indexed by
/// source vertex) that extend `partial` and pass `ok`.
template <class Ok>
std::vector<std::vector<Vertex>> injections(std::size_t source_n, std::size_t target_n,
                                            const std::vector<Vertex>& partial, Ok&& ok) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> map(source_n, rslab::kUnassigned);
  std::vector<char> used(target_n, 0);
  for (std::size_t v = 0; v < partial.size(); ++v) {
    if (partial[v] != rslab::kUnassigned) {
      map[v] = partial[v];
      used[partial[v]] = 1;
    }
  }
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == source_n) {
      if (ok(map)) out.push_back(map);
      return;
    }
    if (map[v] != rslab::kUnassigned) {
      self(self, v + 1);
      return;
    }
    for (Vertex x = 0; x < target_n; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      map[v] = x;
      self(self, v + 1);
      map[v] = rslab::kUnassigned;
      used[x] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

inline Bits image(const std::vector<Vertex>& map, Bits m) {
  Bits out = 0;
  for (Vertex v = 0; v < map.size(); ++v) {
    if (m >> v & 1) out |= Bits{1} << map[v];
  }
  return out;
}

/// Iso-mode check straight from the definition: for every set of vertices of
/// the source and every relation, edge in source iff edge in target.
inline bool iso_map(const Plain& src, const Plain& dst, const std::vector<Vertex>& map) {
  for (const auto& e : src.edges) {
    if (!has_edge(dst, e.rel, image(map, e.mask))) return false;
  }
  Bits img = image(map, full(src.n));
  std::size_t inside = 0;
  for (const auto& e : dst.edges) inside += subset(e.mask, img);
  return inside == src.edges.size();
}

/// Hom-relative-to-base check: every source edge leaving the base is mapped
/// onto a target edge.
inline bool hom_rel_base_map(const Plain& src, const Plain& dst, const std::vector<Vertex>& map, Bits base) {
  for (const auto& e : src.edges) {
    if (subset(e.mask, base)) continue;
    if (!has_edge(dst, e.rel, image(map, e.mask))) return false;
  }
  return true;
}

}  // namespace oracle
