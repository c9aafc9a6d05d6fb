#include "rslab/extcalc/k0plus.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boykov_kolmogorov_max_flow.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "rslab/dimension/dim_form.hpp"
#include "rslab/dimension/dimension.hpp"
#include "rslab/extcalc/connected_sets.hpp"

namespace rslab {

namespace {

// Repeatedly drops vertices whose weighted incidence among surviving
// vertices is at most 1.
std::vector<char> peel(const Structure& m) {
  const Signature& sig = m.signature();
  const std::size_t p = m.relation_count();
  std::vector<char> alive(m.size(), 1);
  std::vector<std::vector<std::int64_t>> deg(m.size(), std::vector<std::int64_t>(p));
  for (Vertex v = 0; v < m.size(); ++v) {
    for (RelIndex i = 0; i < p; ++i) deg[v][i] = static_cast<std::int64_t>(m.degree(i, v));
  }
  // Hyperedges stop counting once any of their vertices is peeled.
  std::vector<std::vector<char>> edge_alive(p);
  for (RelIndex i = 0; i < p; ++i) edge_alive[i].assign(m.edge_count(i), 1);

  auto light = [&](Vertex v) {
    DimForm slack(p);
    slack.set_c0(1);
    for (RelIndex i = 0; i < p; ++i) slack.set_coeff(i, -deg[v][i]);
    return sign(slack, sig) != Sign::negative;
  };
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < m.size(); ++v) {
    if (light(v)) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (RelIndex i = 0; i < p; ++i) {
      for (EdgeId e : m.incident(i, v)) {
        if (!edge_alive[i][e]) continue;
        edge_alive[i][e] = 0;
        for (Vertex w : m.edge(i, e)) {
          if (w == v) continue;
          --deg[w][i];
          if (alive[w] && light(w)) {
            alive[w] = 0;
            queue.push_back(w);
          }
        }
      }
    }
  }
  return alive;
}

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS,
    boost::property<boost::vertex_index_t, long,
                    boost::property<boost::vertex_color_t, boost::default_color_type,
                                    boost::property<boost::vertex_distance_t, long,
                                                    boost::property<boost::vertex_predecessor_t,
                                                                    FlowTraits::edge_descriptor>>>>,
    boost::property<boost::edge_capacity_t, std::int64_t,
                    boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                    boost::property<boost::edge_reverse_t, FlowTraits::edge_descriptor>>>>;

// Minimises c|S| - sum of w_e over hyperedges e inside S (among alive
// vertices) by a source-hyperedge-vertex-sink cut, with weights scaled to
// integers: c = L, w_e = L alpha_e for L the common denominator. Under
// tie-breaking a set with delta exactly 0 and some edge is already negative,
// so then c = K L - 1 and w_e = K L alpha_e with K = |alive| + 1, which makes
// the scaled minimum negative iff some nonempty S has delta(S) <= 0.
// `fits` is false when the scaled weights need more than 62 bits.
struct CutResult {
  bool fits = true;
  std::optional<VertexSet> negative;
};

CutResult min_cut_search(const Structure& m, const std::vector<char>& alive) {
  using boost::multiprecision::cpp_int;
  const Signature& sig = m.signature();
  const std::size_t p = m.relation_count();
  std::vector<Vertex> verts;
  std::vector<long> node_of(m.size(), -1);
  for (Vertex v = 0; v < m.size(); ++v) {
    if (alive[v]) {
      node_of[v] = static_cast<long>(verts.size());
      verts.push_back(v);
    }
  }
  if (verts.empty()) return {};

  cpp_int lcm = 1;
  for (RelIndex i = 0; i < p; ++i) lcm = boost::multiprecision::lcm(lcm, denominator(sig.relation(i).alpha));
  const cpp_int k = sig.independence_mode() ? cpp_int(verts.size() + 1) : cpp_int(1);
  const cpp_int scale = k * lcm;
  const cpp_int vertex_cost = sig.independence_mode() ? scale - 1 : scale;
  std::vector<cpp_int> weight(p);
  for (RelIndex i = 0; i < p; ++i) {
    const Rational& a = sig.relation(i).alpha;
    weight[i] = scale / denominator(a) * numerator(a);
  }

  struct HyperNode {
    RelIndex rel;
    EdgeId edge;
  };
  std::vector<HyperNode> hyper;
  cpp_int total = vertex_cost * verts.size();
  for (RelIndex i = 0; i < p; ++i) {
    for (EdgeId e = 0; e < m.edge_count(i); ++e) {
      auto vs = m.edge(i, e);
      if (std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return alive[v] != 0; })) {
        hyper.push_back({i, e});
        total += weight[i];
      }
    }
  }
  const cpp_int limit = cpp_int(1) << 62;
  if (total >= limit) return {false, std::nullopt};
  const std::int64_t infinite = std::int64_t{1} << 62;

  const long source = 0, sink = 1, first_vertex = 2;
  const long first_hyper = first_vertex + static_cast<long>(verts.size());
  FlowGraph g(static_cast<std::size_t>(first_hyper) + hyper.size());
  auto capacity = boost::get(boost::edge_capacity, g);
  auto reverse = boost::get(boost::edge_reverse, g);
  auto add_arc = [&](long from, long to, std::int64_t cap) {
    auto fwd = boost::add_edge(from, to, g).first;
    auto back = boost::add_edge(to, from, g).first;
    capacity[fwd] = cap;
    capacity[back] = 0;
    reverse[fwd] = back;
    reverse[back] = fwd;
  };
  const auto cost = static_cast<std::int64_t>(vertex_cost);
  for (std::size_t j = 0; j < verts.size(); ++j) add_arc(first_vertex + static_cast<long>(j), sink, cost);
  for (std::size_t h = 0; h < hyper.size(); ++h) {
    const long node = first_hyper + static_cast<long>(h);
    add_arc(source, node, static_cast<std::int64_t>(weight[hyper[h].rel]));
    for (Vertex v : m.edge(hyper[h].rel, hyper[h].edge)) add_arc(node, first_vertex + node_of[v], infinite);
  }
  std::int64_t hyper_total = 0;
  for (const auto& h : hyper) hyper_total += static_cast<std::int64_t>(weight[h.rel]);

  const std::int64_t flow = boost::boykov_kolmogorov_max_flow(g, source, sink);
  // min over S of (c|S| - w(S)) equals flow - sum of all w_e.
  if (flow >= hyper_total) return {};
  auto color = boost::get(boost::vertex_color, g);
  VertexSet out;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (color[first_vertex + static_cast<long>(j)] == boost::black_color) out.push_back(verts[j]);
  }
  return {true, std::move(out)};
}

}  // namespace

std::optional<VertexSet> find_negative_subset(const Structure& m, std::size_t max_size) {
  const Signature& sig = m.signature();
  std::vector<char> alive = peel(m);
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < m.size(); ++v) {
    if (alive[v]) roots.push_back(v);
  }
  if (max_size == 0 || max_size >= roots.size()) {
    CutResult cut = min_cut_search(m, alive);
    if (cut.fits && (!cut.negative || sign(delta_of(m, *cut.negative), sig) == Sign::negative)) return cut.negative;
  }
  const std::size_t cap = max_size == 0 ? roots.size() : std::min(max_size, roots.size());
  std::optional<VertexSet> found;
  VertexSet s;
  for_each_connected_set(
      m, roots, [&](Vertex v) { return alive[v] != 0; }, [](Vertex v) { return std::uint64_t{v}; }, cap,
      [&](std::span<const Vertex> cur) {
        s.assign(cur.begin(), cur.end());
        std::sort(s.begin(), s.end());
        if (sign(delta_of(m, s), sig) == Sign::negative) {
          found = s;
          return false;
        }
        return true;
      });
  return found;
}

bool in_k0_plus(const Structure& m, std::size_t max_size) { return !find_negative_subset(m, max_size); }

}  // namespace rslab
