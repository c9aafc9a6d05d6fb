#include "rslab/harness/qe_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rslab/core/embedding.hpp"
#include "rslab/core/error.hpp"
#include "rslab/core/serialize.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/sampler/rng.hpp"

namespace rslab {

namespace {

constexpr std::size_t kMaxTuple = 4;  // tuple length + depth
constexpr std::uint64_t kInternedBase = std::uint64_t{1} << 62;

// Equality pattern and, per relation, membership of every position subset
// of the relation's arity, packed into bits.
std::uint64_t atomic_code(const Structure& g, std::span<const Vertex> t) {
  std::uint64_t code = t.size();
  unsigned bit = 3;
  auto put = [&](bool b) {
    if (b) code |= std::uint64_t{1} << bit;
    ++bit;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) put(t[i] == t[j]);
  }
  std::vector<Vertex> e;
  for (RelIndex r = 0; r < g.relation_count(); ++r) {
    const std::size_t k = g.arity(r);
    if (k > t.size()) continue;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      e.clear();
      for (auto i : idx) e.push_back(t[i]);
      std::sort(e.begin(), e.end());
      bool distinct = std::adjacent_find(e.begin(), e.end()) == e.end();
      put(distinct && g.has_edge(r, e));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == t.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (bit > 62) fail(ErrorCode::limit, "atomic diagram too large to encode");
  return code;
}

}  // namespace

std::uint64_t TupleTypeOracle::type(const Structure& g, std::vector<Vertex>& tuple, std::size_t depth) {
  if (depth == 0) return atomic_code(g, tuple);
  std::vector<std::uint64_t> children;
  children.reserve(g.size());
  for (Vertex b = 0; b < g.size(); ++b) {
    tuple.push_back(b);
    children.push_back(type(g, tuple, depth - 1));
    tuple.pop_back();
  }
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  children.push_back(depth);
  children.push_back(tuple.size());
  auto [it, inserted] = ids_.try_emplace(std::move(children), kInternedBase + ids_.size());
  return it->second;
}

ExperimentReport qe_probe(const Structure& g1, const Structure& g2, const QeProbeConfig& cfg) {
  if (cfg.depth > 2) fail(ErrorCode::invalid_argument, "depth must be at most 2");
  if (cfg.tuple_length < 1 || cfg.tuple_length > 2) fail(ErrorCode::invalid_argument, "tuple length must be 1 or 2");
  if (cfg.tuple_length + cfg.depth > kMaxTuple) fail(ErrorCode::invalid_argument, "tuple length plus depth too large");
  if (cfg.ells.empty()) fail(ErrorCode::invalid_argument, "no ell values given");
  if (g1.relation_count() != g2.relation_count()) fail(ErrorCode::invalid_argument, "structures use different signatures");
  if (g1.size() < cfg.tuple_length || g2.size() < cfg.tuple_length) {
    fail(ErrorCode::invalid_argument, "structures smaller than the tuple length");
  }
  if (cfg.same_tuple && g1.size() != g2.size()) fail(ErrorCode::invalid_argument, "same-tuple pairing needs equal sizes");

  ExperimentReport rep;
  rep.name = "qe_probe";
  rep.config["signature"] = signature_to_json(g1.signature());
  rep.config["sizes"] = {g1.size(), g2.size()};
  rep.config["ells"] = cfg.ells;
  rep.config["depth"] = cfg.depth;
  rep.config["tuple_length"] = cfg.tuple_length;
  rep.config["pairs"] = cfg.pairs;
  rep.config["seed"] = cfg.seed;
  rep.config["same_tuple"] = cfg.same_tuple;
  rep.slope_of = "freq";

  TupleTypeOracle oracle;
  const std::size_t attempts = cfg.max_attempts ? cfg.max_attempts : 50 * cfg.pairs;
  auto agreements = nlohmann::ordered_json::array();
  for (std::size_t ell : cfg.ells) {
    Rng rng = make_stream(cfg.seed, ell);
    ClosureEngine e1(g1, ell), e2(g2, ell);
    auto draw = [&](const Structure& g) {
      std::vector<Vertex> t;
      while (t.size() < cfg.tuple_length) {
        Vertex v = static_cast<Vertex>(uniform_below(rng, g.size()));
        if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
      }
      return t;
    };
    std::size_t found = 0, agree = 0;
    for (std::size_t a = 0; a < attempts && found < cfg.pairs; ++a) {
      std::vector<Vertex> t1 = draw(g1);
      std::vector<Vertex> t2 = cfg.same_tuple ? t1 : draw(g2);
      VertexSet c1 = e1.closure(make_vertex_set(t1));
      VertexSet c2 = e2.closure(make_vertex_set(t2));
      if (c1.size() != c2.size()) continue;
      Structure s1 = induced_substructure(g1, c1), s2 = induced_substructure(g2, c2);
      std::vector<Vertex> partial(c1.size(), kUnassigned);
      for (std::size_t j = 0; j < t1.size(); ++j) {
        auto p1 = std::lower_bound(c1.begin(), c1.end(), t1[j]) - c1.begin();
        auto p2 = std::lower_bound(c2.begin(), c2.end(), t2[j]) - c2.begin();
        partial[static_cast<std::size_t>(p1)] = static_cast<Vertex>(p2);
      }
      if (!find_embedding(s1, s2, partial)) continue;
      ++found;
      agree += oracle.type(g1, t1, cfg.depth) == oracle.type(g2, t2, cfg.depth);
    }
    ReportRow row;
    row.n = ell;
    row.trials = found;
    if (found == 0) {
      rep.inconclusive = true;
      row.mean = row.freq = row.min = row.max = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.mean = row.freq = static_cast<double>(agree) / static_cast<double>(found);
      row.min = agree == found ? 1.0 : 0.0;
      row.max = agree > 0 ? 1.0 : 0.0;
    }
    row.stddev = 0;
    rep.rows.push_back(row);
    agreements.push_back({{"ell", ell}, {"pairs", found}, {"agreeing", agree}});
  }
  rep.extra["agreement"] = agreements;
  return rep;
}

}  // namespace rslab
