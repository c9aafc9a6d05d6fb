#include "rslab/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "rslab/core/embedding.hpp"
#include "rslab/core/error.hpp"
#include "rslab/core/serialize.hpp"
#include "rslab/core/type_enum.hpp"
#include "rslab/amalgam/semigeneric.hpp"
#include "rslab/dimension/dimension.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/sampler/rng.hpp"
#include "rslab/sampler/sampler.hpp"

namespace rslab {

std::uint64_t sample_seed(std::uint64_t seed, Vertex n) { return derive_seed(seed, n); }

namespace {

using Clock = std::chrono::steady_clock;

void check_config(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty()) fail(ErrorCode::invalid_argument, "n-grid is empty");
  for (Vertex n : cfg.n_grid) {
    if (n < 1) fail(ErrorCode::invalid_argument, "grid values must be at least 1");
  }
  if (cfg.trials == 0) fail(ErrorCode::invalid_argument, "trials must be positive");
  if (cfg.embedding_cap == 0) fail(ErrorCode::invalid_argument, "embedding cap must be positive");
}

nlohmann::ordered_json config_echo(const ExperimentConfig& cfg, const Signature& sig) {
  nlohmann::ordered_json j;
  j["signature"] = signature_to_json(sig);
  j["n_grid"] = cfg.n_grid;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["embedding_cap"] = cfg.embedding_cap;
  return j;
}

// Stream for per-trial choices other than the sample itself.
Rng aux_stream(std::uint64_t seed, Vertex n, std::size_t trial) {
  return make_stream(derive_seed(sample_seed(seed, n), 0x5eed), trial);
}

Structure draw(const SignaturePtr& sig, Vertex n, std::uint64_t seed, std::size_t trial) {
  return sample({n, sig, sample_seed(seed, n), trial});
}

struct Moments {
  double mean = 0, stddev = 0, min = 0, max = 0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  m.min = m.max = v[0];
  double s = 0;
  for (double x : v) {
    s += x;
    m.min = std::min(m.min, x);
    m.max = std::max(m.max, x);
  }
  m.mean = s / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return m;
}

// Injections of {0..a-1} into {0..n-1}: all of them in lexicographic order
// when there are at most `cap`, otherwise `cap` distinct uniform ones.
std::vector<VertexMap> injections(Vertex n, std::size_t a, std::size_t cap, Rng& rng, bool& capped) {
  long double total = 1;
  for (std::size_t j = 0; j < a; ++j) total *= static_cast<long double>(n) - static_cast<long double>(j);
  std::vector<VertexMap> out;
  if (a > n) {
    capped = false;
    return out;
  }
  if (total <= static_cast<long double>(cap)) {
    capped = false;
    VertexMap cur;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self) -> void {
      if (cur.size() == a) {
        out.push_back(cur);
        return;
      }
      for (Vertex v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        cur.push_back(v);
        self(self);
        cur.pop_back();
        used[v] = 0;
      }
    };
    rec(rec);
    return out;
  }
  capped = true;
  std::set<VertexMap> seen;
  while (out.size() < cap) {
    VertexMap f;
    while (f.size() < a) {
      Vertex v = static_cast<Vertex>(uniform_below(rng, n));
      if (std::find(f.begin(), f.end(), v) == f.end()) f.push_back(v);
    }
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  return out;
}

// Uniform sample of `cap` items without replacement, kept in original order.
template <class T>
std::vector<T> subsample(std::vector<T> items, std::size_t cap, Rng& rng, bool& capped) {
  capped = items.size() > cap;
  if (!capped) return items;
  std::vector<std::size_t> idx(items.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < cap; ++i) std::swap(idx[i], idx[i + uniform_below(rng, idx.size() - i)]);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  out.reserve(cap);
  for (std::size_t i : idx) out.push_back(std::move(items[i]));
  return out;
}

std::vector<Vertex> partial_for(const ExtensionPattern& pat, std::span<const Vertex> f) {
  std::vector<Vertex> partial(pat.whole().size(), kUnassigned);
  for (std::size_t j = 0; j < f.size(); ++j) partial[pat.base()[j]] = f[j];
  return partial;
}

}  // namespace

ExperimentReport ext_stats(const ExtensionPattern& pat, const ExperimentConfig& cfg) {
  check_config(cfg);
  if (!is_strong(pat)) fail(ErrorCode::precondition, "pattern base is not strong");
  const SignaturePtr& sig = pat.whole().signature_ptr();
  const double delta_value = pat.delta_rel().approx(*sig);
  const double v = static_cast<double>(pat.v());
  const EmbeddingSearch search(pat.whole(), EmbedMode::homomorphism_rel_base, pat.base(), pat.base());

  ExperimentReport rep;
  rep.name = "ext_stats";
  rep.config = config_echo(cfg, *sig);
  rep.config["pattern"] = pattern_to_json(pat);
  rep.config["c1"] = cfg.c1;
  rep.slope_of = "mean";

  struct Outcome {
    double mean = 0, min = 0, max = 0;
    bool all_y = false;
    bool capped = false;
  };
  for (Vertex n : cfg.n_grid) {
    const auto start = Clock::now();
    const double nd = static_cast<double>(n);
    const double upper = cfg.c1 * std::pow(nd, delta_value);
    const double lower = std::pow(nd, delta_value) * std::pow(std::log(nd), -(v + 1));
    auto outcomes = run_trials<Outcome>(cfg.trials, cfg.threads, [&](std::size_t t) {
      Outcome o;
      Structure g = draw(sig, n, cfg.seed, t);
      Rng rng = aux_stream(cfg.seed, n, t);
      std::vector<VertexMap> fs = injections(n, pat.base().size(), cfg.embedding_cap, rng, o.capped);
      if (fs.empty()) return o;
      o.all_y = true;
      o.min = std::numeric_limits<double>::infinity();
      double sum = 0;
      for (const VertexMap& f : fs) {
        const double count = static_cast<double>(search.run(g, partial_for(pat, f), [](std::span<const Vertex>) { return true; }));
        sum += count;
        o.min = std::min(o.min, count);
        o.max = std::max(o.max, count);
        o.all_y = o.all_y && lower < count && count < upper;
      }
      o.mean = sum / static_cast<double>(fs.size());
      return o;
    });
    ReportRow row;
    row.n = n;
    row.trials = cfg.trials;
    std::vector<double> means;
    std::size_t hits = 0;
    row.min = std::numeric_limits<double>::infinity();
    row.max = 0;
    for (const auto& o : outcomes) {
      means.push_back(o.mean);
      row.min = std::min(row.min, o.min);
      row.max = std::max(row.max, o.max);
      hits += o.all_y;
      row.capped = row.capped || o.capped;
    }
    Moments mo = moments(means);
    row.mean = mo.mean;
    row.stddev = mo.stddev;
    row.freq = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    rep.capped = rep.capped || row.capped;
    rep.rows.push_back(row);
  }
  rep.refit();
  rep.extra["delta"] = to_json(pat.delta_rel(), *sig);
  rep.extra["delta_text"] = to_string(pat.delta_rel(), *sig);
  rep.extra["expected_slope"] = delta_value;
  rep.extra["v"] = pat.v();
  return rep;
}

ExperimentReport rare_substructure(const Structure& b, const ExperimentConfig& cfg) {
  check_config(cfg);
  const SignaturePtr& sig = b.signature_ptr();
  const DimForm d = delta(b);
  if (sign(d, *sig) != Sign::negative) fail(ErrorCode::precondition, "delta(B) must be negative");
  const EmbeddingSearch search(b, EmbedMode::isomorphism, {}, {}, /*distinct_images=*/true);

  ExperimentReport rep;
  rep.name = "rare_substructure";
  rep.config = config_echo(cfg, *sig);
  rep.config["structure"] = structure_to_json(b);
  rep.slope_of = "freq";
  for (Vertex n : cfg.n_grid) {
    const auto start = Clock::now();
    auto found = run_trials<char>(cfg.trials, cfg.threads, [&](std::size_t t) -> char {
      Structure g = draw(sig, n, cfg.seed, t);
      std::vector<Vertex> partial(b.size(), kUnassigned);
      return search.run(g, partial, [](std::span<const Vertex>) { return false; }) > 0;
    });
    std::vector<double> ind(found.begin(), found.end());
    Moments mo = moments(ind);
    ReportRow row;
    row.n = n;
    row.trials = cfg.trials;
    row.mean = mo.mean;
    row.stddev = mo.stddev;
    row.min = mo.min;
    row.max = mo.max;
    row.freq = mo.mean;
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    rep.rows.push_back(row);
  }
  rep.refit();
  rep.extra["delta"] = to_json(d, *sig);
  rep.extra["delta_text"] = to_string(d, *sig);
  rep.extra["expected_slope"] = d.approx(*sig);
  return rep;
}

ExperimentReport empty_closure(const SignaturePtr& sig, const ExperimentConfig& cfg) {
  check_config(cfg);
  if (!sig) fail(ErrorCode::invalid_argument, "experiment needs a signature");
  // Structures with fewer than m vertices and negative delta.
  std::vector<Structure> negative;
  for (Vertex s = 1; s < cfg.m; ++s) {
    for (Structure& t : enumerate_types(sig, s)) {
      if (sign(delta(t), *sig) == Sign::negative) negative.push_back(std::move(t));
    }
  }
  std::vector<EmbeddingSearch> searches;
  for (const Structure& t : negative) {
    searches.emplace_back(t, EmbedMode::homomorphism_rel_base, VertexSet{}, VertexSet{});
  }

  ExperimentReport rep;
  rep.name = "empty_closure";
  rep.config = config_echo(cfg, *sig);
  rep.config["m"] = cfg.m;
  rep.slope_of = "freq";
  std::size_t disagreements = 0;
  struct Outcome {
    bool empty = false;
    bool no_negative = false;
  };
  for (Vertex n : cfg.n_grid) {
    const auto start = Clock::now();
    auto outcomes = run_trials<Outcome>(cfg.trials, cfg.threads, [&](std::size_t t) {
      Structure g = draw(sig, n, cfg.seed, t);
      Outcome o;
      o.empty = closure(g, {}, cfg.m).empty();
      o.no_negative = true;
      for (std::size_t k = 0; k < negative.size() && o.no_negative; ++k) {
        std::vector<Vertex> partial(negative[k].size(), kUnassigned);
        if (negative[k].size() <= n && searches[k].run(g, partial, [](std::span<const Vertex>) { return false; }) > 0) {
          o.no_negative = false;
        }
      }
      return o;
    });
    std::vector<double> ind;
    for (const auto& o : outcomes) {
      ind.push_back(o.empty ? 1.0 : 0.0);
      disagreements += o.empty != o.no_negative;
    }
    Moments mo = moments(ind);
    ReportRow row;
    row.n = n;
    row.trials = cfg.trials;
    row.mean = mo.mean;
    row.stddev = mo.stddev;
    row.min = mo.min;
    row.max = mo.max;
    row.freq = mo.mean;
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    rep.rows.push_back(row);
  }
  rep.refit();
  rep.extra["negative_types"] = negative.size();
  rep.extra["disagreements"] = disagreements;
  return rep;
}

ExperimentReport zero_one(const ExtensionPattern& pat, const ExperimentConfig& cfg) {
  check_config(cfg);
  if (!is_strong(pat)) fail(ErrorCode::precondition, "pattern base is not strong");
  const SignaturePtr& sig = pat.whole().signature_ptr();
  const Structure base = pat.base_structure();

  ExperimentReport rep;
  rep.name = "zero_one";
  rep.config = config_echo(cfg, *sig);
  rep.config["pattern"] = pattern_to_json(pat);
  rep.config["m"] = cfg.m;
  rep.slope_of = "freq";
  struct Outcome {
    double share = 0;
    bool all = false;
    bool capped = false;
  };
  for (Vertex n : cfg.n_grid) {
    const auto start = Clock::now();
    auto outcomes = run_trials<Outcome>(cfg.trials, cfg.threads, [&](std::size_t t) {
      Outcome o;
      if (n < pat.whole().size()) return o;
      Structure g = draw(sig, n, cfg.seed, t);
      Rng rng = aux_stream(cfg.seed, n, t);
      std::vector<VertexMap> fs = subsample(collect_embeddings(base, g), cfg.embedding_cap, rng, o.capped);
      ClosureEngine engine(g, cfg.m);
      std::size_t ok = 0;
      for (const VertexMap& f : fs) ok += semigeneric_witness(engine, pat, f).has_value();
      o.all = ok == fs.size();
      o.share = fs.empty() ? 1.0 : static_cast<double>(ok) / static_cast<double>(fs.size());
      return o;
    });
    std::vector<double> shares;
    std::size_t hits = 0;
    ReportRow row;
    for (const auto& o : outcomes) {
      shares.push_back(o.share);
      hits += o.all;
      row.capped = row.capped || o.capped;
    }
    Moments mo = moments(shares);
    row.n = n;
    row.trials = cfg.trials;
    row.mean = mo.mean;
    row.stddev = mo.stddev;
    row.min = mo.min;
    row.max = mo.max;
    row.freq = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    rep.capped = rep.capped || row.capped;
    rep.rows.push_back(row);
  }
  rep.refit();
  return rep;
}

}  // namespace rslab
