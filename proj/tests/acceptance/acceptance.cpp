// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number, e.g. `acceptance 3 4`.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rslab/amalgam/free_join.hpp"
#include "rslab/amalgam/generic.hpp"
#include "rslab/core/embedding.hpp"
#include "rslab/dimension/dimension.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/extcalc/copies.hpp"
#include "rslab/extcalc/extension.hpp"
#include "rslab/extcalc/k0plus.hpp"
#include "rslab/harness/experiments.hpp"
#include "rslab/sampler/sampler.hpp"
#include "support/gen.hpp"

using namespace rslab;

namespace {

using Clock = std::chrono::steady_clock;
using Bits = std::uint64_t;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string freqs(const ExperimentReport& r) {
  std::string out;
  for (const auto& row : r.rows) out += (out.empty() ? "" : ",") + fmt("%.5g", row.freq);
  return "[" + out + "]";
}

// 1. Mean extension count of point -> edge grows like n^(1 - alpha).
Outcome extension_scaling() {
  auto sig = Signature::binary("0.55", 1.0, true);
  ExtensionPattern edge(gen::complete(sig, 2), {0});
  ExperimentConfig cfg;
  cfg.n_grid = {256, 512, 1024, 2048, 4096};
  cfg.trials = 20;
  cfg.seed = 1;
  const auto start = Clock::now();
  ExperimentReport r = ext_stats(edge, cfg);
  const double secs = since(start);
  const bool ok = r.fit.valid && r.fit.slope >= 0.35 && r.fit.slope <= 0.55 && secs < 300;
  return {ok, fmt("slope %.4f in [0.35, 0.55], residual %.3g; %.1f s (limit 300 s)", r.fit.slope, r.fit.residual_rms,
                  secs)};
}

// 2. Copies of K4 at alpha = 0.7 become rarer like n^-0.2.
Outcome rare_k4() {
  auto sig = Signature::binary("0.7", 1.0, true);
  ExperimentConfig cfg;
  cfg.n_grid = {256, 512, 1024, 2048, 4096, 8192};
  cfg.trials = 18000;
  cfg.seed = 1;
  const auto start = Clock::now();
  ExperimentReport r = rare_substructure(gen::complete(sig, 4), cfg);
  const double secs = since(start);
  int inversions = 0;
  for (std::size_t k = 1; k < r.rows.size(); ++k) inversions += r.rows[k].freq > r.rows[k - 1].freq;
  const bool ok = inversions <= 1 && r.fit.valid && r.fit.slope >= -0.35 && r.fit.slope <= -0.05 && secs < 600;
  return {ok, fmt("freq %s, %d inversion(s) (at most 1), slope %.4f in [-0.35, -0.05], %zu trials per n; %.1f s "
                  "(limit 600 s)",
                  freqs(r).c_str(), inversions, r.fit.slope, cfg.trials, secs)};
}

// 3. The measure on three vertices sums to one.
Outcome normalization() {
  auto sig = Signature::binary("0.55", 1.0, true);
  const std::vector<Hyperedge> pairs{{0, 1}, {0, 2}, {1, 2}};
  double total = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<Hyperedge> chosen;
    for (unsigned j = 0; j < 3; ++j) {
      if (mask >> j & 1) chosen.push_back(pairs[j]);
    }
    total += std::exp(log_prob(gen::graph(sig, 3, chosen), 3));
  }
  const double err = std::fabs(total - 1.0);
  return {err <= 1e-10, fmt("|sum - 1| = %.3g (limit 1e-10)", err)};
}

// Exhaustive closure on integer-scaled dimensions: table[mask] = L * delta(mask).
struct ScaledTable {
  std::size_t n = 0;
  std::vector<std::int64_t> d;

  explicit ScaledTable(const Structure& s) : n(s.size()), d(Bits{1} << s.size(), 0) {
    boost::multiprecision::cpp_int l = 1;
    for (const auto& r : s.signature().relations()) l = boost::multiprecision::lcm(l, denominator(r.alpha));
    const std::int64_t scale = l.convert_to<std::int64_t>();
    std::vector<std::pair<Bits, std::int64_t>> edges;
    for (RelIndex i = 0; i < s.relation_count(); ++i) {
      const Rational w = s.signature().relation(i).alpha * scale;
      for (EdgeId e = 0; e < s.edge_count(i); ++e) {
        Bits m = 0;
        for (Vertex v : s.edge(i, e)) m |= Bits{1} << v;
        edges.emplace_back(m, numerator(w).convert_to<std::int64_t>());
      }
    }
    for (Bits mask = 0; mask < d.size(); ++mask) {
      std::int64_t x = scale * __builtin_popcountll(mask);
      for (const auto& [m, w] : edges) {
        if ((m & ~mask) == 0) x -= w;
      }
      d[mask] = x;
    }
  }

  // A <=_i B: delta(B / B1) < 0 for every A <= B1 < B.
  bool intrinsic(Bits a, Bits b) const {
    for (Bits b1 = 0; b1 < d.size(); ++b1) {
      if ((a & ~b1) == 0 && (b1 & ~b) == 0 && b1 != b && d[b] >= d[b1]) return false;
    }
    return true;
  }

  Bits closure(Bits a, std::size_t m) const {
    Bits out = a;
    for (Bits b = 0; b < d.size(); ++b) {
      if ((a & ~b) != 0 || static_cast<std::size_t>(__builtin_popcountll(b & ~a)) >= m) continue;
      if (intrinsic(a, b)) out |= b;
    }
    return out;
  }
};

// 4. The pruned closure agrees with exhaustive enumeration.
Outcome closure_oracle() {
  auto sig = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(4);
  std::size_t cases = 0, mismatches = 0, grown = 0;
  for (int t = 0; t < 200; ++t) {
    Structure s = gen::random_structure(sig, 1 + gen::below(rng, 12), {0.35, 0.2}, rng);
    ScaledTable table(s);
    const Bits all = (Bits{1} << s.size()) - 1;
    for (Bits a = 0; a <= all; ++a) {
      if (__builtin_popcountll(a) > 3) continue;
      VertexSet av;
      for (Vertex v = 0; v < s.size(); ++v) {
        if (a >> v & 1) av.push_back(v);
      }
      for (std::size_t m = 0; m <= 3; ++m) {
        Bits got = 0;
        for (Vertex v : closure(s, av, m)) got |= Bits{1} << v;
        const Bits want = table.closure(a, m);
        ++cases;
        mismatches += got != want;
        grown += want != a;
      }
    }
  }
  return {mismatches == 0, fmt("%zu mismatches in %zu (structure, A, m) cases; %zu closures larger than A", mismatches,
                               cases, grown)};
}

// Every maximal family of sets pairwise disjoint outside `base`, as sizes.
std::vector<std::size_t> maximal_family_sizes(const std::vector<Bits>& sets, Bits base) {
  std::vector<std::size_t> sizes;
  const std::size_t k = sets.size();
  std::vector<Bits> clash(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && (sets[i] & sets[j] & ~base)) clash[i] |= Bits{1} << j;
    }
  }
  for (Bits fam = 0; fam < (Bits{1} << k); ++fam) {
    bool disjoint = true, maximal = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (fam >> i & 1) {
        disjoint = disjoint && (clash[i] & fam) == 0;
      } else if ((clash[i] & fam) == 0) {
        maximal = false;
      }
    }
    if (disjoint && maximal) sizes.push_back(static_cast<std::size_t>(__builtin_popcountll(fam)));
  }
  return sizes;
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet sub_subset(gen::Rng& rng, const VertexSet& of, double p) {
  VertexSet out;
  for (Vertex v : of) {
    if (gen::coin(rng, p)) out.push_back(v);
  }
  return out;
}

struct LawResult {
  std::string name;
  std::size_t applied = 0;
  std::size_t failures = 0;
};

// Draws instances until 1000 of them satisfy the law's hypothesis (nullopt
// means it did not apply) or the draw budget runs out.
LawResult fuzz(const std::string& name, std::uint64_t seed,
               const std::function<std::optional<bool>(gen::Rng&)>& instance) {
  constexpr std::size_t kWant = 1000;
  constexpr std::size_t kMaxDraws = 200000;
  gen::Rng rng(seed);
  LawResult r{name};
  for (std::size_t draw = 0; draw < kMaxDraws && r.applied < kWant; ++draw) {
    auto verdict = instance(rng);
    if (!verdict) continue;
    ++r.applied;
    r.failures += !*verdict;
  }
  return r;
}

// 5. Laws of strong and intrinsic extensions on random small structures.
Outcome law_fuzzing() {
  auto sig = gen::binary_ternary("3/5", "4/5", true);
  auto random_m = [&](gen::Rng& rng) { return gen::random_structure(sig, 1 + gen::below(rng, 8), {0.4, 0.25}, rng); };
  auto chain = [&](gen::Rng& rng, Vertex n) {
    VertexSet c = gen::random_subset(rng, n, 0.9);
    VertexSet b = sub_subset(rng, c, 0.6);
    VertexSet a = sub_subset(rng, b, 0.6);
    return std::tuple{a, b, c};
  };
  std::vector<LawResult> laws;

  laws.push_back(fuzz("strong transitivity", 51, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure m = random_m(rng);
    auto [a, b, c] = chain(rng, m.size());
    if (!is_strong(m, a, b) || !is_strong(m, b, c)) return std::nullopt;
    return is_strong(m, a, c);
  }));

  laws.push_back(fuzz("intrinsic transitivity", 52, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure m = random_m(rng);
    auto [a, b, c] = chain(rng, m.size());
    if (a == b || b == c || !is_intrinsic(m, a, b) || !is_intrinsic(m, b, c)) return std::nullopt;
    return is_intrinsic(m, a, c);
  }));

  laws.push_back(fuzz("A4", 53, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure m = random_m(rng);
    const VertexSet all = full_set(m.size());
    VertexSet a = gen::random_subset(rng, m.size(), 0.6);
    if (a == all || !is_strong(m, a, all)) return std::nullopt;
    VertexSet n_prime = gen::random_subset(rng, m.size(), 0.6);
    return is_strong(m, intersect(a, n_prime), n_prime);
  }));

  laws.push_back(fuzz("closure in an intermediate set", 54, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure c = random_m(rng);
    VertexSet b = gen::random_subset(rng, c.size(), 0.7);
    VertexSet a = sub_subset(rng, b, 0.4);
    const std::size_t mb = gen::below(rng, 5);
    VertexSet cl_c = closure(c, a, mb);
    if (!is_subset(cl_c, b)) return std::nullopt;
    Structure sb = induced_substructure(c, b);
    VertexSet a_local;
    for (Vertex v : a) a_local.push_back(static_cast<Vertex>(std::lower_bound(b.begin(), b.end(), v) - b.begin()));
    VertexSet cl_b;
    for (Vertex v : closure(sb, a_local, mb)) cl_b.push_back(b[v]);
    return cl_b == cl_c;
  }));

  laws.push_back(fuzz("intrinsic-strong dichotomy", 55, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure c = random_m(rng);
    VertexSet a = gen::random_subset(rng, c.size(), 0.4);
    VertexSet b = intrinsic_strong_split(c, a);
    return is_subset(a, b) && is_intrinsic(c, a, b) && is_strong(c, b, full_set(c.size()));
  }));

  laws.push_back(fuzz("maximal disjoint family bound", 56, [&](gen::Rng& rng) -> std::optional<bool> {
    Structure m = gen::random_structure(sig, 4 + gen::below(rng, 5), {0.5, 0.2}, rng);
    ExtensionPattern p = gen::coin(rng, 0.5) ? ExtensionPattern(gen::graph(sig, 3, {{0, 1}, {1, 2}}), {0})
                                             : ExtensionPattern(gen::complete(sig, 3), {0, 1});
    auto embs = collect_embeddings(p.base_structure(), m);
    if (embs.empty()) return std::nullopt;
    const auto& f = embs[gen::below(rng, static_cast<Vertex>(embs.size()))];
    std::vector<Bits> sets;
    for (const auto& c : copies(m, p, f)) {
      Bits x = 0;
      for (Vertex v : c) x |= Bits{1} << v;
      sets.push_back(x);
    }
    if (sets.size() < 2 || sets.size() > 14) return std::nullopt;
    Bits base = 0;
    for (Vertex v : f) base |= Bits{1} << v;
    auto sizes = maximal_family_sizes(sets, base);
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    return *hi <= p.v() * *lo;
  }));

  bool ok = true;
  std::string detail;
  for (const auto& l : laws) {
    ok = ok && l.applied == 1000 && l.failures == 0;
    detail += (detail.empty() ? "" : "; ") + fmt("%s %zu/%zu", l.name.c_str(), l.failures, l.applied);
  }
  return {ok, "counterexamples/instances: " + detail};
}

// 6. Free amalgamation of K0+ structures over a strong base stays in K0+.
Outcome full_amalgamation() {
  auto sig = gen::binary_ternary("3/5", "4/5", true);
  gen::Rng rng(6);
  auto random_k0 = [&](Vertex n) {
    while (true) {
      Structure s = gen::random_structure(sig, n, {0.5, 0.3}, rng);
      if (in_k0_plus(s)) return s;
    }
  };
  std::size_t tried = 0, failures = 0, nonempty_base = 0;
  while (tried < 1000) {
    Structure b = random_k0(1 + gen::below(rng, 6));
    Structure c = random_k0(1 + gen::below(rng, 6));
    VertexSet a = gen::random_subset(rng, b.size(), 0.5);
    if (!is_strong(b, a, full_set(b.size()))) continue;
    auto emb = find_embedding(induced_substructure(b, a), c);
    if (!emb) continue;
    ++tried;
    nonempty_base += !a.empty();
    std::vector<Vertex> a_in_c(emb->begin(), emb->end());
    try {
      failures += !check_full_amalgamation(b, a, c, a_in_c).holds();
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {failures == 0,
          fmt("%zu failures in %zu triples (%zu with nonempty A)", failures, tried, nonempty_base)};
}

// 7. The generic chain re-validates and serves every task type.
Outcome generic_builder() {
  auto sig = Signature::binary("0.7", 1.0, true);
  GenericOptions opt;
  opt.size_bound = 48;
  opt.v_max = 2;
  opt.a_max = 1;
  opt.seed = 1;
  GenericChain chain = build_generic(sig, opt);
  ChainValidation val = validate_chain(chain, 6);
  std::set<std::size_t> served;
  for (const auto& rec : chain.tasks) served.insert(rec.type);
  const bool all_served = served.size() == chain.task_types.size() && chain.unserved_types.empty();
  std::string detail = fmt("%zu stages, final size %u, %zu/%zu task types served, %zu validation problems",
                           chain.stage_count(), chain.final.size(), served.size(), chain.task_types.size(),
                           val.problems.size());
  if (!val.ok()) detail += " (first: " + val.problems.front() + ")";
  return {val.ok() && all_served && !chain.task_types.empty(), detail};
}

// 8. Semigeneric witnesses for every examined embedding become typical.
Outcome semigeneric_trend() {
  auto sig = Signature::binary("0.55", 1.0, true);
  ExtensionPattern edge(gen::complete(sig, 2), {0});
  ExperimentConfig cfg;
  cfg.n_grid = {128, 256, 512, 1024, 2048};
  cfg.trials = 50;
  cfg.m = 2;
  cfg.seed = 1;
  const auto start = Clock::now();
  ExperimentReport r = zero_one(edge, cfg);
  const double secs = since(start);
  const double first = r.rows.front().freq, last = r.rows.back().freq;
  const bool ok = last > first && last >= 0.8 && secs < 900;
  return {ok, fmt("freq %s: top %.3g > bottom %.3g and >= 0.8; %.1f s (limit 900 s)", freqs(r).c_str(), last, first,
                  secs)};
}

// 9. Exact sign of dimension forms against a 256-bit evaluation.
Outcome dimform_soundness() {
  using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;
  std::vector<Relation> rels(3);
  const char* alphas[3] = {"0.5772156649", "0.6180339887", "0.7071067812"};
  for (int i = 0; i < 3; ++i) {
    rels[i].name = std::string("R") + char('0' + i);
    rels[i].alpha = parse_rational(alphas[i]);
    rels[i].alpha_value = rels[i].alpha.convert_to<double>();
  }
  Signature sig(rels, true);
  Big a[3];
  for (int i = 0; i < 3; ++i) a[i] = Big(numerator(rels[i].alpha)) / Big(denominator(rels[i].alpha));
  gen::Rng rng(9);
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  std::size_t sign_errors = 0, zero_errors = 0, zero_forms = 0, near = 0;
  for (int t = 0; t < 10000; ++t) {
    DimForm f(coeff(rng), {coeff(rng), coeff(rng), coeff(rng)});
    if (t % 4 == 1) {
      // Constant term that nearly cancels the rest.
      double v = 0;
      for (int i = 0; i < 3; ++i) v += static_cast<double>(f.coeff(i)) * rels[i].alpha_value;
      const std::int64_t c0 = -static_cast<std::int64_t>(std::llround(v));
      if (c0 >= -50 && c0 <= 50) {
        f.set_c0(c0);
        ++near;
      }
    }
    if (t % 100 == 0) f = DimForm(0, {0, 0, 0});
    const bool all_zero = f.c0() == 0 && f.coeff(0) == 0 && f.coeff(1) == 0 && f.coeff(2) == 0;
    zero_forms += all_zero;
    Big v = f.c0();
    for (int i = 0; i < 3; ++i) v += f.coeff(i) * a[i];
    const Sign expect = v < 0 ? Sign::negative : (v > 0 ? Sign::positive : Sign::zero);
    const Sign got = sign(f, sig);
    sign_errors += got != expect;
    zero_errors += (got == Sign::zero) != all_zero || f.is_zero() != all_zero;
  }
  return {sign_errors == 0 && zero_errors == 0,
          fmt("%zu sign disagreements, %zu zero-test errors in 10000 forms (%zu all-zero, %zu near-cancelling)",
              sign_errors, zero_errors, zero_forms, near)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "extension-count scaling", extension_scaling},
      {2, "rare substructure", rare_k4},
      {3, "normalization", normalization},
      {4, "closure oracle equivalence", closure_oracle},
      {5, "law fuzzing", law_fuzzing},
      {6, "full amalgamation", full_amalgamation},
      {7, "generic builder", generic_builder},
      {8, "semigenericity trend", semigeneric_trend},
      {9, "dimension form soundness", dimform_soundness},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
