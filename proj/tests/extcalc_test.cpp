#include <doctest.h>

#include <set>

#include "rslab/core/error.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/extcalc/copies.hpp"
#include "rslab/extcalc/extension.hpp"
#include "rslab/extcalc/k0plus.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace rslab;
using oracle::Bits;

namespace {

SignaturePtr sig_r() { return gen::binary("0.7"); }

ExtensionPattern pat(const Structure& s, VertexSet base) { return ExtensionPattern(s, std::move(base)); }

// Random B within M, then a random A within B.
std::pair<VertexSet, VertexSet> nested_pair(gen::Rng& rng, Vertex n) {
  VertexSet b = gen::random_subset(rng, n, 0.7);
  VertexSet a;
  for (Vertex v : b) {
    if (gen::coin(rng, 0.4)) a.push_back(v);
  }
  return {a, b};
}

// Copies of pat.whole over f, by trying every injection.
std::set<Bits> oracle_copies(const Structure& m, const ExtensionPattern& p, const std::vector<Vertex>& f) {
  auto pm = oracle::plain(m);
  auto pw = oracle::plain(p.whole());
  std::vector<Vertex> partial(p.whole().size(), kUnassigned);
  for (std::size_t j = 0; j < f.size(); ++j) partial[p.base()[j]] = f[j];
  std::set<Bits> out;
  for (const auto& map : oracle::injections(pw.n, pm.n, partial,
                                            [&](const std::vector<Vertex>& mp) { return oracle::iso_map(pw, pm, mp); })) {
    out.insert(oracle::image(map, oracle::full(pw.n)));
  }
  return out;
}

// Every maximal family of sets pairwise disjoint outside `base`, as sizes.
std::vector<std::size_t> maximal_family_sizes(const std::vector<Bits>& sets, Bits base) {
  std::vector<std::size_t> sizes;
  const std::size_t k = sets.size();
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << k); ++fam) {
    bool disjoint = true;
    for (std::size_t i = 0; i < k && disjoint; ++i) {
      for (std::size_t j = i + 1; j < k && disjoint; ++j) {
        if ((fam >> i & 1) && (fam >> j & 1) && (sets[i] & sets[j] & ~base)) disjoint = false;
      }
    }
    if (!disjoint) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < k && maximal; ++i) {
      if (fam >> i & 1) continue;
      bool fits = true;
      for (std::size_t j = 0; j < k; ++j) {
        if ((fam >> j & 1) && (sets[i] & sets[j] & ~base)) fits = false;
      }
      if (fits) maximal = false;
    }
    if (maximal) sizes.push_back(static_cast<std::size_t>(__builtin_popcountll(fam)));
  }
  return sizes;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("extension relation examples") {
  auto sig = sig_r();
  Structure edge = gen::complete(sig, 2);
  Structure cherry = gen::graph(sig, 3, {{0, 2}, {1, 2}});
  Structure fork = gen::graph(sig, 3, {{0, 1}, {0, 2}});

  CHECK(is_strong(pat(edge, {0, 1})));
  CHECK(is_strong(pat(edge, {0})));
  CHECK_FALSE(is_strong(pat(cherry, {0, 1})));

  CHECK(is_intrinsic(pat(edge, {0, 1})));
  CHECK(is_intrinsic(pat(cherry, {0, 1})));
  CHECK_FALSE(is_intrinsic(pat(edge, {0})));

  CHECK(is_primitive(pat(edge, {0})));
  CHECK_FALSE(is_primitive(pat(edge, {0, 1})));
  CHECK_FALSE(is_primitive(pat(fork, {0})));
}

TEST_CASE("extension relations refuse more than 16 new vertices") {
  auto sig = sig_r();
  Structure big(sig, 17);
  CHECK(code_of([&] { is_strong(pat(big, {})); }) == ErrorCode::limit);
  CHECK(code_of([&] { is_intrinsic(pat(big, {})); }) == ErrorCode::limit);
  CHECK(is_strong(pat(big, {0})));
}

TEST_CASE("extension relations match the exhaustive oracle") {
  auto sig = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(11);
  for (int t = 0; t < 400; ++t) {
    Structure m = gen::random_structure(sig, 1 + gen::below(rng, 7), {0.5, 0.3}, rng);
    auto p = oracle::plain(m);
    auto [a, b] = nested_pair(rng, m.size());
    const Bits am = oracle::bits_of(a), bm = oracle::bits_of(b);
    CHECK(is_strong(m, a, b) == oracle::strong(p, am, bm));
    CHECK(is_intrinsic(m, a, b) == oracle::intrinsic(p, am, bm));
    CHECK(is_primitive(m, a, b) == oracle::primitive(p, am, bm));
  }
}

TEST_CASE("K0+ membership") {
  auto sig = sig_r();
  CHECK_FALSE(in_k0_plus(gen::complete(sig, 4)));
  CHECK(in_k0_plus(gen::complete(sig, 3)));
  CHECK(in_k0_plus(Structure(sig, 0)));

  gen::Rng rng(12);
  int negatives = 0;
  for (bool independence : {false, true}) {
    auto sig2 = gen::binary_ternary("3/5", "4/5", independence);
    for (int t = 0; t < 300; ++t) {
      Structure m = gen::random_structure(sig2, 1 + gen::below(rng, 10), {0.45, 0.3}, rng);
      auto p = oracle::plain(m);
      const bool expect = oracle::in_k0_plus(p);
      CHECK(in_k0_plus(m) == expect);
      auto found = find_negative_subset(m);
      CHECK(found.has_value() == !expect);
      if (found) {
        ++negatives;
        CHECK(oracle::cmp(p, oracle::bits_of(*found), 0) < 0);
      }
      const std::size_t cap = 1 + gen::below(rng, 4);
      auto capped = find_negative_subset(m, cap);
      CHECK(capped.has_value() == !oracle::in_k0_plus(p, cap));
      if (capped) CHECK(capped->size() <= cap);
    }
  }
  CHECK(negatives > 40);
}

TEST_CASE("closure examples") {
  auto sig = sig_r();
  Structure tri = gen::complete(sig, 3);
  CHECK(closure(tri, std::vector<Vertex>{0, 2}, 0) == VertexSet{0, 2});
  CHECK(closure(tri, std::vector<Vertex>{0, 2}, 1) == VertexSet{0, 2});
  CHECK(closure(tri, std::vector<Vertex>{0, 2}, 2) == VertexSet{0, 1, 2});
  Structure path = gen::graph(sig, 3, {{0, 1}, {1, 2}});
  CHECK(closure(path, std::vector<Vertex>{0}, 3) == VertexSet{0});
}

TEST_CASE("closure matches the exhaustive oracle") {
  auto sig = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    Structure m = gen::random_structure(sig, 1 + gen::below(rng, 10), {0.45, 0.3}, rng);
    auto p = oracle::plain(m);
    VertexSet a = gen::random_subset(rng, m.size(), 0.3);
    ClosureEngine engine(m, 1 + gen::below(rng, 5));
    VertexSet got = engine.closure(a);
    CHECK(oracle::bits_of(got) == oracle::closure(p, oracle::bits_of(a), engine.m_bound()));
    // A second query on the same engine reuses cached state.
    VertexSet a2 = gen::random_subset(rng, m.size(), 0.3);
    CHECK(oracle::bits_of(engine.closure(a2)) == oracle::closure(p, oracle::bits_of(a2), engine.m_bound()));
  }
}

TEST_CASE("closure is monotone in m and composes within the additive bound") {
  auto sig = sig_r();
  gen::Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    Structure m = gen::random_structure(sig, 2 + gen::below(rng, 10), {0.4}, rng);
    VertexSet a = gen::random_subset(rng, m.size(), 0.3);
    VertexSet prev = a;
    for (std::size_t k = 0; k <= 5; ++k) {
      VertexSet c = closure(m, a, k);
      CHECK(is_subset(a, c));
      CHECK(is_subset(prev, c));
      prev = c;
    }
    const std::size_t mm = gen::below(rng, 4), nn = gen::below(rng, 4);
    VertexSet inner = closure(m, a, nn);
    VertexSet outer = closure(m, inner, mm);
    const std::size_t p = mm + (inner.size() - a.size()) + nn;
    CHECK(is_subset(outer, closure(m, a, p)));
  }
}

TEST_CASE("closure inside an intermediate set that already contains it") {
  auto sig = sig_r();
  gen::Rng rng(15);
  int applicable = 0;
  for (int t = 0; t < 400; ++t) {
    Structure c = gen::random_structure(sig, 2 + gen::below(rng, 8), {0.45}, rng);
    auto [a, b] = nested_pair(rng, c.size());
    const std::size_t mb = gen::below(rng, 5);
    VertexSet cl_c = closure(c, a, mb);
    if (!is_subset(cl_c, b)) continue;
    ++applicable;
    Structure sb = induced_substructure(c, b);
    VertexSet a_local;
    for (Vertex v : a) a_local.push_back(static_cast<Vertex>(std::lower_bound(b.begin(), b.end(), v) - b.begin()));
    VertexSet cl_b;
    for (Vertex v : closure(sb, a_local, mb)) cl_b.push_back(b[v]);
    CHECK(cl_b == cl_c);
  }
  CHECK(applicable > 50);
}

TEST_CASE("strong and intrinsic are transitive; strong restricts to subsets") {
  auto sig = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(16);
  int strong_chains = 0, intrinsic_chains = 0;
  for (int t = 0; t < 1500; ++t) {
    Structure m = gen::random_structure(sig, 1 + gen::below(rng, 7), {0.4, 0.25}, rng);
    VertexSet c = gen::random_subset(rng, m.size(), 0.9);
    VertexSet b, a;
    for (Vertex v : c) {
      if (gen::coin(rng, 0.6)) b.push_back(v);
    }
    for (Vertex v : b) {
      if (gen::coin(rng, 0.6)) a.push_back(v);
    }
    if (is_strong(m, a, b) && is_strong(m, b, c)) {
      ++strong_chains;
      CHECK(is_strong(m, a, c));
    }
    if (is_intrinsic(m, a, b) && is_intrinsic(m, b, c)) {
      ++intrinsic_chains;
      CHECK(is_intrinsic(m, a, c));
    }
    // M <=_s N and N' within N imply M n N' <=_s N'.
    const VertexSet n_all = full_set(m.size());
    if (is_strong(m, a, n_all)) {
      VertexSet n_prime = gen::random_subset(rng, m.size(), 0.6);
      VertexSet meet;
      std::set_intersection(a.begin(), a.end(), n_prime.begin(), n_prime.end(), std::back_inserter(meet));
      CHECK(is_strong(m, meet, n_prime));
    }
  }
  CHECK(strong_chains > 100);
  CHECK(intrinsic_chains > 100);
}

TEST_CASE("intrinsic-strong split") {
  // With exact ties the smallest strong superset can fail to be intrinsic:
  // delta(C/{2}) = 3 - 2(3/5) - 4/5 - 1 = 0, so only C is strong over {2} in C.
  auto tied = gen::binary_ternary("3/5", "4/5");
  std::vector<std::vector<Hyperedge>> e{{{0, 1}, {0, 2}}, {{0, 1, 2}}};
  Structure c(tied, 3, e);
  CHECK(intrinsic_strong_split(c, std::vector<Vertex>{2}) == VertexSet{0, 1, 2});
  CHECK_FALSE(is_intrinsic(c, std::vector<Vertex>{2}, VertexSet{0, 1, 2}));

  // Tie-breaking makes every nonzero relative dimension strictly signed.
  auto sig = gen::binary_ternary("3/5", "4/5", true);
  gen::Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    Structure m = gen::random_structure(sig, 1 + gen::below(rng, 8), {0.5, 0.3}, rng);
    auto p = oracle::plain(m);
    const Bits all = oracle::full(p.n);
    VertexSet a = gen::random_subset(rng, m.size(), 0.3);
    const Bits am = oracle::bits_of(a);
    VertexSet b = intrinsic_strong_split(m, a);
    const Bits bm = oracle::bits_of(b);
    CHECK(oracle::subset(am, bm));
    CHECK(oracle::strong(p, bm, all));
    CHECK(oracle::intrinsic(p, am, bm));
    int smallest = 64;
    oracle::for_each_between(am, all, [&](Bits x) {
      if (oracle::strong(p, x, all)) smallest = std::min(smallest, oracle::popcount(x));
    });
    CHECK(oracle::popcount(bm) == smallest);
  }
}

TEST_CASE("intrinsic chains") {
  auto sig = sig_r();
  Structure cherry = gen::graph(sig, 3, {{0, 2}, {1, 2}});
  CHECK(intrinsic_chain(pat(cherry, {0, 1, 2})) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(intrinsic_chain(pat(cherry, {0, 1})) == std::vector<VertexSet>{{0, 1}, {0, 1, 2}});
  // c over {a, b}, then d over {b, c}.
  Structure stacked = gen::graph(sig, 4, {{0, 2}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(intrinsic_chain(pat(stacked, {0, 1})) == std::vector<VertexSet>{{0, 1}, {0, 1, 2}, {0, 1, 2, 3}});
  CHECK(code_of([&] { intrinsic_chain(pat(gen::complete(sig, 2), {0})); }) == ErrorCode::precondition);

  auto sig2 = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(18);
  int long_chains = 0;
  for (int t = 0; t < 400; ++t) {
    Structure m = gen::random_structure(sig2, 1 + gen::below(rng, 7), {0.6, 0.4}, rng);
    auto p = oracle::plain(m);
    VertexSet a = gen::random_subset(rng, m.size(), 0.4);
    if (!oracle::intrinsic(p, oracle::bits_of(a), oracle::full(p.n))) continue;
    auto chain = intrinsic_chain(pat(m, a));
    REQUIRE(!chain.empty());
    CHECK(chain.front() == a);
    CHECK(chain.back() == full_set(m.size()));
    long_chains += chain.size() > 2;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const Bits x = oracle::bits_of(chain[j]), y = oracle::bits_of(chain[j + 1]);
      CHECK(x != y);
      CHECK(oracle::intrinsic(p, x, y));
      // Minimal pair: no intrinsic step strictly between.
      oracle::for_each_between(x, y, [&](Bits z) {
        if (z != x && z != y) CHECK_FALSE(oracle::intrinsic(p, x, z));
      });
    }
  }
  CHECK(long_chains > 5);
}

TEST_CASE("copy counting examples") {
  auto sig = sig_r();
  Structure tri = gen::complete(sig, 3);
  Structure edge = gen::complete(sig, 2);
  CHECK(chi(tri, pat(edge, {}), {}) == 3);
  CHECK(chi(tri, pat(edge, {0, 1}), std::vector<Vertex>{2, 0}) == 1);
  CHECK(chi(tri, pat(edge, {0}), std::vector<Vertex>{0}) == 2);
  CHECK(copies(tri, pat(edge, {0}), std::vector<Vertex>{0}) == std::vector<VertexSet>{{0, 1}, {0, 2}});

  CHECK(chi_star(tri, pat(edge, {}), {}) == 1);
  Structure matching = gen::graph(sig, 6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(chi_star(matching, pat(edge, {}), {}) == 3);
  CHECK(chi_star(tri, pat(edge, {0, 1}), std::vector<Vertex>{1, 2}) == 1);

  CHECK(max_disjoint_family({}) == 0);
  CHECK(max_disjoint_family({{0, 1}, {1, 2}, {2, 3}, {3, 4}}) == 2);
}

TEST_CASE("copy counts match the injection oracle") {
  auto sig = gen::binary_ternary("3/5", "4/5");
  gen::Rng rng(19);
  for (int t = 0; t < 300; ++t) {
    Structure m = gen::random_structure(sig, 2 + gen::below(rng, 6), {0.5, 0.3}, rng);
    Structure w = gen::random_structure(sig, 1 + gen::below(rng, 3), {0.6, 0.4}, rng);
    VertexSet base = gen::random_subset(rng, w.size(), 0.4);
    ExtensionPattern p = pat(w, base);
    // Image of the base: any iso-mode embedding of it, or skip.
    Structure bs = p.base_structure();
    auto emb = find_embedding(bs, m);
    if (!emb) continue;
    std::vector<Vertex> f(emb->begin(), emb->end());
    auto expect = oracle_copies(m, p, f);
    auto got = copies(m, p, f);
    std::set<Bits> got_bits;
    for (const auto& c : got) got_bits.insert(oracle::bits_of(c));
    CHECK(got_bits == expect);
    CHECK(got.size() == expect.size());
    CHECK(chi(m, p, f) == expect.size());

    std::vector<Bits> sets(expect.begin(), expect.end());
    const Bits fa = oracle::bits_of(make_vertex_set(f));
    std::size_t best = 0;
    if (sets.size() <= 16) {
      for (std::size_t s : maximal_family_sizes(sets, fa)) best = std::max(best, s);
      CHECK(chi_star(m, p, f) == best);
    }
  }
}

TEST_CASE("maximal disjoint families differ by at most a factor |B - A|") {
  auto sig = sig_r();
  gen::Rng rng(20);
  int nontrivial = 0;
  for (int t = 0; t < 300; ++t) {
    Structure m = gen::random_structure(sig, 4 + gen::below(rng, 5), {0.5}, rng);
    // Path of length two over one endpoint, or a triangle over an edge.
    ExtensionPattern p = gen::coin(rng, 0.5) ? pat(gen::graph(sig, 3, {{0, 1}, {1, 2}}), {0})
                                             : pat(gen::complete(sig, 3), {0, 1});
    Structure bs = p.base_structure();
    auto emb = find_embedding(bs, m);
    if (!emb) continue;
    std::vector<Vertex> f(emb->begin(), emb->end());
    std::vector<Bits> sets;
    for (const auto& c : copies(m, p, f)) sets.push_back(oracle::bits_of(c));
    if (sets.size() > 18) continue;
    auto sizes = maximal_family_sizes(sets, oracle::bits_of(make_vertex_set(f)));
    REQUIRE(!sizes.empty());
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*hi <= p.v() * *lo);
    nontrivial += *hi > *lo;
  }
  CHECK(nontrivial > 5);
}

TEST_CASE("copies of an intrinsic cherry stay bounded in K0+ structures") {
  // Two leaves with k common neighbours span delta 2 + k - 1.4k, so structures
  // in K0+ allow at most 5 of them, whatever their size.
  auto sig = sig_r();
  gen::Rng rng(21);
  ExtensionPattern cherry = pat(gen::graph(sig, 3, {{0, 2}, {1, 2}}), {0, 1});
  for (Vertex n : {8u, 16u, 32u, 64u}) {
    std::size_t best = 0;
    int accepted = 0;
    for (int rep = 0; rep < 60; ++rep) {
      std::set<Hyperedge> edges;
      const Vertex k = gen::below(rng, 8);
      VertexSet common = gen::random_k_subset(rng, n - 2, std::min<Vertex>(k, n - 2));
      for (Vertex c : common) {
        edges.insert({0, c + 2});
        edges.insert({1, c + 2});
      }
      // Sparse noise away from the leaf pair.
      for (Vertex j = 0; j < n; ++j) {
        Vertex a = gen::below(rng, n), b = gen::below(rng, n);
        if (a == b || a + b == 1) continue;
        edges.insert({std::min(a, b), std::max(a, b)});
      }
      Structure m = gen::graph(sig, n, {edges.begin(), edges.end()});
      if (!in_k0_plus(m)) continue;
      ++accepted;
      best = std::max(best, chi(m, cherry, std::vector<Vertex>{0, 1}));
    }
    CHECK(accepted > 10);
    CHECK(best <= 5);
    CHECK(best >= 3);
  }
}
