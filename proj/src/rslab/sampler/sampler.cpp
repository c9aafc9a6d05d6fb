#include "rslab/sampler/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "rslab/core/error.hpp"
#include "rslab/sampler/rng.hpp"

namespace rslab {

namespace {

__extension__ using U128 = unsigned __int128;

constexpr std::int64_t kMaxScanCombinations = std::int64_t{1} << 26;

// Selection sampling (Knuth's Algorithm S) over all k-sets in lexicographic
// order; output is canonical.
std::vector<Vertex> select_by_scan(Vertex n, std::uint32_t k, std::int64_t count, std::int64_t total, Rng& rng) {
  std::vector<Vertex> flat;
  flat.reserve(static_cast<std::size_t>(count) * k);
  std::vector<Vertex> cur(k);
  for (std::uint32_t j = 0; j < k; ++j) cur[j] = j;
  std::int64_t need = count;
  std::int64_t left = total;
  while (need > 0) {
    if (static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(left))) < need) {
      flat.insert(flat.end(), cur.begin(), cur.end());
      --need;
    }
    --left;
    std::uint32_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::uint32_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return flat;
}

void draw_tuple(Vertex n, std::uint32_t k, Rng& rng, std::vector<Vertex>& t) {
  t.clear();
  while (t.size() < k) {
    Vertex v = static_cast<Vertex>(uniform_below(rng, n));
    if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
  }
  std::sort(t.begin(), t.end());
}

// LSD radix sort of keys below 2^key_bits.
void radix_sort(std::vector<std::uint64_t>& keys, unsigned key_bits) {
  if (keys.size() < 512) {
    std::sort(keys.begin(), keys.end());
    return;
  }
  constexpr unsigned kDigit = 11;
  std::vector<std::uint64_t> tmp(keys.size());
  std::vector<std::uint32_t> count(std::size_t{1} << kDigit);
  for (unsigned shift = 0; shift < key_bits; shift += kDigit) {
    std::fill(count.begin(), count.end(), 0);
    const std::uint64_t mask = (std::uint64_t{1} << kDigit) - 1;
    for (std::uint64_t k : keys) ++count[(k >> shift) & mask];
    std::uint32_t sum = 0;
    for (auto& c : count) {
      std::uint32_t here = c;
      c = sum;
      sum += here;
    }
    for (std::uint64_t k : keys) tmp[count[(k >> shift) & mask]++] = k;
    keys.swap(tmp);
  }
}

// Rejection on sorted random k-tuples, deduplicated and topped up until
// `count` distinct sets are held.
std::vector<Vertex> select_by_rejection(Vertex n, std::uint32_t k, std::int64_t count, Rng& rng) {
  const unsigned bits = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint32_t>(n - 1))));
  std::vector<Vertex> t;
  std::vector<Vertex> flat;
  if (static_cast<unsigned>(k) * bits <= 64) {
    std::vector<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(count));
    while (static_cast<std::int64_t>(keys.size()) < count) {
      std::int64_t missing = count - static_cast<std::int64_t>(keys.size());
      for (std::int64_t r = 0; r < missing; ++r) {
        std::uint64_t key = 0;
        if (k == 2) {
          Vertex a = 0, b = 0;
          do {
            a = static_cast<Vertex>(uniform_below(rng, n));
            b = static_cast<Vertex>(uniform_below(rng, n));
          } while (a == b);
          key = (std::uint64_t{std::min(a, b)} << bits) | std::max(a, b);
        } else {
          draw_tuple(n, k, rng, t);
          for (Vertex v : t) key = (key << bits) | v;
        }
        keys.push_back(key);
      }
      radix_sort(keys, k * bits);
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
    flat.resize(keys.size() * k);
    const std::uint64_t mask = (bits == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    for (std::size_t e = 0; e < keys.size(); ++e) {
      std::uint64_t key = keys[e];
      for (std::uint32_t j = k; j-- > 0;) {
        flat[e * k + j] = static_cast<Vertex>(key & mask);
        key >>= bits;
      }
    }
    return flat;
  }
  std::set<std::vector<Vertex>> sets;
  while (static_cast<std::int64_t>(sets.size()) < count) {
    draw_tuple(n, k, rng, t);
    sets.insert(t);
  }
  for (const auto& s : sets) flat.insert(flat.end(), s.begin(), s.end());
  return flat;
}

}  // namespace

double edge_probability(const Relation& r, Vertex n) {
  return r.gamma * std::pow(static_cast<double>(n), -r.alpha_value);
}

std::optional<std::int64_t> choose_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  U128 c = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;
    if (c > static_cast<U128>(std::numeric_limits<std::int64_t>::max())) return std::nullopt;
  }
  return static_cast<std::int64_t>(c);
}

Structure sample(const SampleConfig& cfg) {
  if (!cfg.sig) fail(ErrorCode::invalid_argument, "sampling needs a signature");
  if (cfg.n < 1) fail(ErrorCode::invalid_argument, "n must be at least 1");
  const Signature& sig = *cfg.sig;
  Rng rng = make_stream(cfg.seed, cfg.trial_index);
  std::vector<std::vector<Vertex>> flat(sig.size());
  for (RelIndex i = 0; i < sig.size(); ++i) {
    const Relation& r = sig.relation(i);
    if (r.arity > cfg.n) continue;
    auto total = choose_exact(cfg.n, r.arity);
    if (!total) fail(ErrorCode::limit, "C(n, k) overflows 64 bits for relation '" + r.name + "'");
    const double p = edge_probability(r, cfg.n);
    std::int64_t count = 0;
    if (p >= 1.0) {
      count = *total;
    } else if (p > 0.0) {
      std::binomial_distribution<std::int64_t> bin(*total, p);
      count = bin(rng);
    }
    if (count == 0) continue;
    if (2 * count > *total) {
      if (*total > kMaxScanCombinations) fail(ErrorCode::limit, "relation '" + r.name + "' too dense to sample");
      flat[i] = select_by_scan(cfg.n, r.arity, count, *total, rng);
    } else {
      flat[i] = select_by_rejection(cfg.n, r.arity, count, rng);
    }
  }
  return Structure::from_canonical(cfg.sig, cfg.n, std::move(flat));
}

double log_prob(const Structure& s, Vertex n_param) {
  if (s.size() != n_param) fail(ErrorCode::invalid_argument, "structure size differs from the measure's n");
  const Signature& sig = s.signature();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (RelIndex i = 0; i < sig.size(); ++i) {
    const Relation& r = sig.relation(i);
    const double p = edge_probability(r, n_param);
    auto c = choose_exact(n_param, r.arity);
    const double all = c ? static_cast<double>(*c) : std::exp(std::lgamma(n_param + 1.0) - std::lgamma(r.arity + 1.0) -
                                                               std::lgamma(n_param - r.arity + 1.0));
    const double present = static_cast<double>(s.edge_count(i));
    const double absent = all - present;
    if (present > 0) {
      if (p <= 0.0) return neg_inf;
      total += present * std::log(p);
    }
    if (absent > 0) {
      if (p >= 1.0) return neg_inf;
      total += absent * std::log1p(-p);
    }
  }
  return total;
}

}  // namespace rslab
