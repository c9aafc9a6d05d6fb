#pragma once

#include <cstdint>
#include <optional>

#include "rslab/core/structure.hpp"

namespace rslab {

struct SampleConfig {
  Vertex n = 1;
  SignaturePtr sig;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
};

/// gamma * n^(-alpha) for one relation.
double edge_probability(const Relation& r, Vertex n);

/// C(n, k) if it fits in int64.
std::optional<std::int64_t> choose_exact(std::uint64_t n, std::uint64_t k);

/// Draws from P_n: every k_i-subset carries R_i independently with
/// probability gamma_i n^(-alpha_i). The edge count of each relation is drawn
/// from Binomial(C(n, k_i), p_i), then that many distinct k_i-sets are chosen
/// uniformly. Deterministic in (seed, trial_index).
Structure sample(const SampleConfig& cfg);

/// ln P_n(N) for n = n_param = |N|; -infinity for impossible outcomes.
double log_prob(const Structure& s, Vertex n_param);

}  // namespace rslab
