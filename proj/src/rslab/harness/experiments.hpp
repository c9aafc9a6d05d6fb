#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "rslab/core/structure.hpp"
#include "rslab/extcalc/extension.hpp"
#include "rslab/harness/report.hpp"

namespace rslab {

struct ExperimentConfig {
  std::vector<Vertex> n_grid;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Most embeddings of the base examined per trial; beyond it a uniform
  /// sample of distinct embeddings is used and the row is flagged.
  std::size_t embedding_cap = 200;
  /// Upper constant of the per-f count window.
  double c1 = 10.0;
  /// Closure bound for closure-based experiments.
  std::size_t m = 2;
};

/// Seed of the sample drawn for grid value n; the trial number is the stream
/// index.
std::uint64_t sample_seed(std::uint64_t seed, Vertex n);

/// Runs job(t) for t in [0, trials) on `threads` workers; results are stored
/// by trial index, so the outcome does not depend on scheduling. The first
/// exception thrown by a job is rethrown.
template <class T>
std::vector<T> run_trials(std::size_t trials, unsigned threads, const std::function<T(std::size_t)>& job) {
  std::vector<T> out(trials);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(trials, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = job(t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        out[t] = job(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = trials;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

/// N(f, A, B): homomorphism-relative-to-A extensions of each embedding f of A
/// into the bare n-set, counted as maps. Row statistics are over trials of the
/// per-trial mean over f (min/max over all f); freq is the share of trials in
/// which n^delta (ln n)^-(v+1) < N < c1 n^delta for every examined f. Slope
/// of ln(mean) against ln(n).
ExperimentReport ext_stats(const ExtensionPattern& pat, const ExperimentConfig& cfg);

/// Share of trials in which some iso-mode copy of B exists; slope of
/// ln(freq) against ln(n).
ExperimentReport rare_substructure(const Structure& b, const ExperimentConfig& cfg);

/// Share of trials with cl^m(empty) = empty, computed by the closure routine
/// and, independently, as "no structure of size < m and negative delta embeds
/// weakly". Disagreements are counted in extra.disagreements.
ExperimentReport empty_closure(const SignaturePtr& sig, const ExperimentConfig& cfg);

/// Share of trials in which every examined iso-mode embedding f of A has a
/// semigeneric witness for B at closure bound cfg.m.
ExperimentReport zero_one(const ExtensionPattern& pat, const ExperimentConfig& cfg);

}  // namespace rslab
