#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rslab/core/structure.hpp"
#include "rslab/core/embedding.hpp"
#include "rslab/extcalc/extension.hpp"

namespace rslab {

struct GenericOptions {
  Vertex size_bound = 48;
  Vertex v_max = 2;
  Vertex a_max = 1;
  std::uint64_t seed = 0;
};

/// One served task: the type was realized over `embedding` (images of the
/// type's base vertices in stage `stage`), producing stage `stage + 1`.
struct TaskRecord {
  std::size_t stage = 0;
  std::size_t type = 0;
  VertexMap embedding;
  /// A set already known strong in the stage that contains the embedded base,
  /// with base <=_s certificate checked directly.
  VertexSet certificate;
  /// Images of all vertices of the type in the next stage.
  VertexMap witness;
};

/// A strong chain A_0 <= A_1 <= ... built by free amalgamation. Stages are
/// prefixes of `final`: stage i is induced on {0, ..., stage_sizes[i] - 1}.
struct GenericChain {
  GenericOptions options;
  /// Task catalog: pairs A <=_s B with A = {0, ..., a-1}, a <= a_max,
  /// 1 <= |B - A| <= v_max, B in K0+, one per isomorphism type over A.
  std::vector<ExtensionPattern> task_types;
  Structure final;
  std::vector<Vertex> stage_sizes;
  std::vector<TaskRecord> tasks;
  std::vector<std::size_t> unserved_types;

  std::size_t stage_count() const noexcept { return stage_sizes.size(); }
  Structure stage(std::size_t i) const;
};

/// Catalog of task types for the given signature, ordered by (|A|, |B - A|,
/// canonical code).
std::vector<ExtensionPattern> task_catalog(const SignaturePtr& sig, Vertex a_max, Vertex v_max);

/// Serves the catalog round-robin. For each task an embedding of A is drawn
/// uniformly (seeded) among those landing strongly inside a set already known
/// strong in the current stage (the empty set, or an earlier witness copy),
/// and the stage is replaced by its free join with B over that embedding.
/// Types that do not fit into size_bound are skipped; the build stops when no
/// type fits.
GenericChain build_generic(const SignaturePtr& sig, const GenericOptions& opt);

struct ChainValidation {
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

/// Re-checks consecutive strength, delta >= 0 on all subsets of at most
/// k0_cap vertices (0 = all), and consistency of every task record.
ChainValidation validate_chain(const GenericChain& chain, std::size_t k0_cap = 0);

nlohmann::ordered_json chain_to_json(const GenericChain& chain);

}  // namespace rslab
