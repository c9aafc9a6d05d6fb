#include "rslab/amalgam/generic.hpp"

#include <algorithm>
#include <set>

#include "rslab/amalgam/free_join.hpp"
#include "rslab/core/embedding.hpp"
#include "rslab/core/error.hpp"
#include "rslab/core/serialize.hpp"
#include "rslab/core/type_enum.hpp"
#include "rslab/extcalc/k0plus.hpp"
#include "rslab/sampler/rng.hpp"

namespace rslab {

namespace {

VertexSet prefix(Vertex n) { return full_set(n); }

struct Candidate {
  VertexMap embedding;
  VertexSet certificate;
};

// Embeddings of the base of `type` into `stage` whose image is strong inside
// one of the known strong sets.
std::vector<Candidate> strong_embeddings(const Structure& stage, const ExtensionPattern& type,
                                         const std::vector<VertexSet>& strong_sets) {
  const Structure base = type.base_structure();
  std::vector<Candidate> out;
  std::set<VertexMap> seen;
  for (const VertexSet& w : strong_sets) {
    if (w.size() < base.size()) continue;
    const Structure inside = induced_substructure(stage, w);
    for_each_embedding(base, inside, {}, EmbedMode::isomorphism, {}, [&](std::span<const Vertex> map) {
      VertexMap f(map.size());
      for (std::size_t j = 0; j < map.size(); ++j) f[j] = w[map[j]];
      if (seen.count(f)) return true;
      VertexSet fa = make_vertex_set(f);
      if (is_strong(stage, fa, w)) {
        seen.insert(f);
        out.push_back({std::move(f), w});
      }
      return true;
    });
  }
  return out;
}

}  // namespace

Structure GenericChain::stage(std::size_t i) const {
  if (i >= stage_sizes.size()) fail(ErrorCode::invalid_argument, "stage index out of range");
  return induced_substructure(final, prefix(stage_sizes[i]));
}

std::vector<ExtensionPattern> task_catalog(const SignaturePtr& sig, Vertex a_max, Vertex v_max) {
  std::vector<ExtensionPattern> out;
  for (Vertex a = 0; a <= a_max; ++a) {
    for (Vertex v = 1; v <= v_max; ++v) {
      for (Structure& s : enumerate_types(sig, a + v, a)) {
        ExtensionPattern p(std::move(s), prefix(a));
        if (in_k0_plus(p.whole()) && is_strong(p)) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

GenericChain build_generic(const SignaturePtr& sig, const GenericOptions& opt) {
  if (!sig) fail(ErrorCode::invalid_argument, "generic build needs a signature");
  if (opt.v_max > kMaxExtensionVertices) fail(ErrorCode::limit, "v_max too large");
  GenericChain chain{opt, task_catalog(sig, opt.a_max, opt.v_max), Structure(sig, 0), {0}, {}, {}};
  Rng rng = make_stream(opt.seed, 0);
  std::vector<VertexSet> strong_sets{VertexSet{}};
  std::vector<char> served(chain.task_types.size(), 0);

  bool progress = !chain.task_types.empty();
  while (progress) {
    progress = false;
    for (std::size_t t = 0; t < chain.task_types.size(); ++t) {
      const ExtensionPattern& type = chain.task_types[t];
      if (chain.final.size() + type.v() > opt.size_bound) continue;
      std::vector<Candidate> cands = strong_embeddings(chain.final, type, strong_sets);
      if (cands.empty()) continue;
      Candidate& pick = cands[uniform_below(rng, cands.size())];

      FreeJoin j = free_join(chain.final, pick.embedding, type.whole(), type.base());
      TaskRecord rec;
      rec.stage = chain.stage_sizes.size() - 1;
      rec.type = t;
      rec.embedding = pick.embedding;
      rec.certificate = pick.certificate;
      rec.witness = j.c_map;
      strong_sets.push_back(make_vertex_set(j.c_map));
      chain.final = std::move(j.joined);
      chain.stage_sizes.push_back(chain.final.size());
      chain.tasks.push_back(std::move(rec));
      served[t] = 1;
      progress = true;
    }
  }
  for (std::size_t t = 0; t < served.size(); ++t) {
    if (!served[t]) chain.unserved_types.push_back(t);
  }
  return chain;
}

ChainValidation validate_chain(const GenericChain& chain, std::size_t k0_cap) {
  ChainValidation out;
  auto problem = [&](std::string s) { out.problems.push_back(std::move(s)); };
  const Structure& fin = chain.final;
  if (chain.stage_sizes.empty() || chain.stage_sizes.front() != 0) problem("chain must start at the empty stage");
  if (!chain.stage_sizes.empty() && chain.stage_sizes.back() != fin.size()) problem("last stage is not the final structure");
  for (std::size_t i = 0; i + 1 < chain.stage_sizes.size(); ++i) {
    Vertex lo = chain.stage_sizes[i], hi = chain.stage_sizes[i + 1];
    if (lo > hi || hi > fin.size()) {
      problem("stage " + std::to_string(i + 1) + " does not extend stage " + std::to_string(i));
      continue;
    }
    if (!is_strong(fin, prefix(lo), prefix(hi))) {
      problem("stage " + std::to_string(i) + " is not strong in stage " + std::to_string(i + 1));
    }
  }
  if (auto bad = find_negative_subset(fin, k0_cap)) {
    problem("negative-dimension subset of size " + std::to_string(bad->size()));
  }

  std::vector<VertexSet> known{VertexSet{}};
  if (chain.tasks.size() + 1 != chain.stage_sizes.size()) problem("task log and stage list disagree");
  for (std::size_t r = 0; r < chain.tasks.size() && r + 1 < chain.stage_sizes.size(); ++r) {
    const TaskRecord& rec = chain.tasks[r];
    const std::string tag = "task " + std::to_string(r) + ": ";
    if (rec.stage != r) problem(tag + "serves the wrong stage");
    if (rec.type >= chain.task_types.size()) {
      problem(tag + "unknown type");
      continue;
    }
    const ExtensionPattern& type = chain.task_types[rec.type];
    const Vertex lo = chain.stage_sizes[r], hi = chain.stage_sizes[r + 1];
    if (rec.witness.size() != type.whole().size() || rec.embedding.size() != type.base().size()) {
      problem(tag + "map sizes do not match the type");
      continue;
    }
    if (std::find(known.begin(), known.end(), rec.certificate) == known.end()) {
      problem(tag + "certificate is not a known strong set");
    }
    VertexSet fa = make_vertex_set(rec.embedding);
    if (!is_subset(fa, rec.certificate) || !is_strong(fin, fa, rec.certificate)) {
      problem(tag + "embedded base is not strong in its certificate");
    }
    std::vector<Vertex> fresh;
    for (Vertex v = 0; v < rec.witness.size(); ++v) {
      if (contains_sorted(type.base(), v)) {
        auto pos = std::lower_bound(type.base().begin(), type.base().end(), v) - type.base().begin();
        if (rec.witness[v] != rec.embedding[static_cast<std::size_t>(pos)]) problem(tag + "witness disagrees with embedding");
      } else {
        fresh.push_back(rec.witness[v]);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    VertexSet expected;
    for (Vertex v = lo; v < hi; ++v) expected.push_back(v);
    if (fresh != expected) problem(tag + "new vertices are not the stage increment");
    if (std::any_of(rec.embedding.begin(), rec.embedding.end(), [&](Vertex v) { return v >= lo; })) {
      problem(tag + "embedding leaves its stage");
    }
    const Structure next = induced_substructure(fin, prefix(hi));
    if (!is_embedding(type.whole(), next, rec.witness)) problem(tag + "witness is not an embedding of the type");
    known.push_back(make_vertex_set(rec.witness));
  }
  return out;
}

nlohmann::ordered_json chain_to_json(const GenericChain& chain) {
  nlohmann::ordered_json j;
  j["size_bound"] = chain.options.size_bound;
  j["v_max"] = chain.options.v_max;
  j["a_max"] = chain.options.a_max;
  j["seed"] = chain.options.seed;
  j["signature"] = signature_to_json(chain.final.signature());
  auto types = nlohmann::ordered_json::array();
  for (const auto& t : chain.task_types) types.push_back(pattern_to_json(t));
  j["task_types"] = types;
  j["structure"] = structure_to_json(chain.final);
  j["stage_sizes"] = chain.stage_sizes;
  auto tasks = nlohmann::ordered_json::array();
  for (const auto& r : chain.tasks) {
    nlohmann::ordered_json t;
    t["stage"] = r.stage;
    t["type"] = r.type;
    t["embedding"] = r.embedding;
    t["certificate"] = r.certificate;
    t["witness"] = r.witness;
    tasks.push_back(t);
  }
  j["tasks"] = tasks;
  j["unserved_types"] = chain.unserved_types;
  return j;
}

}  // namespace rslab
