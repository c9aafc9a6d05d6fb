#include "rslab/rslab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "rslab/amalgam/generic.hpp"
#include "rslab/core/error.hpp"
#include "rslab/core/serialize.hpp"
#include "rslab/dimension/dimension.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/extcalc/k0plus.hpp"
#include "rslab/harness/experiments.hpp"
#include "rslab/harness/qe_probe.hpp"
#include "rslab/sampler/sampler.hpp"

struct rslab_signature {
  rslab::SignaturePtr sig;
};
struct rslab_structure {
  rslab::Structure s;
};
struct rslab_pattern {
  rslab::ExtensionPattern p;
};
struct rslab_report {
  rslab::ExperimentReport r;
};

namespace {

thread_local std::string last_error;

template <class Fn>
rslab_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return RSLAB_OK;
  } catch (const rslab::Error& e) {
    last_error = e.what();
    switch (e.code()) {
      case rslab::ErrorCode::invalid_argument: return RSLAB_ERR_INVALID_ARGUMENT;
      case rslab::ErrorCode::parse: return RSLAB_ERR_PARSE;
      case rslab::ErrorCode::precondition: return RSLAB_ERR_PRECONDITION;
      case rslab::ErrorCode::limit: return RSLAB_ERR_LIMIT;
    }
    return RSLAB_ERR_INTERNAL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RSLAB_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RSLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RSLAB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) rslab::fail(rslab::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

rslab::VertexSet to_set(const rslab::Structure& s, const uint32_t* v, size_t len) {
  if (len > 0) require(v, "vertex array");
  std::vector<rslab::Vertex> raw(v, v + len);
  rslab::VertexSet set = rslab::make_vertex_set(raw);
  if (set.size() != len) rslab::fail(rslab::ErrorCode::invalid_argument, "vertex subset repeats a vertex");
  if (!set.empty() && set.back() >= s.size()) {
    rslab::fail(rslab::ErrorCode::invalid_argument, "vertex " + std::to_string(set.back()) + " out of range");
  }
  return set;
}

rslab::ExperimentConfig to_config(const rslab_experiment_config* c) {
  require(c, "config");
  if (c->n_grid_len > 0) require(c->n_grid, "n_grid");
  rslab::ExperimentConfig cfg;
  cfg.n_grid.assign(c->n_grid, c->n_grid + c->n_grid_len);
  cfg.trials = c->trials;
  cfg.seed = c->seed;
  cfg.threads = c->threads;
  cfg.embedding_cap = c->embedding_cap;
  cfg.c1 = c->c1;
  cfg.m = c->m;
  return cfg;
}

}  // namespace

extern "C" {

const char* rslab_last_error(void) { return last_error.c_str(); }

const char* rslab_version(void) { return "0.1.0"; }

void rslab_string_free(char* s) { std::free(s); }

rslab_status rslab_signature_parse(const char* json, rslab_signature** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new rslab_signature{rslab::parse_signature(json)};
  });
}

void rslab_signature_free(rslab_signature* sig) { delete sig; }

rslab_status rslab_structure_parse(const rslab_signature* sig, const char* json, rslab_structure** out) {
  return guarded([&] {
    require(sig, "signature");
    require(json, "json");
    require(out, "out");
    *out = new rslab_structure{rslab::parse_structure(json, sig->sig)};
  });
}

rslab_status rslab_structure_serialize(const rslab_structure* s, char** out) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    *out = copy_string(rslab::serialize_structure(s->s));
  });
}

uint32_t rslab_structure_size(const rslab_structure* s) { return s ? s->s.size() : 0; }

void rslab_structure_free(rslab_structure* s) { delete s; }

rslab_status rslab_pattern_parse(const rslab_signature* sig, const char* json, rslab_pattern** out) {
  return guarded([&] {
    require(sig, "signature");
    require(json, "json");
    require(out, "out");
    *out = new rslab_pattern{rslab::parse_pattern(json, sig->sig)};
  });
}

rslab_status rslab_pattern_describe(const rslab_pattern* p, char** out) {
  return guarded([&] {
    require(p, "pattern");
    require(out, "out");
    const rslab::Signature& sig = p->p.signature();
    nlohmann::ordered_json j;
    j["v"] = p->p.v();
    j["e_rel"] = rslab::to_json(p->p.e_rel(), sig);
    j["delta_rel"] = rslab::to_json(p->p.delta_rel(), sig);
    j["delta_rel_text"] = rslab::to_string(p->p.delta_rel(), sig);
    j["gamma_prod"] = p->p.gamma_prod();
    j["strong"] = rslab::is_strong(p->p);
    j["intrinsic"] = rslab::is_intrinsic(p->p);
    j["primitive"] = rslab::is_primitive(p->p);
    *out = copy_string(j.dump());
  });
}

void rslab_pattern_free(rslab_pattern* p) { delete p; }

rslab_status rslab_sample(const rslab_signature* sig, uint32_t n, uint64_t seed, uint64_t trial,
                          rslab_structure** out) {
  return guarded([&] {
    require(sig, "signature");
    require(out, "out");
    *out = new rslab_structure{rslab::sample({n, sig->sig, seed, trial})};
  });
}

rslab_status rslab_log_prob(const rslab_structure* s, double* out) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    *out = rslab::log_prob(s->s, s->s.size());
  });
}

rslab_status rslab_delta(const rslab_structure* s, const uint32_t* subset, size_t subset_len, char** out,
                         rslab_sign* sign) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    rslab::DimForm d = subset_len == 0 && subset == nullptr ? rslab::delta(s->s)
                                                            : rslab::delta_of(s->s, to_set(s->s, subset, subset_len));
    nlohmann::ordered_json j = rslab::to_json(d, s->s.signature());
    j["text"] = rslab::to_string(d, s->s.signature());
    *out = copy_string(j.dump());
    if (sign) *sign = static_cast<rslab_sign>(static_cast<int>(rslab::sign(d, s->s.signature())));
  });
}

rslab_status rslab_d_cap(const rslab_structure* s, const uint32_t* a, size_t a_len, size_t cap, char** out) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    rslab::DimForm d = rslab::d_cap(s->s, to_set(s->s, a, a_len), cap);
    nlohmann::ordered_json j = rslab::to_json(d, s->s.signature());
    j["text"] = rslab::to_string(d, s->s.signature());
    j["cap"] = cap;
    *out = copy_string(j.dump());
  });
}

rslab_status rslab_closure(const rslab_structure* s, const uint32_t* a, size_t a_len, size_t m, uint32_t** out,
                           size_t* out_len) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    require(out_len, "out_len");
    rslab::VertexSet cl = rslab::closure(s->s, to_set(s->s, a, a_len), m);
    uint32_t* buf = static_cast<uint32_t*>(std::malloc(std::max<size_t>(cl.size(), 1) * sizeof(uint32_t)));
    if (!buf) throw std::bad_alloc();
    std::copy(cl.begin(), cl.end(), buf);
    *out = buf;
    *out_len = cl.size();
  });
}

void rslab_vertices_free(uint32_t* v) { std::free(v); }

rslab_status rslab_in_k0_plus(const rslab_structure* s, size_t max_size, int* out) {
  return guarded([&] {
    require(s, "structure");
    require(out, "out");
    *out = rslab::in_k0_plus(s->s, max_size) ? 1 : 0;
  });
}

void rslab_experiment_config_init(rslab_experiment_config* cfg) {
  if (!cfg) return;
  rslab::ExperimentConfig d;
  cfg->n_grid = nullptr;
  cfg->n_grid_len = 0;
  cfg->trials = d.trials;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
  cfg->embedding_cap = d.embedding_cap;
  cfg->c1 = d.c1;
  cfg->m = d.m;
}

rslab_status rslab_ext_stats(const rslab_pattern* p, const rslab_experiment_config* cfg, rslab_report** out) {
  return guarded([&] {
    require(p, "pattern");
    require(out, "out");
    *out = new rslab_report{rslab::ext_stats(p->p, to_config(cfg))};
  });
}

rslab_status rslab_rare_substructure(const rslab_structure* b, const rslab_experiment_config* cfg,
                                     rslab_report** out) {
  return guarded([&] {
    require(b, "structure");
    require(out, "out");
    *out = new rslab_report{rslab::rare_substructure(b->s, to_config(cfg))};
  });
}

rslab_status rslab_empty_closure(const rslab_signature* sig, const rslab_experiment_config* cfg,
                                 rslab_report** out) {
  return guarded([&] {
    require(sig, "signature");
    require(out, "out");
    *out = new rslab_report{rslab::empty_closure(sig->sig, to_config(cfg))};
  });
}

rslab_status rslab_zero_one(const rslab_pattern* p, const rslab_experiment_config* cfg, rslab_report** out) {
  return guarded([&] {
    require(p, "pattern");
    require(out, "out");
    *out = new rslab_report{rslab::zero_one(p->p, to_config(cfg))};
  });
}

void rslab_qe_config_init(rslab_qe_config* cfg) {
  if (!cfg) return;
  static const size_t default_ells[] = {1, 2};
  rslab::QeProbeConfig d;
  cfg->ells = default_ells;
  cfg->ells_len = 2;
  cfg->depth = d.depth;
  cfg->tuple_length = d.tuple_length;
  cfg->pairs = d.pairs;
  cfg->seed = d.seed;
  cfg->same_tuple = 0;
}

rslab_status rslab_qe_probe(const rslab_structure* g1, const rslab_structure* g2, const rslab_qe_config* cfg,
                            rslab_report** out) {
  return guarded([&] {
    require(g1, "g1");
    require(g2, "g2");
    require(cfg, "config");
    require(out, "out");
    if (cfg->ells_len > 0) require(cfg->ells, "ells");
    rslab::QeProbeConfig c;
    c.ells.assign(cfg->ells, cfg->ells + cfg->ells_len);
    c.depth = cfg->depth;
    c.tuple_length = cfg->tuple_length;
    c.pairs = cfg->pairs;
    c.seed = cfg->seed;
    c.same_tuple = cfg->same_tuple != 0;
    *out = new rslab_report{rslab::qe_probe(g1->s, g2->s, c)};
  });
}

rslab_status rslab_report_json(const rslab_report* r, int include_timing, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(rslab::report_to_json(r->r, include_timing != 0).dump(2));
  });
}

rslab_status rslab_report_csv(const rslab_report* r, int include_timing, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(rslab::report_to_csv(r->r, include_timing != 0));
  });
}

rslab_status rslab_report_slope(const rslab_report* r, double* slope, double* residual, int* valid) {
  return guarded([&] {
    require(r, "report");
    if (slope) *slope = r->r.fit.slope;
    if (residual) *residual = r->r.fit.residual_rms;
    if (valid) *valid = r->r.fit.valid ? 1 : 0;
  });
}

void rslab_report_free(rslab_report* r) { delete r; }

rslab_status rslab_generic_build(const rslab_signature* sig, uint32_t size_bound, uint32_t v_max, uint32_t a_max,
                                 uint64_t seed, size_t k0_cap, char** out) {
  return guarded([&] {
    require(sig, "signature");
    require(out, "out");
    rslab::GenericOptions opt;
    opt.size_bound = size_bound;
    opt.v_max = v_max;
    opt.a_max = a_max;
    opt.seed = seed;
    rslab::GenericChain chain = rslab::build_generic(sig->sig, opt);
    rslab::ChainValidation val = rslab::validate_chain(chain, k0_cap);
    nlohmann::ordered_json j = rslab::chain_to_json(chain);
    j["validation"] = {{"ok", val.ok()}, {"k0_cap", k0_cap}, {"problems", val.problems}};
    *out = copy_string(j.dump());
  });
}

}  // extern "C"
