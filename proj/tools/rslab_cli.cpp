// Command-line driver over the rslab C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rslab/rslab.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSlope = 3;

struct Failure {
  int code;
  std::string message;
};

void check(rslab_status st) {
  if (st != RSLAB_OK) throw Failure{st == RSLAB_ERR_INTERNAL ? 1 : kExitConfig, rslab_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitConfig, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitConfig, "cannot write " + path};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string take(char* s) {
  std::string out(s ? s : "");
  rslab_string_free(s);
  return out;
}

// Owning wrappers so that early exits release handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using SigHandle = Handle<rslab_signature, rslab_signature_free>;
using StructHandle = Handle<rslab_structure, rslab_structure_free>;
using PatternHandle = Handle<rslab_pattern, rslab_pattern_free>;
using ReportHandle = Handle<rslab_report, rslab_report_free>;

void load_signature(const std::string& path, SigHandle& h) { check(rslab_signature_parse(read_file(path).c_str(), &h.p)); }

struct Common {
  std::string sig;
  std::vector<uint32_t> n_grid;
  std::size_t trials = 20;
  uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t cap = 200;
  double c1 = 10.0;
  std::size_t m = 2;
  std::string out;
  std::string csv;
  std::string assert_slope;
  bool timing = false;
};

void add_experiment_flags(CLI::App* app, Common& c, bool with_grid = true) {
  app->add_option("--sig", c.sig, "signature JSON file")->required()->check(CLI::ExistingFile);
  if (with_grid) app->add_option("--n-grid", c.n_grid, "comma-separated universe sizes")->required()->delimiter(',');
  app->add_option("--trials", c.trials, "trials per grid value");
  app->add_option("--seed", c.seed, "base seed");
  app->add_option("--threads", c.threads, "worker threads");
  app->add_option("--out", c.out, "JSON report file (default stdout)");
  app->add_option("--csv", c.csv, "CSV report file");
  app->add_option("--assert-slope", c.assert_slope, "lo:hi; exit 3 if the fitted slope is outside");
  app->add_flag("--timing", c.timing, "include wall-clock seconds in the report");
}

rslab_experiment_config to_config(const Common& c) {
  rslab_experiment_config cfg;
  rslab_experiment_config_init(&cfg);
  cfg.n_grid = c.n_grid.data();
  cfg.n_grid_len = c.n_grid.size();
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.embedding_cap = c.cap;
  cfg.c1 = c.c1;
  cfg.m = c.m;
  return cfg;
}

int emit_report(const Common& c, const rslab_report* r) {
  char* text = nullptr;
  check(rslab_report_json(r, c.timing, &text));
  write_text(c.out, take(text));
  if (!c.csv.empty()) {
    check(rslab_report_csv(r, c.timing, &text));
    write_text(c.csv, take(text));
  }
  if (c.assert_slope.empty()) return 0;
  auto colon = c.assert_slope.find(':');
  double lo = 0, hi = 0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    lo = std::stod(c.assert_slope.substr(0, colon));
    hi = std::stod(c.assert_slope.substr(colon + 1));
  } catch (const std::exception&) {
    throw Failure{kExitConfig, "--assert-slope expects lo:hi"};
  }
  double slope = 0, residual = 0;
  int valid = 0;
  check(rslab_report_slope(r, &slope, &residual, &valid));
  if (!valid || slope < lo || slope > hi) {
    std::cerr << "slope assertion failed: " << (valid ? std::to_string(slope) : std::string("no fit")) << " not in ["
              << lo << ", " << hi << "]\n";
    return kExitSlope;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rslab: sparse random structures, closures and scaling experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rslab_version()));

  // sample
  Common s_c;
  uint32_t s_n = 0;
  uint64_t s_trial = 0;
  auto* sample = app.add_subcommand("sample", "draw a structure from P_n");
  sample->add_option("--sig", s_c.sig, "signature JSON file")->required()->check(CLI::ExistingFile);
  sample->add_option("--n", s_n, "universe size")->required();
  sample->add_option("--seed", s_c.seed, "seed");
  sample->add_option("--trial", s_trial, "trial index");
  sample->add_option("--out", s_c.out, "output file (default stdout)");

  // delta
  Common d_c;
  std::string d_structure;
  std::vector<uint32_t> d_subset;
  std::size_t d_cap = 6;
  auto* delta = app.add_subcommand("delta", "dimension of a structure or subset");
  delta->add_option("--sig", d_c.sig, "signature JSON file")->required()->check(CLI::ExistingFile);
  delta->add_option("--structure", d_structure, "structure JSON file")->required()->check(CLI::ExistingFile);
  delta->add_option("--subset", d_subset, "comma-separated vertices")->delimiter(',');
  delta->add_option("--cap", d_cap, "d_cap bound: supersets add at most this many vertices")->capture_default_str();
  delta->add_option("--out", d_c.out, "output file (default stdout)");

  // closure
  Common cl_c;
  std::string cl_structure;
  std::vector<uint32_t> cl_set;
  auto* clo = app.add_subcommand("closure", "cl^m of a vertex set");
  clo->add_option("--sig", cl_c.sig, "signature JSON file")->required()->check(CLI::ExistingFile);
  clo->add_option("--structure", cl_structure, "structure JSON file")->required()->check(CLI::ExistingFile);
  clo->add_option("--set", cl_set, "comma-separated base vertices")->delimiter(',');
  clo->add_option("--m", cl_c.m, "closure bound")->required();

  // ext-stats
  Common e_c;
  std::string e_pattern;
  auto* ext = app.add_subcommand("ext-stats", "extension counts N(f, A, B) across n");
  add_experiment_flags(ext, e_c);
  ext->add_option("--pattern", e_pattern, "pattern JSON file")->required()->check(CLI::ExistingFile);
  ext->add_option("--c1", e_c.c1, "upper constant of the per-f count window");
  ext->add_option("--cap", e_c.cap, "embeddings of A examined per trial");

  // rare
  Common r_c;
  std::string r_structure;
  auto* rare = app.add_subcommand("rare", "frequency of copies of a negative-dimension structure");
  add_experiment_flags(rare, r_c);
  rare->add_option("--structure", r_structure, "structure JSON file")->required()->check(CLI::ExistingFile);

  // empty-closure
  Common ec_c;
  auto* empty = app.add_subcommand("empty-closure", "frequency of an empty closure of the empty set");
  add_experiment_flags(empty, ec_c);
  empty->add_option("--m", ec_c.m, "closure bound");

  // zero-one
  Common z_c;
  std::string z_pattern;
  auto* zo = app.add_subcommand("zero-one", "frequency of semigeneric witnesses for every embedding");
  add_experiment_flags(zo, z_c);
  zo->add_option("--pattern", z_pattern, "pattern JSON file")->required()->check(CLI::ExistingFile);
  zo->add_option("--m", z_c.m, "closure bound");
  zo->add_option("--cap", z_c.cap, "embeddings of A examined per trial");

  // generic-build
  Common g_c;
  uint32_t g_size = 48, g_vmax = 2, g_amax = 1;
  std::size_t g_k0 = 0;
  auto* gen = app.add_subcommand("generic-build", "strong chain built by free amalgamation");
  gen->add_option("--sig", g_c.sig, "signature JSON file")->required()->check(CLI::ExistingFile);
  gen->add_option("--size", g_size, "vertex bound");
  gen->add_option("--vmax", g_vmax, "largest |B - A| of a task");
  gen->add_option("--amax", g_amax, "largest |A| of a task");
  gen->add_option("--seed", g_c.seed, "seed");
  gen->add_option("--k0-cap", g_k0, "subset size bound of the hereditary delta check (0 = all)");
  gen->add_option("--out", g_c.out, "output file (default stdout)");

  // qe-probe
  Common q_c;
  std::string q_g1, q_g2;
  uint32_t q_n = 256;
  std::vector<std::size_t> q_ells{1, 2};
  std::size_t q_depth = 1, q_tuple = 1, q_pairs = 50;
  bool q_same = false;
  auto* qe = app.add_subcommand("qe-probe", "type agreement of tuples with isomorphic closures");
  add_experiment_flags(qe, q_c, false);
  qe->add_option("--g1", q_g1, "first structure JSON file (default: sampled)")->check(CLI::ExistingFile);
  qe->add_option("--g2", q_g2, "second structure JSON file (default: sampled)")->check(CLI::ExistingFile);
  qe->add_option("--n", q_n, "size of sampled structures");
  qe->add_option("--ell", q_ells, "comma-separated closure bounds")->delimiter(',');
  qe->add_option("--depth", q_depth, "quantifier depth (<= 2)");
  qe->add_option("--tuple", q_tuple, "tuple length (1 or 2)");
  qe->add_option("--pairs", q_pairs, "tuple pairs per ell");
  qe->add_flag("--same-tuple", q_same, "pair each tuple with itself");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sample) {
      SigHandle sig;
      load_signature(s_c.sig, sig);
      StructHandle g;
      check(rslab_sample(sig.p, s_n, s_c.seed, s_trial, &g.p));
      char* text = nullptr;
      check(rslab_structure_serialize(g.p, &text));
      write_text(s_c.out, take(text));
      return 0;
    }
    if (*delta) {
      SigHandle sig;
      load_signature(d_c.sig, sig);
      StructHandle g;
      check(rslab_structure_parse(sig.p, read_file(d_structure).c_str(), &g.p));
      if (d_subset.empty()) {
        for (uint32_t v = 0; v < rslab_structure_size(g.p); ++v) d_subset.push_back(v);
      }
      char* text = nullptr;
      rslab_sign sign = RSLAB_ZERO;
      check(rslab_delta(g.p, d_subset.data(), d_subset.size(), &text, &sign));
      const std::string delta_json = take(text);
      check(rslab_d_cap(g.p, d_subset.data(), d_subset.size(), d_cap, &text));
      write_text(d_c.out, "{\"delta\":" + delta_json + ",\"d_cap\":" + take(text) + "}");
      return 0;
    }
    if (*clo) {
      SigHandle sig;
      load_signature(cl_c.sig, sig);
      StructHandle g;
      check(rslab_structure_parse(sig.p, read_file(cl_structure).c_str(), &g.p));
      uint32_t* out = nullptr;
      std::size_t len = 0;
      check(rslab_closure(g.p, cl_set.data(), cl_set.size(), cl_c.m, &out, &len));
      std::string text = "[";
      for (std::size_t i = 0; i < len; ++i) text += (i ? "," : "") + std::to_string(out[i]);
      text += "]";
      rslab_vertices_free(out);
      write_text("", text);
      return 0;
    }
    if (*ext || *zo) {
      Common& c = *ext ? e_c : z_c;
      SigHandle sig;
      load_signature(c.sig, sig);
      PatternHandle pat;
      check(rslab_pattern_parse(sig.p, read_file(*ext ? e_pattern : z_pattern).c_str(), &pat.p));
      rslab_experiment_config cfg = to_config(c);
      ReportHandle rep;
      check(*ext ? rslab_ext_stats(pat.p, &cfg, &rep.p) : rslab_zero_one(pat.p, &cfg, &rep.p));
      return emit_report(c, rep.p);
    }
    if (*rare) {
      SigHandle sig;
      load_signature(r_c.sig, sig);
      StructHandle b;
      check(rslab_structure_parse(sig.p, read_file(r_structure).c_str(), &b.p));
      rslab_experiment_config cfg = to_config(r_c);
      ReportHandle rep;
      check(rslab_rare_substructure(b.p, &cfg, &rep.p));
      return emit_report(r_c, rep.p);
    }
    if (*empty) {
      SigHandle sig;
      load_signature(ec_c.sig, sig);
      rslab_experiment_config cfg = to_config(ec_c);
      ReportHandle rep;
      check(rslab_empty_closure(sig.p, &cfg, &rep.p));
      return emit_report(ec_c, rep.p);
    }
    if (*gen) {
      SigHandle sig;
      load_signature(g_c.sig, sig);
      char* text = nullptr;
      check(rslab_generic_build(sig.p, g_size, g_vmax, g_amax, g_c.seed, g_k0, &text));
      write_text(g_c.out, take(text));
      return 0;
    }
    if (*qe) {
      SigHandle sig;
      load_signature(q_c.sig, sig);
      StructHandle g1, g2;
      if (q_g1.empty()) {
        check(rslab_sample(sig.p, q_n, q_c.seed, 0, &g1.p));
      } else {
        check(rslab_structure_parse(sig.p, read_file(q_g1).c_str(), &g1.p));
      }
      if (q_g2.empty()) {
        check(rslab_sample(sig.p, q_n, q_c.seed, 1, &g2.p));
      } else {
        check(rslab_structure_parse(sig.p, read_file(q_g2).c_str(), &g2.p));
      }
      rslab_qe_config cfg;
      rslab_qe_config_init(&cfg);
      cfg.ells = q_ells.data();
      cfg.ells_len = q_ells.size();
      cfg.depth = q_depth;
      cfg.tuple_length = q_tuple;
      cfg.pairs = q_pairs;
      cfg.seed = q_c.seed;
      cfg.same_tuple = q_same ? 1 : 0;
      ReportHandle rep;
      check(rslab_qe_probe(g1.p, g2.p, &cfg, &rep.p));
      return emit_report(q_c, rep.p);
    }
  } catch (const Failure& f) {
    std::cerr << "rslab: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
