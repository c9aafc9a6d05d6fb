#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "rslab/rslab.h"

namespace {

const char* kSig = R"({"independence_mode": false, "relations": [{"name": "R", "arity": 2, "alpha": "0.7"}]})";
const char* kSig55 = R"({"independence_mode": false, "relations": [{"name": "R", "arity": 2, "alpha": "0.55"}]})";

struct Sig {
  rslab_signature* p = nullptr;
  explicit Sig(const char* json) { REQUIRE(rslab_signature_parse(json, &p) == RSLAB_OK); }
  ~Sig() { rslab_signature_free(p); }
};

struct Str {
  rslab_structure* p = nullptr;
  Str(const Sig& sig, const char* json) { REQUIRE(rslab_structure_parse(sig.p, json, &p) == RSLAB_OK); }
  Str() = default;
  ~Str() { rslab_structure_free(p); }
};

struct Pat {
  rslab_pattern* p = nullptr;
  Pat(const Sig& sig, const char* json) { REQUIRE(rslab_pattern_parse(sig.p, json, &p) == RSLAB_OK); }
  ~Pat() { rslab_pattern_free(p); }
};

// Takes ownership of a returned string.
std::string take(char* s) {
  std::string out = s ? s : "";
  rslab_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status codes and error text") {
  CHECK(std::string(rslab_version()).size() > 0);
  rslab_signature* sig = nullptr;
  CHECK(rslab_signature_parse("{oops", &sig) == RSLAB_ERR_PARSE);
  CHECK(sig == nullptr);
  CHECK(std::string(rslab_last_error()).size() > 0);
  CHECK(rslab_signature_parse(R"({"relations": [{"name": "R", "arity": 2, "alpha": "2"}]})", &sig) ==
        RSLAB_ERR_INVALID_ARGUMENT);
  CHECK(rslab_signature_parse(kSig, nullptr) == RSLAB_ERR_INVALID_ARGUMENT);

  Sig s(kSig);
  rslab_structure* bad = nullptr;
  CHECK(rslab_structure_parse(s.p, R"({"n": 2, "edges": {"R": [[0, 5]]}})", &bad) != RSLAB_OK);
  CHECK(bad == nullptr);
  CHECK(rslab_structure_parse(s.p, R"({"n": 2, "edges": {"S": [[0, 1]]}})", &bad) == RSLAB_ERR_PARSE);

  // Freeing null handles is allowed.
  rslab_signature_free(nullptr);
  rslab_structure_free(nullptr);
  rslab_pattern_free(nullptr);
  rslab_report_free(nullptr);
  rslab_string_free(nullptr);
  rslab_vertices_free(nullptr);
}

TEST_CASE("structures, dimension and closure") {
  Sig s(kSig);
  Str k4(s, R"({"n": 4, "edges": {"R": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}})");
  CHECK(rslab_structure_size(k4.p) == 4);

  char* text = nullptr;
  rslab_sign sign = RSLAB_ZERO;
  REQUIRE(rslab_delta(k4.p, nullptr, 0, &text, &sign) == RSLAB_OK);
  auto j = nlohmann::json::parse(take(text));
  CHECK(j["value"].get<double>() == doctest::Approx(-0.2));
  CHECK(sign == RSLAB_NEGATIVE);

  const uint32_t tri[] = {2, 0, 1};
  REQUIRE(rslab_delta(k4.p, tri, 3, &text, &sign) == RSLAB_OK);
  CHECK(nlohmann::json::parse(take(text))["value"].get<double>() == doctest::Approx(0.9));
  CHECK(sign == RSLAB_POSITIVE);
  const uint32_t dup[] = {1, 1};
  CHECK(rslab_delta(k4.p, dup, 2, &text, &sign) == RSLAB_ERR_INVALID_ARGUMENT);
  const uint32_t out_of_range[] = {9};
  CHECK(rslab_delta(k4.p, out_of_range, 1, &text, &sign) == RSLAB_ERR_INVALID_ARGUMENT);

  const uint32_t one[] = {0};
  REQUIRE(rslab_d_cap(k4.p, one, 1, 3, &text) == RSLAB_OK);
  CHECK(nlohmann::json::parse(take(text))["value"].get<double>() == doctest::Approx(-0.2));

  int in = -1;
  REQUIRE(rslab_in_k0_plus(k4.p, 0, &in) == RSLAB_OK);
  CHECK(in == 0);
  REQUIRE(rslab_in_k0_plus(k4.p, 3, &in) == RSLAB_OK);
  CHECK(in == 1);

  Str triangle(s, R"({"n": 3, "edges": {"R": [[0,1],[1,2],[0,2]]}})");
  const uint32_t ac[] = {0, 2};
  uint32_t* cl = nullptr;
  size_t cl_len = 0;
  REQUIRE(rslab_closure(triangle.p, ac, 2, 2, &cl, &cl_len) == RSLAB_OK);
  REQUIRE(cl_len == 3);
  CHECK(cl[0] == 0);
  CHECK(cl[1] == 1);
  CHECK(cl[2] == 2);
  rslab_vertices_free(cl);

  REQUIRE(rslab_structure_serialize(triangle.p, &text) == RSLAB_OK);
  CHECK(take(text) == R"({"n":3,"edges":{"R":[[0,1],[0,2],[1,2]]}})");
}

TEST_CASE("patterns") {
  Sig s(kSig);
  Pat cherry(s, R"({"structure": {"n": 3, "edges": {"R": [[0,2],[1,2]]}}, "base": [0, 1]})");
  char* text = nullptr;
  REQUIRE(rslab_pattern_describe(cherry.p, &text) == RSLAB_OK);
  auto j = nlohmann::json::parse(take(text));
  CHECK(j["v"] == 1);
  CHECK(j["strong"] == false);
  CHECK(j["intrinsic"] == true);
  CHECK(j["primitive"] == false);
  rslab_pattern* bad = nullptr;
  CHECK(rslab_pattern_parse(s.p, R"({"structure": {"n": 1, "edges": {}}, "base": [3]})", &bad) != RSLAB_OK);
  CHECK(bad == nullptr);
}

TEST_CASE("sampling and probabilities") {
  Sig s(kSig55);
  Str a, b;
  REQUIRE(rslab_sample(s.p, 50, 9, 2, &a.p) == RSLAB_OK);
  REQUIRE(rslab_sample(s.p, 50, 9, 2, &b.p) == RSLAB_OK);
  char* ta = nullptr;
  char* tb = nullptr;
  REQUIRE(rslab_structure_serialize(a.p, &ta) == RSLAB_OK);
  REQUIRE(rslab_structure_serialize(b.p, &tb) == RSLAB_OK);
  CHECK(take(ta) == take(tb));

  Str empty3(s, R"({"n": 3, "edges": {}})");
  double lp = 0;
  REQUIRE(rslab_log_prob(empty3.p, &lp) == RSLAB_OK);
  CHECK(lp == doctest::Approx(3 * std::log(1 - std::pow(3.0, -0.55))).epsilon(1e-12));
}

TEST_CASE("experiments and reports") {
  Sig s(kSig55);
  Pat edge(s, R"({"structure": {"n": 2, "edges": {"R": [[0,1]]}}, "base": [0]})");
  rslab_experiment_config cfg;
  rslab_experiment_config_init(&cfg);
  CHECK(cfg.trials == 20);
  CHECK(cfg.embedding_cap == 200);
  CHECK(cfg.c1 == 10.0);
  CHECK(cfg.m == 2);
  const uint32_t grid[] = {64, 128, 256};
  cfg.n_grid = grid;
  cfg.n_grid_len = 3;
  cfg.trials = 5;
  cfg.embedding_cap = 20;

  rslab_report* r = nullptr;
  REQUIRE(rslab_ext_stats(edge.p, &cfg, &r) == RSLAB_OK);
  double slope = 0, residual = 0;
  int valid = 0;
  REQUIRE(rslab_report_slope(r, &slope, &residual, &valid) == RSLAB_OK);
  CHECK(valid == 1);
  CHECK(slope > 0.3);
  CHECK(slope < 0.6);
  char* text = nullptr;
  REQUIRE(rslab_report_csv(r, 0, &text) == RSLAB_OK);
  const std::string csv = take(text);
  CHECK(csv.rfind("n,trials,mean,min,max,stddev,freq,seconds\n", 0) == 0);
  REQUIRE(rslab_report_json(r, 1, &text) == RSLAB_OK);
  auto j = nlohmann::json::parse(take(text));
  CHECK(j["rows"].size() == 3);
  rslab_report_free(r);

  cfg.n_grid_len = 0;
  CHECK(rslab_ext_stats(edge.p, &cfg, &r) == RSLAB_ERR_INVALID_ARGUMENT);

  Str k4(s, R"({"n": 4, "edges": {"R": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}})");
  Str point(s, R"({"n": 1, "edges": {}})");
  cfg.n_grid_len = 1;
  // K4 has delta 4 - 6(0.55) = 0.7 > 0 here: not a rare substructure.
  CHECK(rslab_rare_substructure(k4.p, &cfg, &r) == RSLAB_ERR_PRECONDITION);

  REQUIRE(rslab_empty_closure(s.p, &cfg, &r) == RSLAB_OK);
  rslab_report_free(r);
  REQUIRE(rslab_zero_one(edge.p, &cfg, &r) == RSLAB_OK);
  rslab_report_free(r);

  rslab_qe_config qc;
  rslab_qe_config_init(&qc);
  CHECK(qc.depth == 1);
  CHECK(qc.pairs == 50);
  qc.same_tuple = 1;
  qc.pairs = 5;
  Str g;
  REQUIRE(rslab_sample(s.p, 30, 1, 0, &g.p) == RSLAB_OK);
  REQUIRE(rslab_qe_probe(g.p, g.p, &qc, &r) == RSLAB_OK);
  REQUIRE(rslab_report_json(r, 0, &text) == RSLAB_OK);
  auto q = nlohmann::json::parse(take(text));
  for (const auto& row : q["rows"]) CHECK(row["freq"].get<double>() == 1.0);
  rslab_report_free(r);
}

TEST_CASE("generic chain log") {
  Sig s(kSig);
  char* text = nullptr;
  REQUIRE(rslab_generic_build(s.p, 16, 2, 1, 3, 0, &text) == RSLAB_OK);
  auto j = nlohmann::json::parse(take(text));
  CHECK(j["validation"]["ok"] == true);
  CHECK(j["validation"]["problems"].empty());
  char* again = nullptr;
  REQUIRE(rslab_generic_build(s.p, 16, 2, 1, 3, 0, &again) == RSLAB_OK);
  CHECK(nlohmann::json::parse(take(again)) == j);
}
