#include "rslab/core/serialize.hpp"

#include <charconv>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
}

Rational alpha_from_json(const nlohmann::json& a, const std::string& rel) {
  if (a.is_string()) return parse_rational(a.get<std::string>());
  if (a.is_object()) {
    if (!a.contains("num") || !a.contains("den") || !a["num"].is_number_integer() ||
        !a["den"].is_number_integer()) {
      fail(ErrorCode::parse, "alpha of '" + rel + "' must carry integer num/den");
    }
    auto den = a["den"].get<long long>();
    if (den == 0) fail(ErrorCode::parse, "alpha of '" + rel + "' has zero denominator");
    return Rational(a["num"].get<long long>(), den);
  }
  if (a.is_number()) {
    // Shortest round-trip decimal, so 0.55 reads as 11/20.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, a.get<double>());
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  fail(ErrorCode::parse, "alpha of '" + rel + "' must be a string, number or {num,den}");
}

}  // namespace

SignaturePtr signature_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("relations") || !j["relations"].is_array()) {
    fail(ErrorCode::parse, "signature needs a 'relations' array");
  }
  bool independence = true;
  if (j.contains("independence_mode")) {
    if (!j["independence_mode"].is_boolean()) fail(ErrorCode::parse, "'independence_mode' must be boolean");
    independence = j["independence_mode"].get<bool>();
  }
  std::vector<Relation> rels;
  for (const auto& r : j["relations"]) {
    if (!r.is_object() || !r.contains("name") || !r["name"].is_string()) {
      fail(ErrorCode::parse, "each relation needs a string 'name'");
    }
    Relation rel;
    rel.name = r["name"].get<std::string>();
    if (!r.contains("arity") || !r["arity"].is_number_integer() || r["arity"].get<long long>() < 1) {
      fail(ErrorCode::parse, "relation '" + rel.name + "' needs a positive integer 'arity'");
    }
    rel.arity = static_cast<std::uint32_t>(r["arity"].get<long long>());
    if (!r.contains("alpha")) fail(ErrorCode::parse, "relation '" + rel.name + "' needs 'alpha'");
    rel.alpha = alpha_from_json(r["alpha"], rel.name);
    if (r.contains("gamma")) {
      if (!r["gamma"].is_number()) fail(ErrorCode::parse, "gamma of '" + rel.name + "' must be a number");
      rel.gamma = r["gamma"].get<double>();
    }
    rels.push_back(std::move(rel));
  }
  return std::make_shared<const Signature>(std::move(rels), independence);
}

SignaturePtr parse_signature(std::string_view text) { return signature_from_json(parse_json(text)); }

nlohmann::ordered_json signature_to_json(const Signature& sig) {
  nlohmann::ordered_json j;
  j["independence_mode"] = sig.independence_mode();
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& r : sig.relations()) {
    nlohmann::ordered_json rj;
    rj["name"] = r.name;
    rj["arity"] = r.arity;
    rj["alpha"] = rational_to_string(r.alpha);
    rj["gamma"] = r.gamma;
    j["relations"].push_back(rj);
  }
  return j;
}

Structure structure_from_json(const nlohmann::json& j, SignaturePtr sig) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    fail(ErrorCode::parse, "structure needs an integer 'n'");
  }
  long long n = j["n"].get<long long>();
  if (n < 0 || n > 0x7fffffffLL) fail(ErrorCode::parse, "structure size out of range");
  std::vector<std::vector<Hyperedge>> edges(sig->size());
  if (j.contains("edges")) {
    if (!j["edges"].is_object()) fail(ErrorCode::parse, "'edges' must be an object keyed by relation name");
    for (const auto& [name, list] : j["edges"].items()) {
      RelIndex i = sig->find(name);
      if (i == sig->size()) fail(ErrorCode::parse, "unknown relation '" + name + "'");
      if (!list.is_array()) fail(ErrorCode::parse, "edges of '" + name + "' must be an array");
      for (const auto& e : list) {
        if (!e.is_array()) fail(ErrorCode::parse, "hyperedge of '" + name + "' must be an array");
        Hyperedge h;
        for (const auto& v : e) {
          if (!v.is_number_integer() || v.get<long long>() < 0) {
            fail(ErrorCode::parse, "hyperedge " + e.dump() + " of '" + name + "' has a non-vertex entry");
          }
          long long x = v.get<long long>();
          if (x >= n) fail(ErrorCode::invalid_argument, "vertex out of range in relation '" + name + "' at hyperedge " + e.dump());
          h.push_back(static_cast<Vertex>(x));
        }
        edges[i].push_back(std::move(h));
      }
    }
  }
  return Structure(std::move(sig), static_cast<Vertex>(n), edges);
}

Structure parse_structure(std::string_view text, SignaturePtr sig) {
  return structure_from_json(parse_json(text), std::move(sig));
}

nlohmann::ordered_json structure_to_json(const Structure& s) {
  nlohmann::ordered_json j;
  j["n"] = s.size();
  nlohmann::ordered_json edges = nlohmann::ordered_json::object();
  for (RelIndex i = 0; i < s.relation_count(); ++i) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (EdgeId e = 0; e < s.edge_count(i); ++e) {
      auto ed = s.edge(i, e);
      list.push_back(std::vector<Vertex>(ed.begin(), ed.end()));
    }
    edges[s.signature().relation(i).name] = std::move(list);
  }
  j["edges"] = std::move(edges);
  return j;
}

std::string serialize_structure(const Structure& s) { return structure_to_json(s).dump(); }

VertexSet vertex_set_from_json(const nlohmann::json& j, Vertex universe) {
  if (!j.is_array()) fail(ErrorCode::parse, "vertex set must be an array");
  std::vector<Vertex> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= universe) {
      fail(ErrorCode::invalid_argument, "vertex " + v.dump() + " out of range");
    }
    out.push_back(static_cast<Vertex>(v.get<long long>()));
  }
  return make_vertex_set(std::move(out));
}

}  // namespace rslab
