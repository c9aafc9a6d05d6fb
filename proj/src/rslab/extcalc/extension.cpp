#include "rslab/extcalc/extension.hpp"

#include <algorithm>

#include "rslab/core/error.hpp"
#include "rslab/core/serialize.hpp"
#include "rslab/dimension/dimension.hpp"
#include "rslab/extcalc/relative_view.hpp"

namespace rslab {

ExtensionPattern::ExtensionPattern(Structure whole, VertexSet base)
    : whole_(std::move(whole)), base_(std::move(base)) {
  for (std::size_t j = 0; j < base_.size(); ++j) {
    if (base_[j] >= whole_.size()) fail(ErrorCode::invalid_argument, "base vertex out of range");
    if (j > 0 && base_[j - 1] >= base_[j]) fail(ErrorCode::invalid_argument, "base must be sorted and distinct");
  }
  extension_ = set_difference(full_set(whole_.size()), base_);
  e_rel_ = rslab::e_rel(whole_, base_);
  delta_rel_ = rslab::delta_rel(whole_, base_);
  gamma_prod_ = rslab::gamma_prod(whole_, base_);
}

Structure ExtensionPattern::base_structure() const { return induced_substructure(whole_, base_); }

ExtensionPattern pattern_from_json(const nlohmann::json& j, SignaturePtr sig) {
  if (!j.is_object() || !j.contains("structure")) fail(ErrorCode::parse, "pattern needs a 'structure'");
  Structure s = structure_from_json(j["structure"], std::move(sig));
  VertexSet base = j.contains("base") ? vertex_set_from_json(j["base"], s.size()) : VertexSet{};
  return ExtensionPattern(std::move(s), std::move(base));
}

ExtensionPattern parse_pattern(std::string_view text, SignaturePtr sig) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  return pattern_from_json(j, std::move(sig));
}

nlohmann::ordered_json pattern_to_json(const ExtensionPattern& p) {
  nlohmann::ordered_json j;
  j["structure"] = structure_to_json(p.whole());
  j["base"] = p.base();
  return j;
}

namespace {

RelativeView view_of(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b) {
  if (!is_subset(a, b)) fail(ErrorCode::invalid_argument, "base is not contained in the extension");
  VertexSet outside = set_difference(b, a);
  if (outside.size() > kMaxExtensionVertices) {
    fail(ErrorCode::limit, "extension adds " + std::to_string(outside.size()) + " vertices; at most " +
                               std::to_string(kMaxExtensionVertices) + " supported");
  }
  return RelativeView(m, a, outside);
}

bool strong_view(const RelativeView& view, const Signature& sig) {
  for (Mask y = 1; y <= view.full() && y != 0; ++y) {
    if (sign(view.delta_over_base(y), sig) != Sign::positive) return false;
  }
  return true;
}

bool intrinsic_view(const RelativeView& view, const Signature& sig) {
  const Mask full = view.full();
  if (full == 0) return true;
  const DimForm whole = view.delta_over_base(full);
  // Cheap necessary condition first: removing any single vertex must raise delta.
  for (std::size_t j = 0; j < view.size(); ++j) {
    if (sign(whole - view.delta_over_base(full & ~(Mask{1} << j)), sig) != Sign::negative) return false;
  }
  for (Mask y = 0; y < full; ++y) {
    if (sign(whole - view.delta_over_base(y), sig) != Sign::negative) return false;
  }
  return true;
}

}  // namespace

bool is_strong(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b) {
  return strong_view(view_of(m, a, b), m.signature());
}

bool is_intrinsic(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b) {
  return intrinsic_view(view_of(m, a, b), m.signature());
}

bool is_primitive(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b) {
  RelativeView view = view_of(m, a, b);
  const Signature& sig = m.signature();
  const Mask full = view.full();
  const DimForm whole = view.delta_over_base(full);
  if (sign(whole, sig) != Sign::positive) return false;
  for (Mask y = 1; y <= full && y != 0; ++y) {
    if (sign(whole - view.delta_over_base(y), sig) == Sign::positive) return false;
  }
  return true;
}

bool is_strong(const ExtensionPattern& p) {
  return is_strong(p.whole(), p.base(), full_set(p.whole().size()));
}

bool is_intrinsic(const ExtensionPattern& p) {
  return is_intrinsic(p.whole(), p.base(), full_set(p.whole().size()));
}

bool is_primitive(const ExtensionPattern& p) {
  return is_primitive(p.whole(), p.base(), full_set(p.whole().size()));
}

namespace {

// Supersets of `a` inside `pool_all`, by increasing size, lexicographic within
// a size; returns the first accepted.
template <class Accept>
VertexSet first_superset(std::span<const Vertex> a, std::span<const Vertex> pool_all, Accept&& accept) {
  VertexSet pool = set_difference(pool_all, a);
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Vertex> extra;
      for (auto i : idx) extra.push_back(pool[i]);
      VertexSet cand = set_union(a, extra);
      if (accept(cand)) return cand;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return VertexSet(pool_all.begin(), pool_all.end());
}

}  // namespace

VertexSet intrinsic_strong_split(const Structure& c, std::span<const Vertex> a) {
  VertexSet all = full_set(c.size());
  return first_superset(a, all, [&](const VertexSet& b) { return is_strong(c, b, all); });
}

std::vector<VertexSet> intrinsic_chain(const ExtensionPattern& p) {
  if (!is_intrinsic(p)) fail(ErrorCode::precondition, "not intrinsic");
  const VertexSet all = full_set(p.whole().size());
  std::vector<VertexSet> chain{p.base()};
  while (chain.back().size() < all.size()) {
    const VertexSet cur = chain.back();
    VertexSet next = first_superset(cur, all, [&](const VertexSet& y) {
      return y.size() > cur.size() && is_intrinsic(p.whole(), cur, y);
    });
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace rslab
