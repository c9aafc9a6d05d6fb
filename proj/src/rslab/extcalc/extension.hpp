#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "rslab/core/structure.hpp"
#include "rslab/dimension/dim_form.hpp"

namespace rslab {

/// Exhaustive extension tests refuse more than this many new vertices.
constexpr std::size_t kMaxExtensionVertices = 16;

/// A structure B together with a base A within it.
class ExtensionPattern {
 public:
  ExtensionPattern(Structure whole, VertexSet base);

  const Structure& whole() const noexcept { return whole_; }
  const VertexSet& base() const noexcept { return base_; }
  /// B - A, ascending.
  const VertexSet& extension() const noexcept { return extension_; }
  const Signature& signature() const noexcept { return whole_.signature(); }

  /// v(B/A) = |B - A|.
  std::size_t v() const noexcept { return extension_.size(); }
  const DimForm& e_rel() const noexcept { return e_rel_; }
  const DimForm& delta_rel() const noexcept { return delta_rel_; }
  double gamma_prod() const noexcept { return gamma_prod_; }

  /// The base as a standalone structure.
  Structure base_structure() const;

 private:
  Structure whole_;
  VertexSet base_;
  VertexSet extension_;
  DimForm e_rel_;
  DimForm delta_rel_;
  double gamma_prod_;
};

ExtensionPattern pattern_from_json(const nlohmann::json& j, SignaturePtr sig);
ExtensionPattern parse_pattern(std::string_view text, SignaturePtr sig);
nlohmann::ordered_json pattern_to_json(const ExtensionPattern& p);

// Relations between vertex sets A within B of one structure M; only the
// substructure induced on B matters. |B - A| is capped at
// kMaxExtensionVertices.

/// A <=_s B: delta(B1/A) > 0 for every B1 with A < B1 <= B.
bool is_strong(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b);
/// A <=_i B: A = B, or delta(B/B1) < 0 for every B1 with A <= B1 < B.
bool is_intrinsic(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b);
/// delta(B/A) > 0 and delta(B/A1) <= 0 for every A1 with A < A1 <= B.
bool is_primitive(const Structure& m, std::span<const Vertex> a, std::span<const Vertex> b);

bool is_strong(const ExtensionPattern& p);
bool is_intrinsic(const ExtensionPattern& p);
bool is_primitive(const ExtensionPattern& p);

/// Smallest B (first in lexicographic order among the smallest) with
/// A <= B <=_s C, where C is the whole of `c`. Such a B satisfies A <=_i B.
VertexSet intrinsic_strong_split(const Structure& c, std::span<const Vertex> a);

/// A chain A = A_0 < A_1 < ... < A_k = B of minimal intrinsic steps: each
/// A_{j+1} is a smallest set with A_j <=_i A_{j+1} (first in lexicographic
/// order), hence admits no intermediate intrinsic extension. Fails with a
/// precondition error unless A <=_i B.
std::vector<VertexSet> intrinsic_chain(const ExtensionPattern& p);

}  // namespace rslab
