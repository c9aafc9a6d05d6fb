#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "rslab/core/embedding.hpp"
#include "rslab/extcalc/closure.hpp"
#include "rslab/extcalc/extension.hpp"

namespace rslab {

/// closure(G, A, m) == C.
bool closure_matches(const Structure& g, std::span<const Vertex> a, std::span<const Vertex> c, std::size_t m);

/// Looks for an iso-mode extension g of f (images of pat.base() in order) to
/// the whole pattern such that
///   cl^m(gB) = gB u cl^m(fA), and
///   gB and cl^m(fA) meet exactly in fA, with every hyperedge of G inside
///   their union lying inside one of them (free join over fA).
/// Returns the first such map (indexed by pattern vertex) in enumeration
/// order. Throws ErrorCode::precondition unless A <=_s B.
std::optional<VertexMap> semigeneric_witness(ClosureEngine& engine, const ExtensionPattern& pat,
                                             std::span<const Vertex> f);
std::optional<VertexMap> semigeneric_witness(const Structure& g, const ExtensionPattern& pat,
                                             std::span<const Vertex> f, std::size_t m);

}  // namespace rslab
