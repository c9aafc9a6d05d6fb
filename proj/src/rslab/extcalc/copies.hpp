#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rslab/core/structure.hpp"
#include "rslab/extcalc/extension.hpp"

namespace rslab {

// `f` lists the images of pat.base() in order: f[j] is the image of
// pat.base()[j]. It must be an isomorphism-mode embedding of the base.

/// Distinct images of iso-mode extensions of f to the whole pattern, sorted.
std::vector<VertexSet> copies(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f);

/// chi_M(B/A): number of distinct copies of B over f(A).
std::size_t chi(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f);

/// chi*_M(B/A): size of a largest family of copies pairwise disjoint outside
/// f(A). Exact branch and bound.
std::size_t chi_star(const Structure& m, const ExtensionPattern& pat, std::span<const Vertex> f);

/// Largest number of pairwise disjoint sets among `sets`.
std::size_t max_disjoint_family(const std::vector<VertexSet>& sets);

}  // namespace rslab
