#pragma once

#include <functional>
#include <vector>

#include "rslab/core/structure.hpp"

namespace rslab {

/// One representative per isomorphism type of structures on `size` vertices,
/// where the vertices {0, ..., base_size-1} form a distinguished base that
/// isomorphisms must map onto itself. Representatives are the canonical
/// (minimal-code) labelling; output is ordered by code.
///
/// Throws ErrorCode::limit if the search space is too large for brute force.
std::vector<Structure> enumerate_types(const SignaturePtr& sig, Vertex size, Vertex base_size = 0);

}  // namespace rslab
