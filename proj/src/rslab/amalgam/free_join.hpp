#pragma once

#include <span>

#include "rslab/core/embedding.hpp"
#include "rslab/core/structure.hpp"

namespace rslab {

struct FreeJoin {
  /// B on vertices 0..|B|-1, then C - A in increasing order of C's labels.
  Structure joined;
  /// Image in `joined` of each vertex of C.
  VertexMap c_map;
};

/// B (x)_A C: the union of B and C glued along A, with no relations besides
/// those of B and of C. a_in_b[j] and a_in_c[j] are the two copies of the j-th
/// vertex of A; the correspondence must be an isomorphism of the induced
/// structures, otherwise ErrorCode::invalid_argument.
FreeJoin free_join(const Structure& b, std::span<const Vertex> a_in_b, const Structure& c,
                   std::span<const Vertex> a_in_c);

struct AmalgamationVerdict {
  bool in_k0_plus = false;    // D in K0+
  bool c_strong_in_d = false;  // C <=_s D
  bool holds() const noexcept { return in_k0_plus && c_strong_in_d; }
};

/// Builds D = B (x)_A C and checks D in K0+ and C <=_s D. Throws
/// ErrorCode::precondition unless A <=_s B.
AmalgamationVerdict check_full_amalgamation(const Structure& b, std::span<const Vertex> a_in_b, const Structure& c,
                                            std::span<const Vertex> a_in_c);

}  // namespace rslab
