#pragma once

#include <cstddef>
#include <optional>

#include "rslab/core/structure.hpp"

namespace rslab {

/// Some vertex set S with delta(S) < 0 and |S| <= max_size (0 = no bound), or
/// nothing if there is none.
///
/// Light vertices (weighted incidence at most 1) are peeled first. Without an
/// effective size bound the rest is one minimum cut, since delta is
/// submodular. With a bound, connected sets of the peeled structure are
/// walked instead: a minimal violating set is connected. That walk is
/// exponential in the worst case.
std::optional<VertexSet> find_negative_subset(const Structure& m, std::size_t max_size = 0);

/// Every subset (of size <= max_size when nonzero) has delta >= 0.
bool in_k0_plus(const Structure& m, std::size_t max_size = 0);

}  // namespace rslab
