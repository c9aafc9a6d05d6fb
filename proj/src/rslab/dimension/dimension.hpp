#pragma once

#include <cstddef>
#include <span>

#include "rslab/core/structure.hpp"
#include "rslab/dimension/dim_form.hpp"

namespace rslab {

/// delta(A) = |A| - sum_i alpha_i * w_i(A).
DimForm delta(const Structure& a);

/// delta of the substructure induced on `subset` (sorted), without building it.
DimForm delta_of(const Structure& m, std::span<const Vertex> subset);

/// delta(B) - delta(A) for the base A inside B.
DimForm delta_rel(const Structure& b, std::span<const Vertex> base);

/// e(B/A) = e(B) - e(A): coefficient i counts the R_i hyperedges of B not
/// inside the base.
DimForm e_rel(const Structure& b, std::span<const Vertex> base);

/// Product of gamma_i over the hyperedges of B not contained in the base.
double gamma_prod(const Structure& b, std::span<const Vertex> base);

/// Minimum of delta over all B with A within B within N and |B - A| <= cap.
/// With cap >= |N| - |A| this is d_N(A).
DimForm d_cap(const Structure& n, std::span<const Vertex> a, std::size_t cap);

}  // namespace rslab
