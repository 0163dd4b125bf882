#pragma once

// Shared between map_analysis and family_analysis.

#include <optional>
#include <span>
#include <vector>

#include "polytopo/map_analysis.hpp"

namespace polytopo::detail {

/// Strict mode of the positive counts. Throws NotGenericallyFiniteError
/// when no trial was finite and InconclusiveError on ties.
DegreeResult degree_from_counts(const std::vector<std::optional<std::size_t>>& counts,
                                const char* what);

/// Quotient dimension of the fibre ideal over y, or nullopt when the fibre
/// is positive dimensional.
std::optional<std::size_t> fiber_trial(const PolynomialMap& f, std::span<const Rational> y,
                                       const GroebnerLimits& limits);

std::vector<Rational> generic_target_for(const PolynomialMap& f, Sampler& rng);

}  // namespace polytopo::detail
