#pragma once

// Upper bounds on the number of topological types of proper members of a
// family: subgroups of index mu in pi_1 of the complement of the
// bifurcation set.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polytopo/family.hpp"
#include "polytopo/group.hpp"
#include "polytopo/map_analysis.hpp"

namespace polytopo {

enum class Pi1Source { AutomaticFree, UserPresentation };

std::string to_string(Pi1Source s);

struct TypeBoundReport {
  std::size_t mu = 0;
  /// Number of points of B in the one-variable case; 0 otherwise.
  std::size_t r = 0;
  std::vector<std::string> b_description;
  Pi1Source pi1_source = Pi1Source::AutomaticFree;
  std::size_t subgroup_count = 0;
  std::size_t conjugacy_class_count = 0;
  /// Always an upper bound ("number of types <= bound"), never an exact count.
  std::size_t bound = 0;
  /// Set when the group is free and the census was checked against Hall's
  /// recursion.
  bool hall_checked = false;
  /// Family case: sample indices whose r differs from the generic value.
  std::vector<std::size_t> deviating_samples;
  std::vector<std::size_t> sample_r;
};

/// f: C -> C nonconstant. B is the set of critical values, pi_1(C \ B) is
/// free of rank #B.
TypeBoundReport type_bound_univariate(const PolynomialMap& f, const AnalysisOptions& options = {});

TypeBoundReport type_bound_with_presentation(const GroupPresentation& p, std::size_t mu,
                                             std::uint64_t node_budget = 10'000'000);

/// One-variable family: r is the mode of #B(f_m) over the samples (a tie is
/// inconclusive), mu = mu(F).
TypeBoundReport family_type_bound(const FamilyDescription& family,
                                  const std::vector<std::vector<Rational>>& samples,
                                  const AnalysisOptions& options = {});

}  // namespace polytopo
