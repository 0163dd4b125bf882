#include "polytopo/classification.hpp"

#include <map>

#include "polytopo/errors.hpp"

namespace polytopo {

std::string to_string(Pi1Source s) {
  return s == Pi1Source::AutomaticFree ? "automatic-free" : "user-presentation";
}

namespace {

void require_univariate(const PolynomialMap& f) {
  if (f.domain_dim() != 1 || f.target_dim() != 1)
    throw InputError("a one-variable map C -> C is required");
}

// B = critical values; S_f and Sing(Z) are empty for a nonconstant f: C -> C.
std::size_t point_count(const AlgebraicSet& b) {
  if (b.is_whole_space()) throw Error("bifurcation set of a nonconstant map is the whole line");
  if (b.is_empty()) return 0;
  return b.generators().front().total_degree();
}

TypeBoundReport census(const GroupPresentation& p, std::size_t mu, std::uint64_t budget) {
  if (mu == 0) throw InputError("mu must be at least 1");
  TypeBoundReport out;
  out.mu = mu;
  auto li = low_index_subgroups(p, mu, budget);
  out.subgroup_count = li.subgroup_count;
  out.conjugacy_class_count = li.conjugacy_class_count;
  out.bound = out.subgroup_count;
  if (p.relators().empty() && p.rank() >= 1) {
    if (hall_count_free(p.rank(), mu) != Integer(static_cast<unsigned long>(li.subgroup_count)))
      throw Error("subgroup census disagrees with Hall's recursion");
    out.hall_checked = true;
  }
  return out;
}

}  // namespace

TypeBoundReport type_bound_univariate(const PolynomialMap& f, const AnalysisOptions& options) {
  require_univariate(f);
  if (f.components().front().is_constant()) throw InputError("constant map");
  if (!is_proper(f, options.limits)) throw Error("a nonconstant map C -> C must be proper");
  const std::size_t mu = f.components().front().total_degree();
  const AlgebraicSet b = critical_values(f, options.limits);
  const std::size_t r = point_count(b);
  TypeBoundReport out = census(GroupPresentation::free_group(r), mu, 10'000'000);
  out.r = r;
  out.b_description = b.to_strings();
  out.pi1_source = Pi1Source::AutomaticFree;
  return out;
}

TypeBoundReport type_bound_with_presentation(const GroupPresentation& p, std::size_t mu,
                                             std::uint64_t node_budget) {
  TypeBoundReport out = census(p, mu, node_budget);
  out.pi1_source = Pi1Source::UserPresentation;
  out.b_description = {"user-supplied fundamental group"};
  return out;
}

TypeBoundReport family_type_bound(const FamilyDescription& family,
                                  const std::vector<std::vector<Rational>>& samples,
                                  const AnalysisOptions& options) {
  if (family.domain_vars().size() != 1 || family.target_vars().size() != 1)
    throw InputError("family_type_bound needs one-variable members");
  if (samples.empty()) throw InputError("at least one parameter sample is required");
  const FamilyDegree fd = family_degree(family, options);
  if (fd.mu == 0) throw NotGenericallyFiniteError("family is not generically finite");

  std::vector<std::optional<std::size_t>> rs;
  std::map<std::size_t, std::size_t> tally;
  std::vector<std::string> first_b;
  for (const auto& m : samples) {
    const PolynomialMap fm = specialize(family, m);
    if (fm.components().front().is_constant()) {
      rs.push_back(std::nullopt);
      continue;
    }
    const AlgebraicSet b = critical_values(fm, options.limits);
    const std::size_t r = point_count(b);
    rs.push_back(r);
    ++tally[r];
  }
  if (tally.empty()) throw NotGenericallyFiniteError("every sampled member is constant");
  std::size_t best = 0, best_count = 0;
  bool tie = false;
  for (auto [r, c] : tally) {
    if (c > best_count) {
      best = r;
      best_count = c;
      tie = false;
    } else if (c == best_count) {
      tie = true;
    }
  }
  if (tie) throw InconclusiveError("no strict mode for the number of bifurcation points");

  TypeBoundReport out = census(GroupPresentation::free_group(best), fd.mu, 10'000'000);
  out.r = best;
  out.pi1_source = Pi1Source::AutomaticFree;
  out.b_description = {std::to_string(best) + " points for generic parameters"};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out.sample_r.push_back(rs[i].value_or(0));
    if (!rs[i] || *rs[i] != best) out.deviating_samples.push_back(i);
  }
  return out;
}

}  // namespace polytopo
