#pragma once

// Algebraic families F: M x X -> Y, members f_m = F(m, .), the family degree
// mu(F) = mu(G) for G(m, x) = (m, F(m, x)), and sampled constancy checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polytopo/map_analysis.hpp"

namespace polytopo {

class FamilyDescription {
 public:
  FamilyDescription(std::vector<std::string> params, std::vector<std::string> domain,
                    std::vector<std::string> targets, const std::vector<std::string>& components);

  const std::vector<std::string>& params() const noexcept { return params_; }
  const std::vector<std::string>& domain_vars() const noexcept { return domain_vars_; }
  const std::vector<std::string>& target_vars() const noexcept { return target_vars_; }
  /// Components in the context (params..., domain...).
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const ContextPtr& joint_context() const noexcept { return joint_; }
  const ContextPtr& domain_context() const noexcept { return domain_; }
  std::size_t param_dim() const noexcept { return params_.size(); }

 private:
  std::vector<std::string> params_;
  std::vector<std::string> domain_vars_;
  std::vector<std::string> target_vars_;
  ContextPtr joint_;
  ContextPtr domain_;
  std::vector<Polynomial> components_;
};

/// f_m: substitutes the parameter values; the result lives over the domain
/// variables only.
PolynomialMap specialize(const FamilyDescription& family, std::span<const Rational> m);

struct FamilyDegree {
  /// 0 when G is not generically finite.
  std::size_t mu = 0;
  bool generically_finite = false;
  std::size_t trials = 0;
  std::size_t disagreements = 0;
};

/// mu(G) from seeded random (m, y) samples.
FamilyDegree family_degree(const FamilyDescription& family, const AnalysisOptions& options = {});

/// Coarse computable stand-in for the topological type of a member: the
/// degree, properness, and generator-degree shapes of B(f_m) and S_f.
struct FamilySignature {
  std::size_t mu = 0;
  bool proper = false;
  std::vector<std::uint64_t> bifurcation_shape;
  std::vector<std::uint64_t> jelonek_shape;

  auto operator<=>(const FamilySignature&) const = default;
};

FamilySignature signature_of(const AnalysisReport& report);

struct SampledMember {
  std::vector<Rational> parameter_value;
  std::optional<AnalysisReport> report;
  std::optional<FamilySignature> signature;
  /// Set when the member could not be analysed (not dominant, not
  /// generically finite, inconclusive...); `reason` says why.
  bool degenerate = false;
  std::string reason;
};

SampledMember analyze_member(const FamilyDescription& family, std::span<const Rational> m,
                             const AnalysisOptions& options = {});

struct SignatureClass {
  FamilySignature signature;
  std::vector<std::size_t> samples;  // indices into the input list
};

struct FamilyPartition {
  std::vector<SignatureClass> classes;  // in order of first appearance
  std::vector<std::size_t> degenerate;
  std::vector<SampledMember> members;
  std::size_t proper_class_count = 0;
};

/// Groups samples by signature. Sample i is analysed with a seed derived
/// from (options.seed, i), so results do not depend on evaluation order.
FamilyPartition partition_family(const FamilyDescription& family,
                                 const std::vector<std::vector<Rational>>& samples,
                                 const AnalysisOptions& options = {});

struct ConstancyReport {
  FamilyDegree family;
  std::size_t agreeing = 0;
  std::size_t total = 0;
  std::vector<std::size_t> violators;     // sample indices with mu(f_m) != mu(F)
  std::vector<std::size_t> member_degrees;  // 0 for degenerate members
};

ConstancyReport check_generic_constancy(const FamilyDescription& family,
                                        const std::vector<std::vector<Rational>>& samples,
                                        const AnalysisOptions& options = {});

/// `count` seeded random parameter vectors.
std::vector<std::vector<Rational>> random_parameter_samples(const FamilyDescription& family,
                                                            std::size_t count,
                                                            std::uint64_t seed);

}  // namespace polytopo
