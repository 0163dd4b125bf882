#include "polytopo/family.hpp"

#include <map>
#include <set>

#include "analysis_internal.hpp"
#include "polytopo/errors.hpp"

namespace polytopo {

FamilyDescription::FamilyDescription(std::vector<std::string> params,
                                     std::vector<std::string> domain,
                                     std::vector<std::string> targets,
                                     const std::vector<std::string>& components)
    : params_(std::move(params)), domain_vars_(std::move(domain)),
      target_vars_(std::move(targets)) {
  std::set<std::string> seen;
  for (const auto* group : {&params_, &domain_vars_, &target_vars_})
    for (const auto& n : *group)
      if (!seen.insert(n).second)
        throw InputError("variable '" + n + "' appears in more than one variable group");
  if (components.size() != target_vars_.size())
    throw InputError("family has " + std::to_string(components.size()) +
                     " components but " + std::to_string(target_vars_.size()) +
                     " target variables");
  std::vector<std::string> names = params_;
  names.insert(names.end(), domain_vars_.begin(), domain_vars_.end());
  joint_ = VariableContext::make(std::move(names));
  domain_ = VariableContext::make(domain_vars_);
  VariableContext::make(target_vars_);  // validates target names
  for (const auto& c : components) components_.push_back(parse_polynomial(c, joint_));
}

PolynomialMap specialize(const FamilyDescription& family, std::span<const Rational> m) {
  if (m.size() != family.param_dim())
    throw InputError("parameter vector has length " + std::to_string(m.size()) +
                     ", expected " + std::to_string(family.param_dim()));
  std::map<std::size_t, Rational> values;
  for (std::size_t i = 0; i < m.size(); ++i) values.emplace(i, m[i]);
  std::vector<Polynomial> comps;
  for (const auto& c : family.components())
    comps.push_back(c.substitute(values).embed(family.domain_context()));
  return PolynomialMap(family.domain_context(), family.target_vars(), std::move(comps));
}

namespace {

std::vector<Rational> random_parameters(const FamilyDescription& family, Sampler& rng) {
  std::vector<Rational> m;
  for (std::size_t i = 0; i < family.param_dim(); ++i) m.push_back(rng.generic_rational());
  return m;
}

}  // namespace

std::vector<std::vector<Rational>> random_parameter_samples(const FamilyDescription& family,
                                                            std::size_t count,
                                                            std::uint64_t seed) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t k = 0; k < count; ++k) {
    Sampler rng(derive_seed(seed, 3, k));
    out.push_back(random_parameters(family, rng));
  }
  return out;
}

FamilyDegree family_degree(const FamilyDescription& family, const AnalysisOptions& options) {
  if (options.trials == 0) throw InputError("at least one trial is required");
  // A fibre of G over (m*, y*) is {m*} x f_{m*}^{-1}(y*).
  std::vector<std::optional<std::size_t>> counts(options.trials);
  for (std::size_t k = 0; k < options.trials; ++k) {
    Sampler rng(derive_seed(options.seed, 4, k));
    const auto m = random_parameters(family, rng);
    const PolynomialMap member = specialize(family, m);
    const auto y = detail::generic_target_for(member, rng);
    counts[k] = detail::fiber_trial(member, y, options.limits);
  }
  FamilyDegree out;
  out.trials = options.trials;
  try {
    const DegreeResult d = detail::degree_from_counts(counts, "family degree");
    out.mu = d.mu;
    out.generically_finite = true;
    out.disagreements = d.disagreements;
  } catch (const NotGenericallyFiniteError&) {
    // mu(F) = 0 convention.
    out.mu = 0;
    out.generically_finite = false;
  }
  return out;
}

FamilySignature signature_of(const AnalysisReport& report) {
  FamilySignature s;
  s.mu = report.degree.mu;
  s.proper = report.proper;
  s.bifurcation_shape = report.bifurcation.is_empty() ? std::vector<std::uint64_t>{}
                                                      : report.bifurcation.degree_shape();
  s.jelonek_shape =
      report.jelonek.is_empty() ? std::vector<std::uint64_t>{} : report.jelonek.degree_shape();
  return s;
}

SampledMember analyze_member(const FamilyDescription& family, std::span<const Rational> m,
                             const AnalysisOptions& options) {
  SampledMember out;
  out.parameter_value.assign(m.begin(), m.end());
  const PolynomialMap member = specialize(family, m);
  try {
    out.report = bifurcation_set(member, options);
    out.signature = signature_of(*out.report);
  } catch (const CapacityError&) {
    throw;
  } catch (const Error& e) {
    out.degenerate = true;
    out.reason = e.what();
    out.report.reset();
  }
  return out;
}

FamilyPartition partition_family(const FamilyDescription& family,
                                 const std::vector<std::vector<Rational>>& samples,
                                 const AnalysisOptions& options) {
  if (samples.empty()) throw InputError("partition needs at least one sample");
  FamilyPartition out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    AnalysisOptions per = options;
    per.seed = derive_seed(options.seed, 5, i);
    out.members.push_back(analyze_member(family, samples[i], per));
  }
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    const auto& member = out.members[i];
    if (member.degenerate) {
      out.degenerate.push_back(i);
      continue;
    }
    auto it = std::find_if(out.classes.begin(), out.classes.end(),
                           [&](const SignatureClass& c) { return c.signature == *member.signature; });
    if (it == out.classes.end()) {
      out.classes.push_back(SignatureClass{*member.signature, {i}});
      if (member.signature->proper) ++out.proper_class_count;
    } else {
      it->samples.push_back(i);
    }
  }
  return out;
}

ConstancyReport check_generic_constancy(const FamilyDescription& family,
                                        const std::vector<std::vector<Rational>>& samples,
                                        const AnalysisOptions& options) {
  ConstancyReport out;
  out.family = family_degree(family, options);
  out.total = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    AnalysisOptions per = options;
    per.seed = derive_seed(options.seed, 6, i);
    std::size_t mu = 0;
    try {
      mu = topological_degree(specialize(family, samples[i]), per).mu;
    } catch (const CapacityError&) {
      throw;
    } catch (const Error&) {
      mu = 0;
    }
    out.member_degrees.push_back(mu);
    if (mu == out.family.mu && mu != 0)
      ++out.agreeing;
    else
      out.violators.push_back(i);
  }
  return out;
}

}  // namespace polytopo
