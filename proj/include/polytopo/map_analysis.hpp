#pragma once

// Invariants of a single polynomial map f: C^n -> C^l: topological degree,
// non-properness (Jelonek) set, critical values, image closure, its singular
// locus and the bifurcation set.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polytopo/groebner.hpp"
#include "polytopo/poly.hpp"
#include "polytopo/random.hpp"

namespace polytopo {

/// f = (f_1, ..., f_l) with components in the domain variables.
class PolynomialMap {
 public:
  PolynomialMap(ContextPtr domain, std::vector<std::string> targets,
                std::vector<Polynomial> components);
  /// Parses components from text in the domain variables.
  static PolynomialMap parse(std::vector<std::string> domain_vars,
                             std::vector<std::string> target_vars,
                             const std::vector<std::string>& components);

  const ContextPtr& domain() const noexcept { return domain_; }
  const ContextPtr& target() const noexcept { return target_; }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  std::size_t domain_dim() const noexcept { return domain_->size(); }
  std::size_t target_dim() const noexcept { return target_->size(); }

  std::vector<Rational> apply(std::span<const Rational> x) const;

 private:
  ContextPtr domain_;
  ContextPtr target_;
  std::vector<Polynomial> components_;
};

/// Vanishing locus of finitely many polynomials in the target variables.
/// No generators is the whole space, the single generator 1 the empty set.
/// Canonical form: each generator squarefree and primitive, multi-generator
/// sets replaced by their reduced grevlex basis, sorted and deduplicated.
class AlgebraicSet {
 public:
  AlgebraicSet() = default;
  static AlgebraicSet whole(ContextPtr ctx);
  static AlgebraicSet empty(ContextPtr ctx);
  static AlgebraicSet from_generators(ContextPtr ctx, std::vector<Polynomial> gens,
                                      const GroebnerLimits& limits = {});

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  bool is_whole_space() const noexcept { return gens_.empty(); }
  bool is_empty() const;
  bool contains(std::span<const Rational> point) const;
  /// True when some generator vanishes at the point.
  bool touches(std::span<const Rational> point) const;
  std::vector<std::string> to_strings() const;
  /// Total degrees of the generators, sorted.
  std::vector<std::uint64_t> degree_shape() const;

  bool operator==(const AlgebraicSet& other) const { return gens_ == other.gens_; }

 private:
  AlgebraicSet(ContextPtr ctx, std::vector<Polynomial> gens)
      : ctx_(std::move(ctx)), gens_(std::move(gens)) {}

  ContextPtr ctx_;
  std::vector<Polynomial> gens_;
};

AlgebraicSet set_union(const AlgebraicSet& a, const AlgebraicSet& b,
                       const GroebnerLimits& limits = {});

struct AnalysisOptions {
  std::size_t trials = 5;
  std::uint64_t seed = kDefaultSeed;
  std::size_t linear_form_retries = 5;
  GroebnerLimits limits{};
};

struct DegreeResult {
  std::size_t mu = 0;
  std::size_t trials = 0;
  std::size_t finite_trials = 0;   // zero-dimensional, non-empty fibres
  std::size_t disagreements = 0;   // finite trials whose count differs from mu
};

/// Number of points of a generic fibre, as the strict mode of the quotient
/// dimension over seeded random targets.
DegreeResult topological_degree(const PolynomialMap& f, const AnalysisOptions& options = {});

/// The relation of smallest positive degree in t satisfied by a domain
/// coordinate x_i over the target variables, in the context (t, z_1..z_l).
struct MinimalPolynomial {
  std::size_t variable_index = 0;
  Polynomial poly;
  std::uint32_t t_degree = 0;
  Polynomial leading_coefficient;  // in the target context
};

MinimalPolynomial minimal_polynomial_of_coordinate(const PolynomialMap& f, std::size_t i,
                                                   const GroebnerLimits& limits = {});

/// Target points over which the coordinate x_i fails to be integral:
/// the common zeros, on the image closure, of the t-leading coefficients of
/// the coordinate's relation ideal.
AlgebraicSet coordinate_nonfinite_locus(const PolynomialMap& f, std::size_t i,
                                        const GroebnerLimits& limits = {});

AlgebraicSet non_properness_set(const PolynomialMap& f, const GroebnerLimits& limits = {});
bool is_proper(const PolynomialMap& f, const GroebnerLimits& limits = {});
AlgebraicSet critical_values(const PolynomialMap& f, const GroebnerLimits& limits = {});
AlgebraicSet image_closure(const PolynomialMap& f, const GroebnerLimits& limits = {});
AlgebraicSet singular_locus(const AlgebraicSet& z, const GroebnerLimits& limits = {});

struct AnalysisReport {
  DegreeResult degree;
  bool proper = false;
  AlgebraicSet image;
  AlgebraicSet jelonek;
  AlgebraicSet critical_values;
  AlgebraicSet singular_locus;
  AlgebraicSet bifurcation;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

AnalysisReport bifurcation_set(const PolynomialMap& f, const AnalysisOptions& options = {});

struct FiberCount {
  std::size_t distinct = 0;
  std::size_t with_multiplicity = 0;
  std::size_t attempts = 0;
  /// False when every linear form was tried without a confirming repeat or
  /// reaching the multiplicity count (retry cap exhausted).
  bool confirmed = false;
};

/// Points of f^{-1}(y) counted without multiplicity, via the squarefree
/// degree of the minimal polynomial of random linear forms on the fibre.
FiberCount count_fiber_distinct(const PolynomialMap& f, std::span<const Rational> y,
                                const AnalysisOptions& options = {});

}  // namespace polytopo
