#include "polytopo/map_analysis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "analysis_internal.hpp"
#include "polytopo/errors.hpp"

namespace polytopo {

// ---------------------------------------------------------------------------
// PolynomialMap

PolynomialMap::PolynomialMap(ContextPtr domain, std::vector<std::string> targets,
                             std::vector<Polynomial> components)
    : domain_(std::move(domain)), components_(std::move(components)) {
  for (const auto& t : targets)
    if (domain_->index_of(t))
      throw InputError("variable '" + t + "' is both a domain and a target variable");
  target_ = VariableContext::make(std::move(targets));
  if (components_.size() != target_->size())
    throw InputError("map has " + std::to_string(components_.size()) +
                     " components but " + std::to_string(target_->size()) +
                     " target variables");
  if (domain_->size() == 0) throw InputError("map needs at least one domain variable");
  for (auto& c : components_) c = c.embed(domain_);
}

PolynomialMap PolynomialMap::parse(std::vector<std::string> domain_vars,
                                   std::vector<std::string> target_vars,
                                   const std::vector<std::string>& components) {
  auto ctx = VariableContext::make(std::move(domain_vars));
  std::vector<Polynomial> comps;
  for (const auto& c : components) comps.push_back(parse_polynomial(c, ctx));
  return PolynomialMap(ctx, std::move(target_vars), std::move(comps));
}

std::vector<Rational> PolynomialMap::apply(std::span<const Rational> x) const {
  std::vector<Rational> y;
  for (const auto& c : components_) y.push_back(c.evaluate(x));
  return y;
}

// ---------------------------------------------------------------------------
// AlgebraicSet

AlgebraicSet AlgebraicSet::whole(ContextPtr ctx) { return AlgebraicSet(std::move(ctx), {}); }

AlgebraicSet AlgebraicSet::empty(ContextPtr ctx) {
  auto one = Polynomial::constant(ctx, 1);
  return AlgebraicSet(std::move(ctx), {one});
}

namespace {

bool canonical_less(const Polynomial& a, const Polynomial& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return format(a) < format(b);
}

}  // namespace

AlgebraicSet AlgebraicSet::from_generators(ContextPtr ctx, std::vector<Polynomial> gens,
                                           const GroebnerLimits& limits) {
  std::vector<Polynomial> work;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    Polynomial e = g.embed(ctx);
    if (e.is_constant()) return empty(ctx);
    work.push_back(squarefree_part_multivariate(e, limits));
  }
  if (work.size() > 1) {
    GroebnerBasis gb = buchberger(Ideal(ctx, work), limits);
    if (gb.is_unit()) return empty(ctx);
    work = gb.elements();
    if (work.size() > 1) {
      // Radical-style cleanup of each basis element keeps shapes small.
      for (auto& w : work) w = squarefree_part_multivariate(w, limits);
    }
  }
  for (auto& w : work) w = w.primitive();
  std::sort(work.begin(), work.end(), canonical_less);
  work.erase(std::unique(work.begin(), work.end()), work.end());
  return AlgebraicSet(std::move(ctx), std::move(work));
}

bool AlgebraicSet::is_empty() const {
  return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero();
}

bool AlgebraicSet::contains(std::span<const Rational> point) const {
  return std::all_of(gens_.begin(), gens_.end(),
                     [&](const Polynomial& g) { return g.evaluate(point) == 0; });
}

bool AlgebraicSet::touches(std::span<const Rational> point) const {
  return std::any_of(gens_.begin(), gens_.end(),
                     [&](const Polynomial& g) { return g.evaluate(point) == 0; });
}

std::vector<std::string> AlgebraicSet::to_strings() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(format(g));
  return out;
}

std::vector<std::uint64_t> AlgebraicSet::degree_shape() const {
  std::vector<std::uint64_t> out;
  for (const auto& g : gens_) out.push_back(g.total_degree());
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraicSet set_union(const AlgebraicSet& a, const AlgebraicSet& b,
                       const GroebnerLimits& limits) {
  if (!same_context(a.context(), b.context()))
    throw InputError("union of algebraic sets in different contexts");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (a.is_whole_space() || b.is_whole_space()) return AlgebraicSet::whole(a.context());
  // V(I) u V(J) = V(IJ).
  std::vector<Polynomial> products;
  for (const auto& g : a.generators())
    for (const auto& h : b.generators()) products.push_back(g * h);
  return AlgebraicSet::from_generators(a.context(), std::move(products), limits);
}

// ---------------------------------------------------------------------------
// helpers

namespace {

std::string fresh_name(const std::string& base, std::initializer_list<const ContextPtr*> ctxs) {
  std::string name = base;
  for (;;) {
    bool clash = false;
    for (const auto* c : ctxs) clash = clash || (*c)->index_of(name).has_value();
    if (!clash) return name;
    name += "_";
  }
}

// Context listing domain variables first (to be eliminated), then `middle`,
// then the target variables.
ContextPtr joint_context(const PolynomialMap& f, const std::vector<std::string>& middle) {
  std::vector<std::string> names = f.domain()->names();
  names.insert(names.end(), middle.begin(), middle.end());
  names.insert(names.end(), f.target()->names().begin(), f.target()->names().end());
  return VariableContext::make(std::move(names));
}

// z_j - f_j(x) in the joint context.
std::vector<Polynomial> graph_equations(const PolynomialMap& f, const ContextPtr& joint) {
  std::vector<Polynomial> out;
  for (std::size_t j = 0; j < f.target_dim(); ++j)
    out.push_back(Polynomial::variable(joint, f.target()->name(j)) -
                  f.components()[j].embed(joint));
  return out;
}

std::vector<Polynomial> restrict_all(const std::vector<Polynomial>& ps, const ContextPtr& ctx) {
  std::vector<Polynomial> out;
  for (const auto& p : ps) out.push_back(p.embed(ctx));
  return out;
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m, const ContextPtr& ctx) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ctx, 1);
  if (n == 1) return m[0][0];
  Polynomial det(ctx);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][col] * determinant(std::move(minor), ctx);
    if (col % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

GroebnerBasis fiber_basis(const PolynomialMap& f, std::span<const Rational> y,
                          const GroebnerLimits& limits) {
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < f.target_dim(); ++j)
    gens.push_back(f.components()[j] - Polynomial::constant(f.domain(), y[j]));
  bool all_constant_zero = std::all_of(gens.begin(), gens.end(),
                                       [](const Polynomial& g) { return g.is_zero(); });
  if (all_constant_zero) {
    // f_j == y_j identically: the fibre is the whole domain.
    return GroebnerBasis(f.domain(), MonomialOrder::grevlex(), {}, true);
  }
  return buchberger(Ideal(f.domain(), std::move(gens)), limits);
}

// Generic target for one trial. Maps onto the whole target space use random
// targets; maps into a smaller image use the image of a random point.
std::vector<Rational> generic_target(const PolynomialMap& f, Sampler& rng) {
  std::vector<Rational> y;
  if (f.domain_dim() >= f.target_dim()) {
    for (std::size_t j = 0; j < f.target_dim(); ++j) y.push_back(rng.generic_rational());
    return y;
  }
  std::vector<Rational> x;
  for (std::size_t i = 0; i < f.domain_dim(); ++i) x.push_back(rng.generic_rational());
  return f.apply(x);
}

}  // namespace

// ---------------------------------------------------------------------------
// degree

namespace detail {

// Strict mode of non-zero counts; nullopt if no finite trial, throws on ties.
DegreeResult degree_from_counts(const std::vector<std::optional<std::size_t>>& counts,
                                const char* what) {
  DegreeResult r;
  r.trials = counts.size();
  std::map<std::size_t, std::size_t> freq;
  for (const auto& c : counts)
    if (c && *c > 0) {
      ++freq[*c];
      ++r.finite_trials;
    }
  if (freq.empty())
    throw NotGenericallyFiniteError(std::string(what) +
                                    ": no trial produced a finite non-empty fibre");
  std::size_t best = 0, best_count = 0;
  bool tie = false;
  for (const auto& [value, n] : freq) {
    if (n > best_count) {
      best = value;
      best_count = n;
      tie = false;
    } else if (n == best_count) {
      tie = true;
    }
  }
  if (tie) throw InconclusiveError(std::string(what) + ": fibre counts have no strict mode");
  r.mu = best;
  r.disagreements = r.finite_trials - best_count;
  return r;
}

std::optional<std::size_t> fiber_trial(const PolynomialMap& f, std::span<const Rational> y,
                                       const GroebnerLimits& limits) {
  GroebnerBasis gb = fiber_basis(f, y, limits);
  if (gb.size() == 0 || !is_zero_dimensional(gb)) return std::nullopt;
  return quotient_dimension(gb);
}

std::vector<Rational> generic_target_for(const PolynomialMap& f, Sampler& rng) {
  return generic_target(f, rng);
}

}  // namespace detail

DegreeResult topological_degree(const PolynomialMap& f, const AnalysisOptions& options) {
  if (options.trials == 0) throw InputError("at least one trial is required");
  std::vector<std::optional<std::size_t>> counts(options.trials);
  for (std::size_t k = 0; k < options.trials; ++k) {
    Sampler rng(derive_seed(options.seed, 1, k));
    const auto y = generic_target(f, rng);
    counts[k] = detail::fiber_trial(f, y, options.limits);
  }
  return detail::degree_from_counts(counts, "topological degree");
}

// ---------------------------------------------------------------------------
// minimal polynomials and the non-properness set

namespace {

struct CoordinateRelations {
  ContextPtr tz;              // (t, z_1, ..., z_l)
  GroebnerBasis basis;        // relation ideal in tz under block(1)
};

CoordinateRelations coordinate_relations(const PolynomialMap& f, std::size_t i,
                                         const GroebnerLimits& limits) {
  if (i >= f.domain_dim()) throw InputError("coordinate index out of range");
  const std::string t = fresh_name("t", {&f.domain(), &f.target()});
  auto joint = joint_context(f, {t});
  auto gens = graph_equations(f, joint);
  gens.push_back(Polynomial::variable(joint, t) -
                 Polynomial::variable(joint, f.domain()->name(i)));
  Ideal eliminated = elimination_ideal(Ideal(joint, gens), f.domain_dim(), limits);

  std::vector<std::string> names{t};
  names.insert(names.end(), f.target()->names().begin(), f.target()->names().end());
  auto tz = VariableContext::make(std::move(names));
  auto relations = restrict_all(eliminated.generators(), tz);
  if (relations.empty())
    throw NotGenericallyFiniteError("no algebraic relation for coordinate " +
                                    f.domain()->name(i));
  GroebnerBasis basis = buchberger(Ideal(tz, relations, MonomialOrder::elimination(1)), limits);
  return CoordinateRelations{tz, std::move(basis)};
}

}  // namespace

MinimalPolynomial minimal_polynomial_of_coordinate(const PolynomialMap& f, std::size_t i,
                                                   const GroebnerLimits& limits) {
  auto rel = coordinate_relations(f, i, limits);
  std::optional<Polynomial> best;
  for (const auto& e : rel.basis.elements()) {
    const auto d = e.degree_in(0);
    if (d == 0) continue;
    if (!best || d < best->degree_in(0)) best = e;
  }
  if (!best)
    throw NotGenericallyFiniteError("coordinate " + f.domain()->name(i) +
                                    " is not algebraic over the target");
  Polynomial g = *best;
  // Primitive over Q[z]: divide by the gcd of the t-coefficients.
  Polynomial content(rel.tz);
  for (const auto& c : g.coefficients_in(0)) {
    content = polynomial_gcd(content, c, limits);
    if (content.is_constant()) break;
  }
  if (!content.is_constant()) g = exact_quotient(g, content);
  // Squarefree in t.
  Polynomial common = polynomial_gcd(g, g.partial_derivative(std::size_t{0}), limits);
  if (!common.is_constant()) g = exact_quotient(g, common);
  g = g.primitive();

  MinimalPolynomial mp;
  mp.variable_index = i;
  mp.t_degree = g.degree_in(0);
  mp.leading_coefficient = g.coefficients_in(0).back().embed(f.target());
  mp.poly = std::move(g);
  return mp;
}

AlgebraicSet coordinate_nonfinite_locus(const PolynomialMap& f, std::size_t i,
                                        const GroebnerLimits& limits) {
  auto rel = coordinate_relations(f, i, limits);
  std::vector<Polynomial> gens;
  for (const auto& e : rel.basis.elements()) {
    // z-only elements cut out the image closure; the others contribute
    // their leading coefficient in t.
    gens.push_back(e.coefficients_in(0).back().embed(f.target()));
  }
  return AlgebraicSet::from_generators(f.target(), std::move(gens), limits);
}

AlgebraicSet non_properness_set(const PolynomialMap& f, const GroebnerLimits& limits) {
  AlgebraicSet acc = AlgebraicSet::empty(f.target());
  for (std::size_t i = 0; i < f.domain_dim(); ++i)
    acc = set_union(acc, coordinate_nonfinite_locus(f, i, limits), limits);
  return acc;
}

bool is_proper(const PolynomialMap& f, const GroebnerLimits& limits) {
  return non_properness_set(f, limits).is_empty();
}

// ---------------------------------------------------------------------------
// images, critical values, singular locus

AlgebraicSet image_closure(const PolynomialMap& f, const GroebnerLimits& limits) {
  auto joint = joint_context(f, {});
  Ideal eliminated = elimination_ideal(Ideal(joint, graph_equations(f, joint)),
                                       f.domain_dim(), limits);
  return AlgebraicSet::from_generators(f.target(),
                                       restrict_all(eliminated.generators(), f.target()), limits);
}

AlgebraicSet critical_values(const PolynomialMap& f, const GroebnerLimits& limits) {
  const std::size_t n = f.domain_dim();
  const std::size_t l = f.target_dim();
  if (l != n && l != n + 1)
    throw UnsupportedError("critical values need l = n or l = n + 1 (got n = " +
                           std::to_string(n) + ", l = " + std::to_string(l) + ")");
  const auto& dom = f.domain();
  std::vector<std::vector<Polynomial>> jac(l, std::vector<Polynomial>(n));
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < n; ++c) jac[r][c] = f.components()[r].partial_derivative(c);

  std::vector<Polynomial> minors;
  if (l == n) {
    minors.push_back(determinant(jac, dom));
  } else {
    for (std::size_t skip = 0; skip < l; ++skip) {
      std::vector<std::vector<Polynomial>> sub;
      for (std::size_t r = 0; r < l; ++r)
        if (r != skip) sub.push_back(jac[r]);
      minors.push_back(determinant(std::move(sub), dom));
    }
  }
  minors.erase(std::remove_if(minors.begin(), minors.end(),
                              [](const Polynomial& p) { return p.is_zero(); }),
               minors.end());
  if (minors.empty())
    throw NotGenericallyFiniteError("Jacobian has deficient rank everywhere (map not dominant)");

  auto joint = joint_context(f, {});
  auto gens = graph_equations(f, joint);
  for (const auto& m : minors) gens.push_back(m.embed(joint));
  Ideal eliminated = elimination_ideal(Ideal(joint, gens), n, limits);
  if (eliminated.is_zero()) return AlgebraicSet::whole(f.target());
  return AlgebraicSet::from_generators(f.target(),
                                       restrict_all(eliminated.generators(), f.target()), limits);
}

AlgebraicSet singular_locus(const AlgebraicSet& z, const GroebnerLimits& limits) {
  if (z.is_whole_space() || z.is_empty()) return AlgebraicSet::empty(z.context());
  if (z.generators().size() > 1)
    throw UnsupportedError("unsupported: non-hypersurface image (" +
                           std::to_string(z.generators().size()) + " generators)");
  const Polynomial& g = z.generators().front();
  std::vector<Polynomial> gens{g};
  for (std::size_t v = 0; v < z.context()->size(); ++v) gens.push_back(g.partial_derivative(v));
  return AlgebraicSet::from_generators(z.context(), std::move(gens), limits);
}

AnalysisReport bifurcation_set(const PolynomialMap& f, const AnalysisOptions& options) {
  AnalysisReport r;
  r.seed = options.seed;
  r.trials = options.trials;
  r.degree = topological_degree(f, options);
  r.image = image_closure(f, options.limits);
  r.jelonek = non_properness_set(f, options.limits);
  r.proper = r.jelonek.is_empty();
  r.critical_values = critical_values(f, options.limits);
  r.singular_locus = singular_locus(r.image, options.limits);
  r.bifurcation = set_union(set_union(r.critical_values, r.jelonek, options.limits),
                            r.singular_locus, options.limits);
  return r;
}

// ---------------------------------------------------------------------------
// fibre counting

FiberCount count_fiber_distinct(const PolynomialMap& f, std::span<const Rational> y,
                                const AnalysisOptions& options) {
  if (y.size() != f.target_dim())
    throw InputError("target point has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(f.target_dim()));
  GroebnerBasis gb = fiber_basis(f, y, options.limits);
  if (gb.size() == 0 || !is_zero_dimensional(gb))
    throw InfiniteFiberError("fibre over the given point is infinite");
  FiberCount out;
  if (gb.is_unit()) {
    out.confirmed = true;
    return out;
  }
  out.with_multiplicity = quotient_dimension(gb);
  std::map<std::size_t, std::size_t> seen;
  const std::size_t cap = std::max<std::size_t>(1, options.linear_form_retries);
  for (std::size_t k = 0; k < cap; ++k) {
    Sampler rng(derive_seed(options.seed, 2, k));
    Polynomial form(f.domain());
    for (std::size_t i = 0; i < f.domain_dim(); ++i)
      form += Polynomial::variable(f.domain(), i) *
              Rational(static_cast<long>(rng.uniform(1, 1000)));
    const Dense minpoly = minimal_polynomial_in_quotient(gb, form);
    const std::size_t count = dense_squarefree(minpoly).size() - 1;
    ++out.attempts;
    out.distinct = std::max(out.distinct, count);
    // The multiplicity total cannot be exceeded; otherwise two independent
    // forms agreeing on the running maximum confirm it.
    if (out.distinct == out.with_multiplicity || (++seen[count] >= 2 && count == out.distinct)) {
      out.confirmed = true;
      break;
    }
  }
  return out;
}

}  // namespace polytopo
