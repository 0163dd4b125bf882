#pragma once

// Buchberger-based ideal machinery: normal forms, reduced bases,
// elimination, zero-dimensional quotients, gcds and squarefree parts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polytopo/poly.hpp"

namespace polytopo {

/// Explicit resource caps for a Buchberger run. Exceeding either raises
/// CapacityError; there is no silent truncation.
struct GroebnerLimits {
  std::size_t max_basis = 2000;
  std::uint64_t max_reductions = 20'000'000;
};

/// Ideal given by generators in one context, together with the order used to
/// compute its basis. An empty generator list is the zero ideal.
class Ideal {
 public:
  Ideal(ContextPtr ctx, std::vector<Polynomial> generators,
        MonomialOrder order = MonomialOrder::grevlex());

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const MonomialOrder& order() const noexcept { return order_; }
  bool is_zero() const noexcept { return gens_.empty(); }

 private:
  ContextPtr ctx_;
  std::vector<Polynomial> gens_;
  MonomialOrder order_;
};

/// Term list sorted decreasingly under a specific monomial order.
using OrderedTerms = std::vector<Term>;

/// A Groebner basis together with the order it is a basis for.
class GroebnerBasis {
 public:
  GroebnerBasis(ContextPtr ctx, MonomialOrder order,
                std::vector<OrderedTerms> elements, bool reduced);

  const ContextPtr& context() const noexcept { return ctx_; }
  const MonomialOrder& order() const noexcept { return order_; }
  bool reduced() const noexcept { return reduced_; }
  std::size_t size() const noexcept { return ordered_.size(); }

  /// Elements as canonical polynomials, in basis order (increasing leading
  /// monomial under the basis order).
  std::vector<Polynomial> elements() const;
  const std::vector<OrderedTerms>& ordered_elements() const noexcept {
    return ordered_;
  }
  const Monomial& leading_monomial(std::size_t i) const {
    return ordered_[i].front().monomial;
  }
  /// True when the basis is {1}, i.e. the variety is empty.
  bool is_unit() const;

  bool operator==(const GroebnerBasis& other) const;

 private:
  ContextPtr ctx_;
  MonomialOrder order_;
  std::vector<OrderedTerms> ordered_;
  bool reduced_;
};

/// Re-sorts the terms of p under `order`.
OrderedTerms to_ordered(const Polynomial& p, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis);
bool ideal_contains(const GroebnerBasis& basis, const Polynomial& p);

/// Reduced Groebner basis of a nonzero ideal under its order. Uses the
/// normal selection strategy with the Gebauer-Moeller pair criteria.
GroebnerBasis buchberger(const Ideal& ideal, const GroebnerLimits& limits = {});

/// Generators of I intersected with the subring of the variables after the
/// first k, computed with the block order eliminating the first k. The
/// returned ideal lives in the same context and uses grevlex.
Ideal elimination_ideal(const Ideal& ideal, std::size_t k,
                        const GroebnerLimits& limits = {});

bool is_zero_dimensional(const GroebnerBasis& basis);

/// Standard monomials of a zero-dimensional basis, in increasing order.
struct QuotientBasis {
  std::vector<Monomial> standard_monomials;
  std::size_t dimension() const noexcept { return standard_monomials.size(); }
};

QuotientBasis quotient_basis(const GroebnerBasis& basis);
std::size_t quotient_dimension(const GroebnerBasis& basis);

/// Minimal polynomial of multiplication by `element` on the quotient algebra
/// of a zero-dimensional ideal, as coefficients c[0..d] of a monic
/// polynomial c[0] + c[1] T + ... + T^d. Its roots are the values of
/// `element` at the points of the variety.
std::vector<Rational> minimal_polynomial_in_quotient(const GroebnerBasis& basis,
                                                     const Polynomial& element);

// --- univariate helpers -----------------------------------------------------

/// Dense coefficients (index = degree) of a polynomial in one variable.
using Dense = std::vector<Rational>;

Dense dense_trim(Dense a);
Dense dense_gcd(Dense a, Dense b);
Dense dense_derivative(const Dense& a);
/// Exact division a / b; throws if the remainder is non-zero.
Dense dense_divide(const Dense& a, const Dense& b);
Dense dense_squarefree(const Dense& a);

/// Index of the single variable of a univariate polynomial, nullopt for
/// constants, throws InputError if several variables occur.
std::optional<std::size_t> univariate_variable(const Polynomial& u);

/// u / gcd(u, u'), monic. Requires a non-zero univariate polynomial.
Polynomial squarefree_part(const Polynomial& u);

// --- multivariate helpers ---------------------------------------------------

/// Exact quotient a / b; throws if b does not divide a.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);
/// Monic (canonical-order) gcd of two polynomials over Q. Computed by Euclid
/// in one variable and through the lcm ideal intersection otherwise.
Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b,
                          const GroebnerLimits& limits = {});
/// Product of the distinct irreducible factors, primitive.
Polynomial squarefree_part_multivariate(const Polynomial& p,
                                        const GroebnerLimits& limits = {});

}  // namespace polytopo
