#pragma once

// Exact sparse multivariate polynomials over Q.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace polytopo {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses an integer or rational literal such as "3", "-7/2".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class VariableContext;
using ContextPtr = std::shared_ptr<const VariableContext>;

/// An ordered list of distinct variable names. Immutable once built; every
/// polynomial refers to exactly one context.
class VariableContext {
 public:
  explicit VariableContext(std::vector<std::string> names);

  static ContextPtr make(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws InputError for unknown names.
  std::size_t require(std::string_view name) const;

  bool operator==(const VariableContext& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
};

bool same_context(const ContextPtr& a, const ContextPtr& b);
bool is_identifier(std::string_view s);

/// Exponent vector; its length is the size of the owning context.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);

  static Monomial variable(std::size_t nvars, std::size_t index,
                           Exponent power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  // Plain lexicographic comparison of exponent vectors; for containers only.
  bool operator<(const Monomial& other) const { return exps_ < other.exps_; }

 private:
  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

/// Monomial orders: lex, graded reverse lex, and the block order that
/// eliminates the first `block` variables (grevlex inside each block).
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, 0); }
  static MonomialOrder elimination(std::size_t k) {
    return MonomialOrder(Kind::Block, k);
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t block() const noexcept { return block_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) > 0;
  }

  std::string describe() const;

  bool operator==(const MonomialOrder&) const = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_;
  std::size_t block_;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse polynomial with terms held strictly decreasing in grevlex order of
/// its context. No zero coefficients are ever stored, so equality is
/// structural. Groebner computations under other orders re-sort explicitly.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  /// Collects like terms, drops zeros and sorts.
  Polynomial(ContextPtr ctx, std::vector<Term> terms);

  static Polynomial constant(ContextPtr ctx, const Rational& c);
  static Polynomial variable(ContextPtr ctx, std::string_view name);
  static Polynomial variable(ContextPtr ctx, std::size_t index);
  static Polynomial monomial(ContextPtr ctx, Monomial m, const Rational& c);

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term (zero when absent).
  Rational constant_term() const;

  /// Leading term in the canonical (grevlex) order. Requires non-zero.
  const Term& leading_term() const { return terms_.front(); }
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Indices of variables with a positive exponent somewhere.
  std::vector<std::size_t> variables_used() const;
  bool uses_variable(std::size_t var) const { return degree_in(var) > 0; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) {
    return a *= c;
  }
  friend Polynomial operator*(const Rational& c, Polynomial a) {
    return a *= c;
  }

  Polynomial pow(unsigned exponent) const;

  /// Scales to leading coefficient 1. Zero stays zero.
  Polynomial monic() const;
  /// Scales to coprime integer coefficients with a positive leading
  /// coefficient. Zero stays zero.
  Polynomial primitive() const;

  /// Evaluates at a full point (length = context size).
  Rational evaluate(std::span<const Rational> point) const;
  /// Replaces the listed variables by constants; the context is unchanged.
  Polynomial substitute(const std::map<std::size_t, Rational>& values) const;
  Polynomial partial_derivative(std::size_t var) const;
  Polynomial partial_derivative(std::string_view var) const;

  /// Coefficients with respect to one variable: result[d] is the coefficient
  /// of var^d, a polynomial free of var (same context).
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

  /// Re-expresses the polynomial in another context by variable name. Every
  /// variable that actually occurs must exist in the target.
  Polynomial embed(const ContextPtr& target) const;

  bool operator==(const Polynomial& other) const;

 private:
  void check_same_context(const Polynomial& other, const char* op) const;
  void normalize();

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Parses the grammar: identifiers, integer/rational literals, + - * ^ and
/// parentheses. Exponents are non-negative integer literals.
Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx);
/// Canonical text; parse_polynomial(format(p)) == p.
std::string format(const Polynomial& p);

}  // namespace polytopo
