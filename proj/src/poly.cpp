#include "polytopo/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "polytopo/errors.hpp"

namespace polytopo {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digits = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (std::isdigit(static_cast<unsigned char>(s[j]))) {
      digits = true;
    } else if (s[j] == '/' && !slash && digits && j + 1 < s.size()) {
      slash = true;
      digits = false;
    } else {
      throw InputError("invalid rational literal '" + s + "'");
    }
  }
  if (!digits) throw InputError("invalid rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s, 10);
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// VariableContext

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

VariableContext::VariableContext(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second)
      throw InputError("duplicate variable name '" + n + "'");
  }
}

ContextPtr VariableContext::make(std::vector<std::string> names) {
  return std::make_shared<const VariableContext>(std::move(names));
}

std::optional<std::size_t> VariableContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VariableContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index,
                            Exponent power) {
  std::vector<Exponent> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  r.degree_ += b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
  r.degree_ -= b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Exponent> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

// ---------------------------------------------------------------------------
// MonomialOrder

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b,
                                   std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a,
                                            const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::GrevLex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return grevlex_range(a, b, 0, n);
    case Kind::Block: {
      const std::size_t k = std::min(block_, n);
      if (auto c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::GrevLex:
      return "grevlex";
    case Kind::Block:
      return "block(" + std::to_string(block_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

const MonomialOrder kCanonical = MonomialOrder::grevlex();

struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return kCanonical.compare(a, b) > 0;
  }
};

}  // namespace

Polynomial::Polynomial(ContextPtr ctx, std::vector<Term> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.monomial.size() != ctx_->size())
      throw InputError("monomial length does not match context");
  normalize();
}

void Polynomial::normalize() {
  std::map<Monomial, Rational, CanonicalLess> acc;
  for (auto& t : terms_) {
    auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  terms_.clear();
  for (auto& [m, c] : acc)
    if (c != 0) terms_.push_back(Term{m, c});
}

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c) {
  Polynomial p(ctx);
  if (c != 0) p.terms_.push_back(Term{Monomial(ctx->size()), c});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::string_view name) {
  const std::size_t i = ctx->require(name);
  return variable(std::move(ctx), i);
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  Polynomial p(ctx);
  p.terms_.push_back(Term{Monomial::variable(ctx->size(), index), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(ContextPtr ctx, Monomial m, const Rational& c) {
  Polynomial p(ctx);
  if (m.size() != ctx->size())
    throw InputError("monomial length does not match context");
  if (c != 0) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return Rational(0);
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

std::vector<std::size_t> Polynomial::variables_used() const {
  std::vector<std::size_t> out;
  if (!ctx_) return out;
  for (std::size_t i = 0; i < ctx_->size(); ++i)
    if (uses_variable(i)) out.push_back(i);
  return out;
}

void Polynomial::check_same_context(const Polynomial& other, const char* op) const {
  if (!same_context(ctx_, other.ctx_))
    throw InputError(std::string("context mismatch in ") + op);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two canonically sorted term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a,
                              const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == a.size())
      c = std::strong_ordering::less;
    else if (j == b.size())
      c = std::strong_ordering::greater;
    else
      c = kCanonical.compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back(Term{a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_context(other, "add");
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_context(other, "sub");
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_context(b, "mul");
  Polynomial r(a.ctx_);
  if (a.is_zero() || b.is_zero()) return r;
  std::map<Monomial, Rational, CanonicalLess> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Monomial m = s.monomial * t.monomial;
      Rational c = s.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back(Term{m, c});
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Integer den_lcm = 1;
  for (const auto& t : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                                       t.coeff.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& t : terms_) mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                                       t.coeff.get_num_mpz_t());
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (terms_.front().coeff < 0) scale = -scale;
  return *this * scale;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (!ctx_ || point.size() != ctx_->size())
    throw InputError("evaluation point has length " +
                     std::to_string(point.size()) + ", expected " +
                     std::to_string(ctx_ ? ctx_->size() : 0));
  Rational sum = 0;
  Rational pw;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      mpq_class base = point[i];
      mpz_pow_ui(pw.get_num_mpz_t(), base.get_num_mpz_t(), t.monomial[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), base.get_den_mpz_t(), t.monomial[i]);
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  Rational pw;
  for (const auto& t : terms_) {
    std::vector<Monomial::Exponent> e(t.monomial.exponents().begin(),
                                      t.monomial.exponents().end());
    Rational c = t.coeff;
    for (const auto& [var, value] : values) {
      if (var >= e.size()) throw InputError("substitution index out of range");
      if (e[var] == 0) continue;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e[var]);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e[var]);
      c *= pw;
      e[var] = 0;
    }
    out.push_back(Term{Monomial(std::move(e)), std::move(c)});
  }
  return Polynomial(ctx_, std::move(out));
}

Polynomial Polynomial::partial_derivative(std::size_t var) const {
  if (!ctx_ || var >= ctx_->size())
    throw InputError("derivative with respect to unknown variable");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto d = t.monomial[var];
    if (d == 0) continue;
    Monomial m = t.monomial / Monomial::variable(t.monomial.size(), var);
    out.push_back(Term{std::move(m), t.coeff * d});
  }
  // Differentiation of a sorted list can reorder terms under grevlex.
  return Polynomial(ctx_, std::move(out));
}

Polynomial Polynomial::partial_derivative(std::string_view var) const {
  return partial_derivative(ctx_->require(var));
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    std::vector<Monomial::Exponent> e(t.monomial.exponents().begin(),
                                      t.monomial.exponents().end());
    const auto d = e[var];
    e[var] = 0;
    buckets[d].push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(ctx_, std::move(b));
  return out;
}

Polynomial Polynomial::embed(const ContextPtr& target) const {
  if (same_context(ctx_, target)) return Polynomial(target, terms_);
  std::vector<std::optional<std::size_t>> map(ctx_ ? ctx_->size() : 0);
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = target->index_of(ctx_->name(i));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Exponent> e(target->size(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (!map[i])
        throw InputError("variable '" + ctx_->name(i) +
                         "' does not exist in the target context");
      e[*map[i]] = t.monomial[i];
    }
    out.push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  return Polynomial(target, std::move(out));
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  if (!terms_.empty() && !same_context(ctx_, other.ctx_)) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].monomial == other.terms_[i].monomial)) return false;
    if (terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : s_(text), ctx_(ctx) {}

  Polynomial run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }

  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      const std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 6) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      const std::size_t save = pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        if (Integer(den) == 0) fail("zero denominator");
        lit += "/" + den;
      } else {
        pos_ = save;
      }
      return Polynomial::constant(ctx_, parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_'))
        ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      auto idx = ctx_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      return Polynomial::variable(ctx_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx) {
  return Parser(text, ctx).run();
}

std::string format(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        out << '-';
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.monomial.is_one()) {
      out << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      if (need_star) out << '*';
      out << p.context()->name(i);
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace polytopo
