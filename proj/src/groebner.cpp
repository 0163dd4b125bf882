#include "polytopo/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "polytopo/errors.hpp"

namespace polytopo {

Ideal::Ideal(ContextPtr ctx, std::vector<Polynomial> generators,
             MonomialOrder order)
    : ctx_(std::move(ctx)), order_(order) {
  for (auto& g : generators) {
    if (!same_context(g.context(), ctx_) && !g.is_zero())
      throw InputError("ideal generators must share one context");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

OrderedTerms to_ordered(const Polynomial& p, const MonomialOrder& order) {
  OrderedTerms t = p.terms();
  if (order.kind() != MonomialOrder::Kind::GrevLex) {
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) {
      return order.greater(a.monomial, b.monomial);
    });
  }
  return t;
}

GroebnerBasis::GroebnerBasis(ContextPtr ctx, MonomialOrder order,
                             std::vector<OrderedTerms> elements, bool reduced)
    : ctx_(std::move(ctx)), order_(order), ordered_(std::move(elements)),
      reduced_(reduced) {}

std::vector<Polynomial> GroebnerBasis::elements() const {
  std::vector<Polynomial> out;
  out.reserve(ordered_.size());
  for (const auto& e : ordered_) out.emplace_back(ctx_, e);
  return out;
}

bool GroebnerBasis::is_unit() const {
  return ordered_.size() == 1 && ordered_[0].size() == 1 &&
         ordered_[0][0].monomial.is_one();
}

bool GroebnerBasis::operator==(const GroebnerBasis& other) const {
  if (!same_context(ctx_, other.ctx_) || !(order_ == other.order_) ||
      ordered_.size() != other.ordered_.size())
    return false;
  for (std::size_t i = 0; i < ordered_.size(); ++i) {
    const auto& a = ordered_[i];
    const auto& b = other.ordered_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(a[j].monomial == b[j].monomial) || a[j].coeff != b[j].coeff) return false;
  }
  return true;
}

namespace {

// p[from..] - c * m * g[1..], all sorted under `order`.
OrderedTerms sub_mul(const OrderedTerms& p, std::size_t from, const Rational& c,
                     const Monomial& m, const OrderedTerms& g,
                     const MonomialOrder& order) {
  OrderedTerms out;
  out.reserve(p.size() - from + g.size());
  std::size_t i = from, j = 1;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].monomial * m;
    if (i == p.size()) {
      out.push_back(Term{std::move(gm), -c * g[j].coeff});
      ++j;
      continue;
    }
    auto cmp = order.compare(p[i].monomial, gm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{std::move(gm), -c * g[j].coeff});
      ++j;
    } else {
      Rational s = p[i].coeff - c * g[j].coeff;
      if (s != 0) out.push_back(Term{std::move(gm), std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

struct StepBudget {
  std::uint64_t used = 0;
  std::uint64_t cap;
  void tick() {
    if (++used > cap)
      throw CapacityError("Groebner reduction step limit (" + std::to_string(cap) +
                          ") exceeded");
  }
};

// Full reduction of p by the listed divisors (each sorted, leading term
// first). Divisors are tried in list order.
OrderedTerms reduce(OrderedTerms p, const std::vector<const OrderedTerms*>& divisors,
                    const MonomialOrder& order, StepBudget& budget) {
  OrderedTerms rem;
  while (!p.empty()) {
    const Term& lt = p.front();
    const OrderedTerms* div = nullptr;
    for (const auto* g : divisors) {
      if (g->front().monomial.divides(lt.monomial)) {
        div = g;
        break;
      }
    }
    if (div == nullptr) {
      // Move the whole prefix of irreducible terms at once.
      rem.push_back(lt);
      std::size_t k = 1;
      for (; k < p.size(); ++k) {
        bool reducible = false;
        for (const auto* g : divisors) {
          if (g->front().monomial.divides(p[k].monomial)) {
            reducible = true;
            break;
          }
        }
        if (reducible) break;
        rem.push_back(p[k]);
      }
      p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
      continue;
    }
    budget.tick();
    const Rational c = lt.coeff / div->front().coeff;
    const Monomial m = lt.monomial / div->front().monomial;
    p = sub_mul(p, 1, c, m, *div, order);
  }
  return rem;
}

void make_monic(OrderedTerms& p) {
  if (p.empty() || p.front().coeff == 1) return;
  const Rational inv = 1 / p.front().coeff;
  for (auto& t : p) t.coeff *= inv;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerLimits& limits)
      : order_(order), limits_(limits), budget_{0, limits.max_reductions} {}

  std::vector<OrderedTerms> run(const std::vector<OrderedTerms>& input) {
    for (const auto& g : input) add(g);
    while (!pairs_.empty()) {
      const std::size_t sel = select_pair();
      Pair pr = std::move(pairs_[sel]);
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(sel));
      add(spoly(pr));
    }
    return finish();
  }

 private:
  const Monomial& lm(std::size_t i) const { return polys_[i].front().monomial; }

  std::vector<const OrderedTerms*> active_divisors() const {
    std::vector<const OrderedTerms*> out;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) out.push_back(&polys_[i]);
    return out;
  }

  void add(const OrderedTerms& raw) {
    OrderedTerms h = reduce(raw, active_divisors(), order_, budget_);
    if (h.empty()) return;
    make_monic(h);
    if (polys_.size() >= limits_.max_basis)
      throw CapacityError("Groebner basis size limit (" +
                          std::to_string(limits_.max_basis) + ") exceeded");
    polys_.push_back(std::move(h));
    active_.push_back(false);
    update(polys_.size() - 1);
  }

  // Gebauer-Moeller installation of a new element h.
  void update(std::size_t h) {
    const Monomial& lh = lm(h);
    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < polys_.size(); ++g)
      if (active_[g]) candidates.push_back(Pair{g, h, lcm(lm(g), lh)});

    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool drop = false;
      if (!lm(p.i).coprime(lh)) {
        for (std::size_t b = a + 1; b < candidates.size() && !drop; ++b)
          drop = candidates[b].lcm.divides(p.lcm);
        for (std::size_t b = 0; b < kept.size() && !drop; ++b)
          drop = kept[b].lcm.divides(p.lcm);
      }
      if (!drop) kept.push_back(p);
    }

    std::vector<Pair> next;
    for (auto& p : pairs_) {
      const bool redundant = lh.divides(p.lcm) &&
                             !(lcm(lm(p.i), lh) == p.lcm) &&
                             !(lcm(lh, lm(p.j)) == p.lcm);
      if (!redundant) next.push_back(std::move(p));
    }
    for (auto& p : kept)
      if (!lm(p.i).coprime(lh)) next.push_back(std::move(p));
    pairs_ = std::move(next);

    for (std::size_t g = 0; g < polys_.size(); ++g)
      if (active_[g] && lh.divides(lm(g))) active_[g] = false;
    active_[h] = true;
  }

  // Normal strategy: smallest lcm first (degree, then order), ties by index.
  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.lcm.degree() != b.lcm.degree()) {
        if (a.lcm.degree() < b.lcm.degree()) best = k;
        continue;
      }
      auto c = order_.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.j, a.i) < std::tie(b.j, b.i))) best = k;
    }
    return best;
  }

  OrderedTerms spoly(const Pair& p) {
    const OrderedTerms& f = polys_[p.i];
    const OrderedTerms& g = polys_[p.j];
    const Monomial mf = p.lcm / lm(p.i);
    const Monomial mg = p.lcm / lm(p.j);
    OrderedTerms left;
    left.reserve(f.size());
    for (std::size_t k = 1; k < f.size(); ++k)
      left.push_back(Term{f[k].monomial * mf, f[k].coeff});
    // Both inputs are monic, so the leading terms cancel exactly.
    OrderedTerms scaled_g;
    scaled_g.reserve(g.size());
    scaled_g.push_back(Term{p.lcm, Rational(1)});
    for (std::size_t k = 1; k < g.size(); ++k)
      scaled_g.push_back(Term{g[k].monomial * mg, g[k].coeff});
    return sub_mul(left, 0, Rational(1), Monomial(p.lcm.size()), scaled_g, order_);
  }

  std::vector<OrderedTerms> finish() {
    std::vector<OrderedTerms> basis;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) basis.push_back(polys_[i]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<const OrderedTerms*> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(&basis[j]);
      OrderedTerms tail(basis[i].begin() + 1, basis[i].end());
      OrderedTerms reduced = reduce(std::move(tail), others, order_, budget_);
      reduced.insert(reduced.begin(), basis[i].front());
      basis[i] = std::move(reduced);
      make_monic(basis[i]);
    }
    std::sort(basis.begin(), basis.end(), [&](const OrderedTerms& a, const OrderedTerms& b) {
      return order_.compare(a.front().monomial, b.front().monomial) < 0;
    });
    return basis;
  }

  MonomialOrder order_;
  GroebnerLimits limits_;
  StepBudget budget_;
  std::vector<OrderedTerms> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis) {
  if (!same_context(p.context(), basis.context()) && !p.is_zero())
    throw InputError("context mismatch in normal_form");
  std::vector<const OrderedTerms*> divisors;
  for (const auto& e : basis.ordered_elements()) divisors.push_back(&e);
  StepBudget unlimited{0, ~std::uint64_t{0}};
  OrderedTerms r = reduce(to_ordered(p, basis.order()), divisors, basis.order(), unlimited);
  return Polynomial(basis.context(), std::move(r));
}

bool ideal_contains(const GroebnerBasis& basis, const Polynomial& p) {
  return normal_form(p, basis).is_zero();
}

GroebnerBasis buchberger(const Ideal& ideal, const GroebnerLimits& limits) {
  if (ideal.is_zero()) throw InputError("Groebner basis of the zero ideal requested");
  std::vector<OrderedTerms> input;
  for (const auto& g : ideal.generators()) input.push_back(to_ordered(g, ideal.order()));
  Buchberger engine(ideal.order(), limits);
  return GroebnerBasis(ideal.context(), ideal.order(), engine.run(input), true);
}

Ideal elimination_ideal(const Ideal& ideal, std::size_t k, const GroebnerLimits& limits) {
  const auto& ctx = ideal.context();
  if (k > ctx->size()) throw InputError("cannot eliminate more variables than exist");
  if (ideal.is_zero()) return Ideal(ctx, {});
  Ideal blocked(ctx, ideal.generators(), MonomialOrder::elimination(k));
  GroebnerBasis gb = buchberger(blocked, limits);
  std::vector<Polynomial> kept;
  for (const auto& e : gb.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < k && free; ++v) free = !e.uses_variable(v);
    if (free) kept.push_back(e);
  }
  return Ideal(ctx, std::move(kept));
}

bool is_zero_dimensional(const GroebnerBasis& basis) {
  if (basis.is_unit()) return true;
  const std::size_t n = basis.context()->size();
  std::vector<bool> has_pure_power(n, false);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial& m = basis.leading_monomial(i);
    std::size_t nonzero = 0, which = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] != 0) {
        ++nonzero;
        which = v;
      }
    }
    if (nonzero == 1) has_pure_power[which] = true;
  }
  return std::all_of(has_pure_power.begin(), has_pure_power.end(), [](bool b) { return b; });
}

QuotientBasis quotient_basis(const GroebnerBasis& basis) {
  if (!is_zero_dimensional(basis))
    throw InputError("quotient basis requested for a positive-dimensional ideal");
  QuotientBasis out;
  if (basis.is_unit()) return out;
  const std::size_t n = basis.context()->size();
  auto standard = [&](const Monomial& m) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis.leading_monomial(i).divides(m)) return false;
    return true;
  };
  std::set<Monomial> seen;
  std::vector<Monomial> frontier{Monomial(n)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    Monomial m = std::move(frontier.back());
    frontier.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::variable(n, v);
      if (seen.count(next) || !standard(next)) continue;
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  out.standard_monomials.assign(seen.begin(), seen.end());
  std::sort(out.standard_monomials.begin(), out.standard_monomials.end(),
            [&](const Monomial& a, const Monomial& b) {
              return basis.order().compare(a, b) < 0;
            });
  return out;
}

std::size_t quotient_dimension(const GroebnerBasis& basis) {
  return quotient_basis(basis).dimension();
}

std::vector<Rational> minimal_polynomial_in_quotient(const GroebnerBasis& basis,
                                                     const Polynomial& element) {
  const QuotientBasis qb = quotient_basis(basis);
  if (qb.dimension() == 0) throw InputError("quotient algebra is zero");
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < qb.standard_monomials.size(); ++i)
    index.emplace(qb.standard_monomials[i], i);
  const std::size_t dim = qb.dimension();

  auto coords = [&](const Polynomial& nf) {
    std::vector<Rational> v(dim);
    for (const auto& t : nf.terms()) v[index.at(t.monomial)] = t.coeff;
    return v;
  };

  struct Row {
    std::size_t pivot;
    std::vector<Rational> vec;
    std::vector<Rational> combo;  // coefficients on element^0..element^j
  };
  std::vector<Row> rows;
  Polynomial power = normal_form(Polynomial::constant(basis.context(), 1), basis);
  for (std::size_t j = 0; j <= dim; ++j) {
    std::vector<Rational> vec = coords(power);
    std::vector<Rational> combo(j + 1);
    combo[j] = 1;
    for (const auto& r : rows) {
      if (vec[r.pivot] == 0) continue;
      const Rational f = vec[r.pivot];
      for (std::size_t k = 0; k < dim; ++k)
        if (r.vec[k] != 0) vec[k] -= f * r.vec[k];
      for (std::size_t k = 0; k < r.combo.size(); ++k)
        if (r.combo[k] != 0) combo[k] -= f * r.combo[k];
    }
    auto piv = std::find_if(vec.begin(), vec.end(), [](const Rational& q) { return q != 0; });
    if (piv == vec.end()) return combo;
    const std::size_t p = static_cast<std::size_t>(piv - vec.begin());
    const Rational inv = 1 / vec[p];
    for (auto& q : vec) q *= inv;
    for (auto& q : combo) q *= inv;
    rows.push_back(Row{p, std::move(vec), std::move(combo)});
    power = normal_form(power * element, basis);
  }
  throw Error("minimal polynomial search exceeded the quotient dimension");
}

// ---------------------------------------------------------------------------
// Univariate

Dense dense_trim(Dense a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

namespace {

Dense dense_monic(Dense a) {
  a = dense_trim(std::move(a));
  if (a.empty() || a.back() == 1) return a;
  const Rational inv = 1 / a.back();
  for (auto& c : a) c *= inv;
  return a;
}

// Returns remainder of a by b; quotient optional.
Dense dense_divmod(Dense a, const Dense& b, Dense* quotient) {
  a = dense_trim(std::move(a));
  if (b.empty()) throw InputError("division by zero polynomial");
  const std::size_t db = b.size() - 1;
  if (quotient) quotient->assign(a.size() >= b.size() ? a.size() - db : 0, Rational(0));
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    if (quotient) (*quotient)[shift] = f;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= f * b[k];
    a = dense_trim(std::move(a));
  }
  return a;
}

}  // namespace

Dense dense_gcd(Dense a, Dense b) {
  a = dense_trim(std::move(a));
  b = dense_trim(std::move(b));
  while (!b.empty()) {
    Dense r = dense_divmod(std::move(a), b, nullptr);
    a = std::move(b);
    b = dense_monic(std::move(r));
  }
  return dense_monic(std::move(a));
}

Dense dense_derivative(const Dense& a) {
  Dense d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<unsigned long>(k));
  return dense_trim(std::move(d));
}

Dense dense_divide(const Dense& a, const Dense& b) {
  Dense q;
  Dense r = dense_divmod(a, dense_trim(b), &q);
  if (!r.empty()) throw Error("inexact univariate division");
  return dense_trim(std::move(q));
}

Dense dense_squarefree(const Dense& a) {
  Dense t = dense_trim(a);
  if (t.empty()) throw InputError("squarefree part of the zero polynomial");
  if (t.size() == 1) return Dense{Rational(1)};
  return dense_monic(dense_divide(t, dense_gcd(t, dense_derivative(t))));
}

std::optional<std::size_t> univariate_variable(const Polynomial& u) {
  const auto vars = u.variables_used();
  if (vars.empty()) return std::nullopt;
  if (vars.size() > 1) throw InputError("polynomial is not univariate: " + format(u));
  return vars.front();
}

namespace {

Dense to_dense(const Polynomial& u, std::size_t var) {
  Dense d(u.degree_in(var) + 1);
  for (const auto& t : u.terms()) d[t.monomial[var]] = t.coeff;
  return d;
}

Polynomial from_dense(const Dense& d, const ContextPtr& ctx, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0)
      terms.push_back(Term{Monomial::variable(ctx->size(), var,
                                              static_cast<Monomial::Exponent>(k)),
                           d[k]});
  return Polynomial(ctx, std::move(terms));
}

}  // namespace

Polynomial squarefree_part(const Polynomial& u) {
  if (u.is_zero()) throw InputError("squarefree part of the zero polynomial");
  const auto var = univariate_variable(u);
  if (!var) return Polynomial::constant(u.context(), 1);
  return from_dense(dense_squarefree(to_dense(u, *var)), u.context(), *var);
}

// ---------------------------------------------------------------------------
// Multivariate gcd

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  const auto& ctx = a.context() ? a.context() : b.context();
  Polynomial q(ctx);
  Polynomial r = a;
  const Term& lb = b.leading_term();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lb.monomial.divides(lr.monomial)) throw Error("inexact polynomial division");
    Polynomial t = Polynomial::monomial(ctx, lr.monomial / lb.monomial, lr.coeff / lb.coeff);
    q += t;
    r -= t * b;
  }
  return q;
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b,
                          const GroebnerLimits& limits) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (!same_context(a.context(), b.context()))
    throw InputError("context mismatch in gcd");
  const auto& ctx = a.context();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(ctx, 1);

  std::set<std::size_t> vars;
  for (auto v : a.variables_used()) vars.insert(v);
  for (auto v : b.variables_used()) vars.insert(v);
  if (vars.size() == 1) {
    const std::size_t v = *vars.begin();
    return from_dense(dense_gcd(to_dense(a, v), to_dense(b, v)), ctx, v);
  }

  // lcm(a, b) generates <s*a, (1-s)*b> intersected with Q[ctx].
  std::string aux = "gcd_s";
  while (ctx->index_of(aux)) aux += "_";
  std::vector<std::string> names{aux};
  names.insert(names.end(), ctx->names().begin(), ctx->names().end());
  auto ext = VariableContext::make(std::move(names));
  const Polynomial s = Polynomial::variable(ext, std::size_t{0});
  const Polynomial one = Polynomial::constant(ext, 1);
  Ideal intersection(ext, {s * a.embed(ext), (one - s) * b.embed(ext)});
  Ideal lcm_ideal = elimination_ideal(intersection, 1, limits);
  if (lcm_ideal.generators().size() != 1)
    throw Error("lcm ideal is not principal");
  Polynomial l = lcm_ideal.generators().front().embed(ctx);
  return exact_quotient(a * b, l).monic();
}

Polynomial squarefree_part_multivariate(const Polynomial& p, const GroebnerLimits& limits) {
  if (p.is_zero()) throw InputError("squarefree part of the zero polynomial");
  if (p.is_constant()) return Polynomial::constant(p.context(), 1);
  const auto vars = p.variables_used();
  if (vars.size() == 1) return squarefree_part(p).primitive();
  Polynomial g = p;
  for (auto v : vars) {
    if (g.is_constant()) break;
    g = polynomial_gcd(g, p.partial_derivative(v), limits);
  }
  return exact_quotient(p, g).primitive();
}

}  // namespace polytopo
