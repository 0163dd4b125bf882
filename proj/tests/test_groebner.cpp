#include <random>

#include "doctest.h"
#include "polytopo/errors.hpp"
#include "polytopo/groebner.hpp"
#include "test_support.hpp"

using namespace polytopo;
using polytopo::testing::P;

namespace {

GroebnerBasis gb(const std::vector<std::string>& gens, const ContextPtr& c,
                 MonomialOrder order = MonomialOrder::grevlex()) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(P(g, c));
  return buchberger(Ideal(c, ps, order));
}

// S-polynomial of two polynomials, computed directly from the definition.
Polynomial spoly(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  auto of = to_ordered(f, order);
  auto og = to_ordered(g, order);
  const Monomial l = lcm(of.front().monomial, og.front().monomial);
  auto c = f.context();
  return Polynomial::monomial(c, l / of.front().monomial, 1 / of.front().coeff) * f -
         Polynomial::monomial(c, l / og.front().monomial, 1 / og.front().coeff) * g;
}

void check_spolys_reduce(const GroebnerBasis& basis) {
  auto els = basis.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = i + 1; j < els.size(); ++j)
      CHECK(normal_form(spoly(els[i], els[j], basis.order()), basis).is_zero());
}

}  // namespace

TEST_CASE("normal forms") {
  auto c = testing::ctx({"x", "y"});
  CHECK(normal_form(P("x^2", c), gb({"x"}, c)).is_zero());
  CHECK(normal_form(P("x+1", c), gb({"x^2"}, c)) == P("x+1", c));
  // x^2*y -> y*(x^2-1) + y -> y, then y is irreducible by y^2-1.
  CHECK(normal_form(P("x^2*y", c), gb({"x^2-1", "y^2-1"}, c)) == P("y", c));
  auto basis = gb({"x^2-1", "y^2-1"}, c);
  auto nf = normal_form(P("x^3*y^3 + x*y + 5", c), basis);
  CHECK(normal_form(nf, basis) == nf);
}

TEST_CASE("buchberger examples") {
  auto c = testing::ctx({"x", "y"});
  auto principal = gb({"3*x"}, c);
  REQUIRE(principal.size() == 1);
  CHECK(principal.elements()[0] == P("x", c));

  auto lexb = gb({"x-y", "y^2-1"}, c, MonomialOrder::lex());
  auto els = lexb.elements();
  REQUIRE(els.size() == 2);
  CHECK(els[0] == P("y^2-1", c));
  CHECK(els[1] == P("x-y", c));
  check_spolys_reduce(lexb);

  auto mono = gb({"x^2", "x*y", "y^2"}, c);
  CHECK(mono.size() == 3);
  CHECK(mono.elements()[0] == P("y^2", c));

  CHECK(gb({"x", "x+1"}, c).is_unit());
  CHECK_THROWS_AS(buchberger(Ideal(c, {Polynomial(c)})), InputError);
}

TEST_CASE("capacity limits are reported") {
  auto c = testing::ctx({"x", "y", "z"});
  GroebnerLimits tiny{2, 1000};
  Ideal i(c, {P("x^3 - y*z", c), P("y^3 - x*z", c), P("z^3 - x*y", c)});
  CHECK_THROWS_AS(buchberger(i, tiny), CapacityError);
  GroebnerLimits few_steps{1000, 2};
  Ideal dense(c, {P("x^2 + y*z + 1", c), P("y^2 + x*z + x", c), P("z^2 + x*y + y", c)});
  CHECK_NOTHROW(buchberger(dense));
  CHECK_THROWS_AS(buchberger(dense, few_steps), CapacityError);
}

TEST_CASE("random ideals: S-polynomials vanish and membership agrees") {
  std::mt19937_64 rng(77);
  auto c = testing::ctx({"x", "y", "z"});
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) {
      auto g = testing::random_poly(rng, c, 2, 3);
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(),
                       MonomialOrder::elimination(1)}) {
      auto basis = buchberger(Ideal(c, gens, order));
      check_spolys_reduce(basis);
      // Reduced: monic, no leading monomial divides a term of another element.
      auto els = basis.ordered_elements();
      for (std::size_t i = 0; i < els.size(); ++i) {
        CHECK(els[i].front().coeff == 1);
        for (std::size_t j = 0; j < els.size(); ++j) {
          if (i == j) continue;
          for (const auto& t : els[j])
            CHECK_FALSE(els[i].front().monomial.divides(t.monomial));
        }
      }
      Polynomial member(c);
      for (const auto& g : gens) member += testing::random_poly(rng, c, 2, 3) * g;
      CHECK(ideal_contains(basis, member));
      for (const auto& g : gens) CHECK(ideal_contains(basis, g));
      // Determinism.
      CHECK(buchberger(Ideal(c, gens, order)) == basis);
    }
  }
}

TEST_CASE("elimination") {
  auto c = testing::ctx({"x", "y", "z1", "z2", "t"});
  Ideal i(c, {P("z1 - x", c), P("z2 - x*y", c), P("t - y", c)});
  auto e = elimination_ideal(i, 2);
  REQUIRE(e.generators().size() == 1);
  CHECK(e.generators()[0].primitive() == P("z1*t - z2", c));
  // The generator vanishes on parametrised points (z1, z2, t) = (a, a*b, b).
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    Rational a = testing::random_rational(rng), b = testing::random_rational(rng);
    std::vector<Rational> pt{a, b, a, a * b, b};
    CHECK(e.generators()[0].evaluate(pt) == 0);
  }

  auto c2 = testing::ctx({"x", "z"});
  CHECK(elimination_ideal(Ideal(c2, {P("z - x^2", c2)}), 1).is_zero());

  auto c3 = testing::ctx({"x", "z1", "z2"});
  auto diag = elimination_ideal(Ideal(c3, {P("z1 - x", c3), P("z2 - x", c3)}), 1);
  REQUIRE(diag.generators().size() == 1);
  CHECK(diag.generators()[0].primitive() == P("z1 - z2", c3));
}

TEST_CASE("zero dimensionality and quotient dimension") {
  auto c = testing::ctx({"x", "y"});
  CHECK(is_zero_dimensional(gb({"x^2-1", "y^3-y"}, c)));
  CHECK_FALSE(is_zero_dimensional(gb({"x*y"}, c)));
  CHECK(is_zero_dimensional(gb({"x-y", "y^2-1"}, c, MonomialOrder::lex())));

  CHECK(quotient_dimension(gb({"x-3", "y+1/2"}, c)) == 1);
  auto u = testing::ctx({"x"});
  CHECK(quotient_dimension(gb({"x^2"}, u)) == 2);
  // Roots of x^2-1 and y^3-y: {-1,1} x {-1,0,1}, all simple.
  CHECK(quotient_dimension(gb({"x^2-1", "y^3-y"}, c)) == 6);
  CHECK_THROWS_AS(quotient_dimension(gb({"x*y"}, c)), InputError);
  CHECK(quotient_dimension(gb({"x", "x-1"}, c)) == 0);
}

TEST_CASE("quotient dimension counts roots with multiplicity") {
  // Product-form ideals <prod (x-a_i)^{e_i}, prod (y-b_j)^{f_j}> have
  // dimension (sum e_i) * (sum f_j).
  std::mt19937_64 rng(11);
  auto c = testing::ctx({"x", "y"});
  for (int trial = 0; trial < 15; ++trial) {
    std::uniform_int_distribution<int> mult(1, 3), roots(1, 3);
    Polynomial fx = Polynomial::constant(c, 1), fy = Polynomial::constant(c, 1);
    int dx = 0, dy = 0;
    for (int r = roots(rng); r > 0; --r) {
      int e = mult(rng);
      dx += e;
      fx *= (P("x", c) - Polynomial::constant(c, trial * 10 + r)).pow(e);
    }
    for (int r = roots(rng); r > 0; --r) {
      int e = mult(rng);
      dy += e;
      fy *= (P("y", c) - Polynomial::constant(c, -r)).pow(e);
    }
    auto basis = buchberger(Ideal(c, {fx, fy + P("x", c) * fx}));
    CHECK(quotient_dimension(basis) == static_cast<std::size_t>(dx * dy));
  }
}

TEST_CASE("minimal polynomial in the quotient algebra") {
  auto c = testing::ctx({"x", "y"});
  auto basis = gb({"x^2-1", "y^3-y"}, c);
  // x + 3y takes six distinct values on the grid.
  auto m = minimal_polynomial_in_quotient(basis, P("x + 3*y", c));
  CHECK(m.size() == 7);
  // x alone takes two values.
  auto mx = minimal_polynomial_in_quotient(basis, P("x", c));
  REQUIRE(mx.size() == 3);
  CHECK(mx[0] == -1);
  CHECK(mx[1] == 0);
  CHECK(mx[2] == 1);
}

TEST_CASE("squarefree part") {
  auto c = testing::ctx({"x"});
  CHECK(squarefree_part(P("x^2", c)) == P("x", c));
  CHECK(squarefree_part(P("x^2-1", c)) == P("x^2-1", c));
  CHECK(squarefree_part(P("(x-1)^2*(x+2)", c)) == P("x^2+x-2", c));
  CHECK(squarefree_part(P("3*(x-1)^3*(x+2)^2", c)) == P("x^2+x-2", c));
  CHECK_THROWS_AS(squarefree_part(P("0", c)), InputError);
  auto c2 = testing::ctx({"x", "y"});
  CHECK_THROWS_AS(squarefree_part(P("x*y", c2)), InputError);
}

TEST_CASE("multivariate gcd and squarefree") {
  auto c = testing::ctx({"x", "y"});
  CHECK(polynomial_gcd(P("(x+y)*(x-y)", c), P("(x+y)^2*x", c)) == P("x+y", c));
  CHECK(polynomial_gcd(P("x*y", c), P("x+1", c)) == P("1", c));
  CHECK(exact_quotient(P("x^2-y^2", c), P("x-y", c)) == P("x+y", c));
  CHECK_THROWS(exact_quotient(P("x^2+y^2", c), P("x-y", c)));
  CHECK(squarefree_part_multivariate(P("(x^2-y)^2*(x+1)", c)) == P("(x^2-y)*(x+1)", c));
  CHECK(squarefree_part_multivariate(P("4*x^3", c)) == P("x", c));
}
