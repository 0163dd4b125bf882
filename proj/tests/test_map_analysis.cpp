#include <random>

#include "doctest.h"
#include "polytopo/errors.hpp"
#include "polytopo/map_analysis.hpp"
#include "test_support.hpp"

using namespace polytopo;
using polytopo::testing::P;

namespace {

PolynomialMap map(std::vector<std::string> x, std::vector<std::string> z,
                  std::vector<std::string> comps) {
  return PolynomialMap::parse(std::move(x), std::move(z), comps);
}

Polynomial in(const PolynomialMap& f, const std::string& text) {
  return parse_polynomial(text, f.target());
}

std::vector<Rational> pt(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST_CASE("map construction is validated") {
  CHECK_THROWS_AS(map({"x"}, {"x"}, {"x"}), InputError);
  CHECK_THROWS_AS(map({"x"}, {"z1", "z2"}, {"x"}), InputError);
  CHECK_THROWS_AS(map({"x"}, {"z"}, {"y"}), ParseError);
}

TEST_CASE("topological degree") {
  CHECK(topological_degree(map({"x"}, {"z"}, {"x^3"})).mu == 3);
  CHECK(topological_degree(map({"x", "y"}, {"z1", "z2"}, {"x", "y^2"})).mu == 2);
  auto xy = map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"});
  auto d = topological_degree(xy);
  CHECK(d.mu == 1);
  CHECK(d.disagreements == 0);
  CHECK(d.finite_trials == 5);
  // Image of a curve: generic points come from pushed-forward samples.
  CHECK(topological_degree(map({"x"}, {"z1", "z2"}, {"x^2", "x^3"})).mu == 1);
  CHECK(topological_degree(map({"x"}, {"z1", "z2"}, {"x", "x^2"})).mu == 1);
  CHECK_THROWS_AS(topological_degree(map({"x", "y"}, {"z1", "z2"}, {"x+y", "x+y"})),
                  NotGenericallyFiniteError);
  CHECK_THROWS_AS(topological_degree(map({"x", "y"}, {"z"}, {"x*y"})),
                  NotGenericallyFiniteError);
}

TEST_CASE("direct solve agrees with the fibre of (x, xy)") {
  // For y = (a, b) with a != 0 the only preimage is (a, b/a).
  auto f = map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"});
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    Rational a = testing::random_rational(rng) + 100, b = testing::random_rational(rng);
    auto target = pt({a, b});
    auto c = count_fiber_distinct(f, target);
    CHECK(c.distinct == 1);
    auto image = f.apply(pt({a, b / a}));
    CHECK(image == target);
  }
}

TEST_CASE("minimal polynomials of coordinates") {
  auto xy = map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"});
  auto my = minimal_polynomial_of_coordinate(xy, 1);
  CHECK(my.t_degree == 1);
  CHECK(my.poly == parse_polynomial("z1*t - z2", my.poly.context()));
  CHECK(my.leading_coefficient == in(xy, "z1"));
  // It vanishes on sampled graph points (t, z) = (y, x, x*y).
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    Rational a = testing::random_rational(rng), b = testing::random_rational(rng);
    CHECK(my.poly.evaluate(pt({b, a, a * b})) == 0);
  }

  auto mx = minimal_polynomial_of_coordinate(xy, 0);
  CHECK(mx.poly == parse_polynomial("t - z1", mx.poly.context()));
  CHECK(mx.leading_coefficient == in(xy, "1"));

  auto sq = map({"x"}, {"z"}, {"x^2"});
  auto ms = minimal_polynomial_of_coordinate(sq, 0);
  CHECK(ms.poly == parse_polynomial("t^2 - z", ms.poly.context()));
  CHECK(ms.leading_coefficient == in(sq, "1"));

  auto degenerate = map({"x", "y"}, {"z1", "z2"}, {"x", "x"});
  CHECK_THROWS_AS(minimal_polynomial_of_coordinate(degenerate, 1), NotGenericallyFiniteError);
}

TEST_CASE("non-properness set") {
  auto xy = map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"});
  auto s = non_properness_set(xy);
  REQUIRE(s.generators().size() == 1);
  CHECK(s.generators()[0] == in(xy, "z1"));
  CHECK_FALSE(is_proper(xy));
  // Over z1 = 0 fibres are empty (z2 != 0) or infinite (origin).
  CHECK(count_fiber_distinct(xy, pt({0, 5})).distinct == 0);
  CHECK_THROWS_AS(count_fiber_distinct(xy, pt({0, 0})), InfiniteFiberError);

  CHECK(non_properness_set(map({"x"}, {"z"}, {"x^2"})).is_empty());
  CHECK(non_properness_set(map({"x", "y"}, {"z1", "z2"}, {"x", "y"})).is_empty());
}

TEST_CASE("properness") {
  CHECK(is_proper(map({"x"}, {"z"}, {"x^3-3*x"})));
  CHECK_FALSE(is_proper(map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"})));
  auto f = map({"x", "y"}, {"z1", "z2"}, {"x^2+y^2", "x^2-y^2"});
  CHECK(is_proper(f));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(minimal_polynomial_of_coordinate(f, i).leading_coefficient.is_constant());
  // |f| grows without bound along rays.
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    Rational a = testing::random_rational(rng), b = testing::random_rational(rng);
    if (a == 0 && b == 0) continue;
    Rational prev = -1;
    for (int s = 1; s <= 1000; s *= 10) {
      auto y = f.apply(pt({a * s, b * s}));
      Rational norm = y[0] * y[0] + y[1] * y[1];
      CHECK(norm > prev);
      prev = norm;
    }
  }
  // A cusp parametrisation is finite although its image is not normal.
  CHECK(is_proper(map({"x"}, {"z1", "z2"}, {"x^2", "x^3"})));
  // (x, y + x*y^2)-type maps are not proper.
  CHECK_FALSE(is_proper(map({"x", "y"}, {"u", "v"}, {"x", "y*(x*y - 1)"})));
}

TEST_CASE("critical values") {
  auto sq = map({"x"}, {"z"}, {"x^2"});
  auto k0 = critical_values(sq);
  REQUIRE(k0.generators().size() == 1);
  CHECK(k0.generators()[0] == in(sq, "z"));

  auto cubic = map({"x"}, {"z"}, {"x^3-3*x"});
  auto kc = critical_values(cubic);
  REQUIRE(kc.generators().size() == 1);
  CHECK(kc.generators()[0] == in(cubic, "(z-2)*(z+2)"));

  auto fold = map({"x", "y"}, {"z1", "z2"}, {"x", "y^2"});
  auto kf = critical_values(fold);
  REQUIRE(kf.generators().size() == 1);
  CHECK(kf.generators()[0] == in(fold, "z2"));

  CHECK_THROWS_AS(critical_values(map({"x"}, {"a", "b", "c"}, {"x", "x", "x"})),
                  UnsupportedError);
  CHECK_THROWS_AS(critical_values(map({"x", "y"}, {"a", "b"}, {"x+y", "x+y"})),
                  NotGenericallyFiniteError);
}

TEST_CASE("image closure and singular locus") {
  auto parabola = map({"x"}, {"z1", "z2"}, {"x", "x^2"});
  auto zp = image_closure(parabola);
  REQUIRE(zp.generators().size() == 1);
  CHECK(zp.generators()[0] == in(parabola, "z1^2 - z2"));
  CHECK(singular_locus(zp).is_empty());

  auto id = map({"x", "y"}, {"z1", "z2"}, {"x", "y"});
  CHECK(image_closure(id).is_whole_space());
  CHECK(singular_locus(image_closure(id)).is_empty());

  auto cusp = map({"x"}, {"z1", "z2"}, {"x^2", "x^3"});
  auto zc = image_closure(cusp);
  REQUIRE(zc.generators().size() == 1);
  CHECK(zc.generators()[0] == in(cusp, "z1^3 - z2^2"));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    Rational t = testing::random_rational(rng);
    CHECK(zc.contains(pt({t * t, t * t * t})));
  }
  auto sing = singular_locus(zc);
  CHECK(sing.contains(pt({0, 0})));
  CHECK_FALSE(sing.contains(pt({1, 1})));
  CHECK(sing.generators().size() == 2);

  auto line = AlgebraicSet::from_generators(id.target(), {in(id, "z1"), in(id, "z2")});
  CHECK_THROWS_AS(singular_locus(line), UnsupportedError);
}

TEST_CASE("bifurcation sets") {
  auto cubic = map({"x"}, {"z"}, {"x^3-3*x"});
  auto r = bifurcation_set(cubic);
  CHECK(r.degree.mu == 3);
  CHECK(r.proper);
  REQUIRE(r.bifurcation.generators().size() == 1);
  CHECK(r.bifurcation.generators()[0] == in(cubic, "z^2-4"));

  auto xy = map({"x", "y"}, {"z1", "z2"}, {"x", "x*y"});
  auto rx = bifurcation_set(xy);
  CHECK(rx.degree.mu == 1);
  CHECK_FALSE(rx.proper);
  REQUIRE(rx.bifurcation.generators().size() == 1);
  CHECK(rx.bifurcation.generators()[0] == in(xy, "z1"));
  // Critical values of (x, xy) sit inside z1 = 0.
  CHECK(rx.critical_values.contains(pt({0, 0})));

  auto id = map({"x", "y"}, {"z1", "z2"}, {"x", "y"});
  auto ri = bifurcation_set(id);
  CHECK(ri.degree.mu == 1);
  CHECK(ri.bifurcation.is_empty());

  // Same seed, same report.
  auto again = bifurcation_set(xy);
  CHECK(again.bifurcation == rx.bifurcation);
  CHECK(again.degree.mu == rx.degree.mu);
}

TEST_CASE("distinct fibre points") {
  auto sq = map({"x"}, {"z"}, {"x^2"});
  CHECK(count_fiber_distinct(sq, pt({0})).distinct == 1);
  CHECK(count_fiber_distinct(sq, pt({0})).with_multiplicity == 2);
  CHECK(count_fiber_distinct(sq, pt({4})).distinct == 2);
  // x^3 - 3x - 2 = (x+1)^2 (x-2).
  auto cubic = map({"x"}, {"z"}, {"x^3-3*x"});
  auto c = count_fiber_distinct(cubic, pt({2}));
  CHECK(c.distinct == 2);
  CHECK(c.confirmed);
  CHECK_THROWS_AS(count_fiber_distinct(cubic, pt({1, 2})), InputError);
}

TEST_CASE("algebraic set canonical form") {
  auto c = testing::ctx({"a", "b"});
  auto s = AlgebraicSet::from_generators(c, {P("2*a^2 - 2", c)});
  CHECK(s.generators()[0] == P("a^2 - 1", c));
  auto sq = AlgebraicSet::from_generators(c, {P("(a-1)^2*(b+1)", c)});
  CHECK(sq.generators()[0] == P("(a-1)*(b+1)", c));
  CHECK(AlgebraicSet::from_generators(c, {P("3", c)}).is_empty());
  CHECK(AlgebraicSet::from_generators(c, {P("0", c)}).is_whole_space());
  CHECK(AlgebraicSet::from_generators(c, {P("a", c), P("a+1", c)}).is_empty());
  auto u = set_union(AlgebraicSet::from_generators(c, {P("a", c)}),
                     AlgebraicSet::from_generators(c, {P("b", c)}));
  CHECK(u.generators() == std::vector<Polynomial>{P("a*b", c)});
  auto v = set_union(u, AlgebraicSet::empty(c));
  CHECK(v == u);
  CHECK(set_union(u, AlgebraicSet::whole(c)).is_whole_space());
}
