#include "doctest.h"
#include "polytopo/classification.hpp"
#include "polytopo/errors.hpp"

using namespace polytopo;

namespace {

PolynomialMap uni(const std::string& f) { return PolynomialMap::parse({"x"}, {"z"}, {f}); }

FamilyDescription fam(const std::string& f) {
  return FamilyDescription({"m"}, {"x"}, {"z"}, {f});
}

std::vector<std::vector<Rational>> ints(int from, int to) {
  std::vector<std::vector<Rational>> out;
  for (int m = from; m <= to; ++m) out.push_back({Rational(m)});
  return out;
}

// Index-k sublattices of Z^2 as Hermite forms [[a, b], [0, d]], a*d = k,
// 0 <= b < d.
std::size_t hermite_forms(std::size_t k) {
  std::size_t n = 0;
  for (std::size_t a = 1; a <= k; ++a)
    if (k % a == 0) n += k / a;
  return n;
}

}  // namespace

TEST_CASE("one-variable bounds") {
  for (int d = 2; d <= 6; ++d) {
    auto r = type_bound_univariate(uni("x^" + std::to_string(d)));
    CHECK(r.r == 1);
    CHECK(r.mu == static_cast<std::size_t>(d));
    CHECK(r.bound == 1);
    CHECK(r.pi1_source == Pi1Source::AutomaticFree);
  }
  auto c = type_bound_univariate(uni("x^3 - 3*x"));
  CHECK(c.r == 2);
  CHECK(c.mu == 3);
  CHECK(c.bound == 13);
  CHECK(c.conjugacy_class_count == 7);
  CHECK(c.hall_checked);
  CHECK(type_bound_univariate(uni("x^2 + 7/3")).bound == 1);
  // Degree one: no critical values, trivial group, one covering.
  auto lin = type_bound_univariate(uni("2*x + 1"));
  CHECK(lin.r == 0);
  CHECK(lin.bound == 1);
  CHECK_THROWS_AS(type_bound_univariate(uni("5")), InputError);
  CHECK_THROWS_AS(type_bound_univariate(PolynomialMap::parse({"x", "y"}, {"u", "v"}, {"x", "y"})),
                  InputError);
}

TEST_CASE("bounds from presentations") {
  auto integers = GroupPresentation::free_group(1);
  for (std::size_t mu = 1; mu <= 10; ++mu)
    CHECK(type_bound_with_presentation(integers, mu).bound == 1);
  CHECK(type_bound_with_presentation(integers, 5).pi1_source == Pi1Source::UserPresentation);
  CHECK(type_bound_with_presentation(GroupPresentation::free_group(2), 2).bound == 3);
  auto z2 = parse_presentation("gens: a b ; rels: a*b*a^-1*b^-1").presentation;
  for (std::size_t k = 1; k <= 5; ++k) {
    CAPTURE(k);
    CHECK(type_bound_with_presentation(z2, k).bound == hermite_forms(k));
  }
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t mu = 1; mu <= 4; ++mu) {
      auto rep = type_bound_with_presentation(GroupPresentation::free_group(r), mu);
      CHECK(Integer(static_cast<unsigned long>(rep.bound)) == hall_count_free(r, mu));
      CHECK(rep.conjugacy_class_count <= rep.bound);
    }
  CHECK_THROWS_AS(type_bound_with_presentation(integers, 0), InputError);
  CHECK_THROWS_AS(type_bound_with_presentation(GroupPresentation::free_group(3), 6, 100),
                  CapacityError);
}

TEST_CASE("univariate and presentation paths agree") {
  for (const char* f : {"x^2", "x^3 - 3*x", "x^4 - 2*x^2", "x^3 + x", "x^4 + x"}) {
    CAPTURE(f);
    auto u = type_bound_univariate(uni(f));
    auto p = type_bound_with_presentation(GroupPresentation::free_group(u.r), u.mu);
    CHECK(u.bound == p.bound);
    CHECK(u.conjugacy_class_count == p.conjugacy_class_count);
  }
}

TEST_CASE("family bounds") {
  auto a = family_type_bound(fam("x^2 + m*x"), ints(-5, 5));
  CHECK(a.r == 1);
  CHECK(a.mu == 2);
  CHECK(a.bound == 1);
  CHECK(a.deviating_samples.empty());

  auto b = family_type_bound(fam("x^3 - 3*x + m"), ints(-4, 4));
  CHECK(b.r == 2);
  CHECK(b.mu == 3);
  CHECK(b.bound == 13);

  // x^3 + m*x: at m = 0 the two critical values collide.
  auto c = family_type_bound(fam("x^3 + m*x"), ints(-3, 3));
  CHECK(c.r == 2);
  CHECK(c.deviating_samples == std::vector<std::size_t>{3});

  auto t = family_type_bound(fam("x"), ints(1, 3));
  CHECK(t.mu == 1);
  CHECK(t.r == 0);
  CHECK(t.bound == 1);

  // Two samples with r = 1 (m = 0) and r = 2: no strict mode.
  CHECK_THROWS_AS(family_type_bound(fam("x^3 + m*x"), {{Rational(0)}, {Rational(1)}}),
                  InconclusiveError);
}
