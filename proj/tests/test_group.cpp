#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "lcatf/error.hpp"
#include "lcatf/group.hpp"

using namespace lcatf;

namespace {

std::vector<std::size_t> indices(const std::vector<GroupElement>& v) {
  std::vector<std::size_t> out;
  for (auto e : v) out.push_back(e.index);
  return out;
}

std::vector<std::size_t> indices(const std::vector<DualElement>& v) {
  std::vector<std::size_t> out;
  for (auto e : v) out.push_back(e.index);
  return out;
}

// exp(2 pi i sum xi_j x_j / N_j) straight from the residues.
cplx naive_character(const Group& g, std::size_t xi, std::size_t x) {
  double angle = 0.0;
  for (std::size_t j = 0; j < g.rank(); ++j)
    angle += 2.0 * std::numbers::pi * g.residues(xi)[j] * g.residues(x)[j] / g.factors()[j];
  return std::polar(1.0, angle);
}

}  // namespace

TEST_CASE("cyclic group with a proper subgroup") {
  const Group g = Group::cyclic(4, 2);
  CHECK(g.size() == 4);
  CHECK(indices(g.subgroup()) == std::vector<std::size_t>{0, 2});
  CHECK(indices(g.annihilator()) == std::vector<std::size_t>{0, 2});
  CHECK(g.mass() * g.dual_mass() * g.size() == doctest::Approx(1.0));
}

TEST_CASE("trivial group") {
  const Group g = Group::make({1}, {1});
  CHECK(g.size() == 1);
  CHECK(g.subgroup_size() == 1);
  CHECK(g.annihilator_size() == 1);
  CHECK(g.character(0, 0) == cplx{1.0, 0.0});
}

TEST_CASE("product group orders") {
  const Group g = Group::make({6, 2}, {3, 1});
  CHECK(g.size() == 12);
  CHECK(g.subgroup_size() == 4);
  CHECK(g.annihilator_size() == 3);
}

TEST_CASE("annihilator agrees with an exhaustive character check") {
  for (const Group& g : {Group::cyclic(8, 2), Group::make({6, 2}, {3, 1}), Group::cyclic(9, 3),
                         Group::make({4, 6}, {2, 3})}) {
    std::vector<std::size_t> expected;
    for (std::size_t xi = 0; xi < g.size(); ++xi) {
      bool trivial = true;
      for (GroupElement k : g.subgroup())
        trivial = trivial && std::abs(naive_character(g, xi, k.index) - 1.0) < 1e-12;
      if (trivial) expected.push_back(xi);
    }
    CHECK(indices(g.annihilator()) == expected);
    CHECK(g.subgroup().size() * g.annihilator().size() == g.size());
  }
  CHECK(indices(Group::cyclic(8, 2).annihilator()) == std::vector<std::size_t>{0, 4});
}

TEST_CASE("extreme subgroups") {
  const Group whole = Group::cyclic(6, 1);
  CHECK(whole.subgroup_size() == 6);
  CHECK(indices(whole.annihilator()) == std::vector<std::size_t>{0});
  const Group trivial = Group::cyclic(6, 6);
  CHECK(trivial.subgroup_size() == 1);
  CHECK(trivial.annihilator_size() == 6);
}

TEST_CASE("invalid groups are rejected") {
  CHECK_THROWS_AS(Group::make({}, {}), EmptyGroup);
  CHECK_THROWS_AS(Group::make({0}, {1}), EmptyGroup);
  CHECK_THROWS_AS(Group::make({6}, {4}), NonDivisor);
  CHECK_THROWS_AS(Group::make({6, 2}, {3}), NonDivisor);
}

TEST_CASE("character values") {
  const Group z4 = Group::cyclic(4, 2);
  CHECK(std::abs(z4.character(1, 1) - cplx{0.0, 1.0}) < 1e-15);
  const Group z2 = Group::cyclic(2, 1);
  CHECK(std::abs(z2.character(1, 1) - cplx{-1.0, 0.0}) < 1e-15);

  const Group g = Group::make({6, 2}, {3, 1});
  for (std::size_t xi = 0; xi < g.size(); ++xi)
    for (std::size_t x = 0; x < g.size(); ++x) {
      const cplx c = g.character(xi, x);
      CHECK(std::abs(c - naive_character(g, xi, x)) < 1e-14);
      CHECK(std::abs(std::abs(c) - 1.0) <= 1e-15);
    }
  for (std::size_t x = 0; x < g.size(); ++x) CHECK(g.character(0, x) == cplx{1.0, 0.0});
}

TEST_CASE("bicharacter law") {
  const Group g = Group::make({6, 4}, {3, 2});
  for (std::size_t xi = 0; xi < g.size(); ++xi)
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = 0; y < g.size(); y += 5)
        CHECK(std::abs(g.character(xi, g.add(x, y)) - g.character(xi, x) * g.character(xi, y)) <=
              1e-15);
}

TEST_CASE("equal phases give identical character values") {
  const Group g = Group::make({6, 4}, {3, 2});
  for (std::size_t xi = 0; xi < g.size(); ++xi)
    for (std::size_t x = 0; x < g.size(); ++x) {
      CHECK(g.character(xi, x) == g.character(x, xi));
      CHECK(g.character(xi, g.neg(x)) == g.character(g.neg(xi), x));
    }
}

TEST_CASE("group arithmetic") {
  const Group g = Group::make({6, 2}, {3, 1});
  for (std::size_t a = 0; a < g.size(); ++a) {
    CHECK(g.add(a, g.neg(a)) == 0);
    for (std::size_t b = 0; b < g.size(); ++b) {
      CHECK(g.sub(g.add(a, b), b) == a);
      CHECK(g.add(a, b) == g.add(b, a));
    }
  }
  CHECK(g.element({7, 3}).index == g.element({1, 1}).index);
  CHECK(g.element({-1, 0}).index == g.element({5, 0}).index);
}

TEST_CASE("coset representatives") {
  const CosetRepresentatives z4 = coset_representatives(Group::cyclic(4, 2));
  CHECK(indices(z4.group_reps) == std::vector<std::size_t>{0, 1});
  CHECK(indices(z4.dual_reps) == std::vector<std::size_t>{0, 1});

  const CosetRepresentatives z6 = coset_representatives(Group::cyclic(6, 3));
  CHECK(indices(z6.group_reps) == std::vector<std::size_t>{0, 1, 2});
  CHECK(indices(z6.dual_reps) == std::vector<std::size_t>{0, 1});

  const CosetRepresentatives whole = coset_representatives(Group::cyclic(5, 1));
  CHECK(indices(whole.group_reps) == std::vector<std::size_t>{0});
}

TEST_CASE("phase space as a group") {
  const Group g = Group::cyclic(6, 3);
  const Group p = g.phase_space();
  CHECK(p.size() == 36);
  CHECK(p.subgroup_size() == g.subgroup_size() * g.annihilator_size());
  CHECK(p.mass() == doctest::Approx(g.mass() * g.dual_mass()));
  CHECK(p.element({2, 5}).index == 2 * 6 + 5);
}

TEST_CASE("direct product") {
  const Group g = product(Group::cyclic(6, 3), Group::cyclic(2, 1));
  CHECK(g == Group::make({6, 2}, {3, 1}));
}
