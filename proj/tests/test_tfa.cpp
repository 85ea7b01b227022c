#include <doctest.h>

#include <cmath>

#include "lcatf/random.hpp"
#include "lcatf/tfa.hpp"

using namespace lcatf;

namespace {

PhasePoint random_point(const Group& g, CounterRng& rng) {
  return {{rng.next_u64() % g.size()}, {rng.next_u64() % g.size()}};
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("generalized Gaussian") {
  const Group z4 = Group::cyclic(4, 2);
  const Signal phi = gaussian_window(z4);
  const CVector expected{1.0, 0.0, 1.0, 0.0};
  CHECK(max_diff(phi.values(), expected) == 0.0);

  const Group discrete = Group::cyclic(5, 5);
  CHECK(max_diff(gaussian_window(discrete).values(), Signal::delta(discrete, {0}).values()) == 0.0);

  const CVector circ{2.0, 0.0, 2.0, 0.0};
  CHECK(max_diff(gaussian_circ(z4).values(), circ) < 1e-15);
  for (const Group& g : {Group::cyclic(6, 3), Group::make({6, 2}, {3, 1})})
    CHECK(max_diff(gaussian_circ(g).values(), convolve(gaussian_window(g), gaussian_window(g)).values()) <
          1e-14);
}

TEST_CASE("STFT of the Gaussian is a multiple of the subgroup box") {
  for (const Group& g : {Group::cyclic(4, 2), Group::cyclic(6, 3), Group::make({6, 2}, {3, 1})}) {
    const Signal phi = gaussian_window(g);
    const PhaseFunction v = stft(phi, phi);
    const double c = static_cast<double>(g.subgroup_size()) * g.mass();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const PhasePoint p = v.point(i);
      const bool inside = g.in_subgroup(p.x.index) && g.in_annihilator(p.xi.index);
      CHECK(std::abs(v[i] - (inside ? c : 0.0)) < 1e-14);
    }
  }
  CHECK(stft(gaussian_window(Group::cyclic(4, 2)), gaussian_window(Group::cyclic(4, 2))).at(0, 0).real() ==
        doctest::Approx(2.0));
}

TEST_CASE("STFT matches its definition") {
  const Group g = Group::make({6, 2}, {3, 1});
  CounterRng rng(9, 0);
  const Signal f = random_signal(g, rng);
  const Signal w = random_signal(g, rng);
  const PhaseFunction v = stft(f, w);
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(std::abs(v[i] - inner(f, tf_shift(w, v.point(i)))) < 1e-12);
}

TEST_CASE("Moyal relation") {
  const Group g = Group::cyclic(6, 2);
  CounterRng rng(4, 4);
  const Signal f1 = random_signal(g, rng);
  const Signal f2 = random_signal(g, rng);
  const Signal g1 = random_signal(g, rng);
  const Signal g2 = random_signal(g, rng);
  const cplx lhs = inner_phase(stft(f1, g1), stft(f2, g2));
  const cplx rhs = inner(f1, f2) * std::conj(inner(g1, g2));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("J map") {
  const Group g = Group::cyclic(4, 2);
  const DualPhasePoint j = jmap(g, {{1}, {3}});
  CHECK(j.omega.index == 1);
  CHECK(j.u.index == 1);
  CHECK(jmap(g, {{0}, {0}}) == DualPhasePoint{{0}, {0}});
  const Group h = Group::make({6, 2}, {3, 1});
  for (std::size_t x = 0; x < h.size(); ++x)
    for (std::size_t xi = 0; xi < h.size(); ++xi) {
      const PhasePoint p{{x}, {xi}};
      CHECK(jmap_inverse(h, jmap(h, p)) == p);
    }
}

TEST_CASE("STFT shift identity") {
  const Group g = Group::cyclic(6, 3);
  CounterRng rng(21, 0);
  const Signal f = random_signal(g, rng);
  const Signal w = random_signal(g, rng);
  CHECK(stft_shift_identity_residual(f, w, {{0}, {0}}, {{0}, {0}}) == 0.0);
  const Signal phi = gaussian_window(g);
  for (int t = 0; t < 20; ++t) {
    const PhasePoint a = random_point(g, rng);
    const PhasePoint b = random_point(g, rng);
    CHECK(stft_shift_identity_residual(f, w, a, b) <= 1e-12);
    CHECK(stft_shift_identity_residual(phi, phi, a, b) <= 1e-12);
  }
}

TEST_CASE("Rihaczek distribution") {
  const Group g = Group::cyclic(4, 2);
  CounterRng rng(8, 8);
  const Signal f = random_signal(g, rng);
  const Signal h = random_signal(g, rng);
  const PhaseFunction r = rihaczek(f, h);

  // Summing out the frequency variable leaves f conj(h).
  for (std::size_t x = 0; x < g.size(); ++x) {
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < g.size(); ++xi) acc += r.at(x, xi) * g.dual_mass();
    CHECK(std::abs(acc - f[x] * std::conj(h[x])) < 1e-13);
  }

  CHECK(rihaczek_covariance_residual(f, h, {{0}, {0}}, {{0}, {0}}) < 1e-15);
  for (int t = 0; t < 20; ++t) {
    const PhasePoint a = random_point(g, rng);
    const PhasePoint b = random_point(g, rng);
    CHECK(rihaczek_covariance_residual(f, h, a, b) <= 1e-12);
    CHECK(rihaczek_covariance_residual(f, h, a, a) <= 1e-12);
  }
}

TEST_CASE("test function STFT from the closed sum") {
  const Group g = Group::cyclic(4, 2);
  const Signal phi = gaussian_window(g);
  const TestFunction single{g, {{1.0, {{0}, {0}}}}};
  CHECK(max_diff(testfunction_stft(single, single).values(), stft(phi, phi).values()) < 1e-14);

  const TestFunction empty{g, {}};
  const PhaseFunction none = testfunction_stft(empty, single);
  for (const cplx& v : none.values()) CHECK(v == cplx{});

  CounterRng rng(13, 0);
  const TestFunction a{g, {{{1.0, 2.0}, {{1}, {3}}}, {{-0.5, 0.0}, {{2}, {1}}}}};
  const TestFunction b{g, {{{0.0, 1.0}, {{3}, {0}}}, {{1.5, -1.0}, {{1}, {2}}}}};
  CHECK(max_diff(testfunction_stft(a, b).values(),
                 stft(a.materialize(), b.materialize()).values()) < 1e-12);
  CHECK(max_diff(testfunction_rihaczek(a, b).values(),
                 rihaczek(a.materialize(), b.materialize()).values()) < 1e-12);
}

TEST_CASE("magic formula") {
  const Group g = Group::cyclic(4, 2);
  const Signal phi = gaussian_window(g);
  CHECK(magic_formula_residual(phi, phi, phi) <= 1e-10);
  CHECK(magic_formula_residual(phi, Signal::zeros(g), phi) == 0.0);
  CounterRng rng(17, 0);
  CHECK(magic_formula_residual(phi, random_signal(g, rng), random_signal(g, rng)) <= 1e-10);
}
