#include <doctest.h>

#include <cmath>

#include "lcatf/error.hpp"
#include "lcatf/gabor.hpp"
#include "lcatf/random.hpp"
#include "lcatf/tfa.hpp"

using namespace lcatf;

namespace {

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

TEST_CASE("canonical quasi-lattice") {
  const Group z4 = Group::cyclic(4, 2);
  const QuasiLattice l = QuasiLattice::canonical(z4);
  const std::vector<PhasePoint> expected{{{0}, {0}}, {{0}, {1}}, {{1}, {0}}, {{1}, {1}}};
  CHECK(l.points() == expected);
  CHECK(l.redundancy() == 1.0);
  CHECK(l.partitions_phase_space());

  const Group whole = Group::cyclic(5, 1);
  const QuasiLattice w = QuasiLattice::canonical(whole);
  CHECK(w.size() == 5);
  for (PhasePoint p : w.points()) CHECK(p.x.index == 0);

  CHECK(QuasiLattice::canonical(Group::make({1}, {1})).size() == 1);
  CHECK(QuasiLattice::canonical(Group::make({6, 2}, {3, 1})).partitions_phase_space());
  CHECK_FALSE(QuasiLattice::full(z4).partitions_phase_space());
  CHECK(QuasiLattice::refined(z4, {{{0}, {2}}}).size() == 8);
}

TEST_CASE("analysis and synthesis") {
  const Group g = Group::cyclic(6, 3);
  const Signal phi = gaussian_window(g);
  const QuasiLattice l = QuasiLattice::canonical(g);
  const GaborSystem sys{l, phi};

  // The chi_K system is orthogonal: pi(w0) phi has a single coefficient.
  const PhasePoint w0 = l.points()[3];
  const CVector c = analysis(sys, tf_shift(phi, w0));
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(c[i] - (i == 3 ? phi.norm() * phi.norm() : 0.0)) < 1e-14);

  CounterRng rng(1, 0);
  const Signal f = random_signal(g, rng);
  const PhaseFunction v = stft(f, phi);
  const CVector a = analysis(sys, f);
  for (std::size_t i = 0; i < l.size(); ++i) CHECK(std::abs(a[i] - v(l.points()[i])) < 1e-13);

  CVector coeffs(l.size());
  for (cplx& x : coeffs) x = rng.complex_normal();
  cplx lhs = inner(synthesis(sys, coeffs), f);
  cplx rhs = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) rhs += coeffs[i] * std::conj(a[i]);
  CHECK(std::abs(lhs - rhs) < 1e-12);

  CVector unit(l.size());
  unit[2] = 1.0;
  CHECK(max_diff(synthesis(sys, unit).values(), tf_shift(phi, l.points()[2]).values()) == 0.0);
}

TEST_CASE("frame operator") {
  const Group g = Group::cyclic(8, 2);
  const QuasiLattice l = QuasiLattice::canonical(g);
  CounterRng rng(2, 0);
  const Signal w = random_signal(g, rng);
  const OperatorMatrix s = frame_operator(w, w, l);
  CHECK(s.hermitian_defect() <= 1e-13);

  const GaborSystem sys{l, w};
  for (int t = 0; t < 5; ++t) {
    const Signal f = random_signal(g, rng);
    double energy = 0.0;
    for (const cplx& c : analysis(sys, f)) energy += std::norm(c);
    CHECK(std::abs(inner(s.apply(f), f) - energy) <= 1e-11 * energy);
  }
  const OperatorMatrix zero = frame_operator(Signal::zeros(g), w, l);
  for (const cplx& v : zero.entries()) CHECK(v == cplx{});
}

TEST_CASE("tight frame of the Gaussian on Z4") {
  const Group g = Group::cyclic(4, 2);
  const Signal phi = gaussian_window(g);
  const QuasiLattice l = QuasiLattice::canonical(g);
  const FrameBounds b = frame_bounds(phi, l);
  CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.tight());
  const Signal h = dual_window(phi, l);
  CHECK(max_diff(h.values(), (phi * (1.0 / b.lower)).values()) < 1e-14);
}

TEST_CASE("point mass over the full phase space") {
  const Group g = Group::cyclic(6, 2);
  const FrameBounds b = frame_bounds(Signal::delta(g, {0}), QuasiLattice::full(g));
  const double expected = static_cast<double>(g.size()) * g.mass();
  CHECK(b.lower == doctest::Approx(expected).epsilon(1e-13));
  CHECK(b.upper == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("lattice missing a coset is not a frame") {
  for (const Group& g : {Group::cyclic(4, 2), Group::cyclic(6, 3)}) {
    std::vector<PhasePoint> pts = QuasiLattice::canonical(g).points();
    pts.erase(pts.begin() + 1);
    CHECK_THROWS_AS(frame_bounds(gaussian_window(g), QuasiLattice(g, pts)), NotAFrame);
  }
}

TEST_CASE("dual window of a perturbed Gaussian") {
  const Group g = Group::cyclic(4, 2);
  Signal w = gaussian_window(g);
  w[1] += 0.25;

  // On the full phase space S commutes with every shift, so S^-1 g is a dual.
  const QuasiLattice full = QuasiLattice::full(g);
  const Signal h = dual_window(w, full);
  for (int t = 0; t < 10; ++t) {
    CounterRng rng(3, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    CHECK(expansion_residual(f, w, h, full) <= 1e-10 * f.norm());
  }
  CHECK(expansion_residual(Signal::zeros(g), w, h, full) == 0.0);

  // D1 x D2 is not a subgroup of Z4 x Z4, and S^-1 g does not reconstruct there.
  CHECK_THROWS_AS(dual_window(w, QuasiLattice::canonical(g)), ToleranceExceeded);
}

TEST_CASE("dual window expansion on Z8") {
  const Group g = Group::cyclic(8, 4);
  const Signal phi = gaussian_window(g);
  const QuasiLattice l = QuasiLattice::canonical(g);
  const Signal h = dual_window(phi, l);
  for (int t = 0; t < 10; ++t) {
    CounterRng rng(4, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    CHECK(expansion_residual(f, phi, h, l) <= 1e-10 * f.norm());
  }
}

TEST_CASE("discrete norm against the continuous one") {
  // |V_phi f| is constant on each coset of K x K^perp, so the two norms differ
  // by (|K| mass_G)^{1/p - 1/q}.
  for (const Group& g : {Group::cyclic(4, 2), Group::cyclic(6, 3), Group::cyclic(8, 2)}) {
    const Signal phi = gaussian_window(g);
    const QuasiLattice l = QuasiLattice::canonical(g);
    const double k = static_cast<double>(g.subgroup_size()) * g.mass();
    for (int t = 0; t < 5; ++t) {
      CounterRng rng(5, static_cast<std::uint64_t>(t));
      const Signal f = random_signal(g, rng);
      for (double p : {0.5, 1.0, 2.0, kInfinity})
        for (double q : {0.5, 1.0, 2.0, kInfinity}) {
          const double discrete = discrete_modnorm(f, phi, l, {p, q}, Weight::ones(g));
          const double continuous = modulation_norm(f, {p, q}, Weight::ones(g));
          CHECK(continuous ==
                doctest::Approx(std::pow(k, inv(p) - inv(q)) * discrete).epsilon(1e-12));
        }
    }
  }
}

TEST_CASE("quotient coefficients") {
  const Group g = Group::cyclic(8, 2);
  const Signal phi = gaussian_window(g);
  const std::vector<double> c = quotient_coefficients(phi, phi);
  const double ck = static_cast<double>(g.subgroup_size()) * g.mass();
  CHECK(c.front() == doctest::Approx(ck));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] < 1e-14);

  for (double v : quotient_coefficients(Signal::zeros(g), phi)) CHECK(v == 0.0);
  for (int t = 0; t < 10; ++t) {
    CounterRng rng(6, static_cast<std::uint64_t>(t));
    CHECK(quotient_representative_residual(random_signal(g, rng), phi) == 0.0);
    CHECK(quotient_representative_residual(random_signal(g, rng), random_signal(g, rng)) == 0.0);
  }
}

TEST_CASE("frame operator commutes with shifts of a subgroup lattice") {
  const Group g = Group::cyclic(6, 3);
  CounterRng rng(7, 0);
  const Signal w = random_signal(g, rng);
  // {0, 3} x {0, 2, 4} is a subgroup of Z6 x Z6.
  std::vector<PhasePoint> pts;
  for (std::size_t x : {0, 3})
    for (std::size_t xi : {0, 2, 4}) pts.push_back({{x}, {xi}});
  for (const QuasiLattice& l : {QuasiLattice(g, pts), QuasiLattice::full(g)}) {
    const OperatorMatrix s = frame_operator(w, w, l);
    const Signal f = random_signal(g, rng);
    for (PhasePoint p : l.points())
      CHECK((s.apply(tf_shift(f, p)) - tf_shift(s.apply(f), p)).norm() <= 1e-11);
  }
}
