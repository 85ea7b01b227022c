#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lcatf/error.hpp"
#include "lcatf/random.hpp"
#include "lcatf/spectral.hpp"

using namespace lcatf;

namespace {

Eigen::MatrixXcd to_eigen(const OperatorMatrix& m) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
  return out;
}

void compare_with_eigen(const OperatorMatrix& m) {
  const std::vector<EigenPair> pairs = hermitian_eigen(m);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
  REQUIRE(solver.info() == Eigen::Success);

  std::vector<double> expected(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + solver.eigenvalues().size());
  std::vector<double> ours;
  for (const EigenPair& p : pairs) ours.push_back(p.value);
  std::sort(expected.begin(), expected.end());
  std::vector<double> sorted = ours;
  std::sort(sorted.begin(), sorted.end());
  const double scale = std::max(1.0, m.frobenius_norm());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(std::abs(sorted[i] - expected[i]) <= 1e-11 * scale);

  for (std::size_t i = 1; i < ours.size(); ++i) CHECK(std::abs(ours[i - 1]) >= std::abs(ours[i]));

  // Each eigenvector spans the same line as Eigen's for a simple eigenvalue.
  const double sqrt_mass = std::sqrt(m.group().mass());
  for (const EigenPair& p : pairs) {
    Eigen::Index k = 0;
    (solver.eigenvalues().array() - p.value).abs().minCoeff(&k);
    const double gap_left = k > 0 ? solver.eigenvalues()(k) - solver.eigenvalues()(k - 1) : 1.0;
    const double gap_right = k + 1 < solver.eigenvalues().size()
                                 ? solver.eigenvalues()(k + 1) - solver.eigenvalues()(k)
                                 : 1.0;
    if (std::min(gap_left, gap_right) < 1e-6 * scale) continue;
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
      overlap += p.vector[i] * sqrt_mass * std::conj(solver.eigenvectors()(i, k));
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-9);
  }
  CHECK(eigen_residual(m, pairs) <= 1e-11 * scale);
  CHECK(reconstruction_residual(m, pairs) <= 1e-11 * scale);
}

}  // namespace

TEST_CASE("Jacobi eigensolver agrees with Eigen") {
  for (const Group& g : {Group::cyclic(8, 2), Group::make({6, 2}, {3, 1}), Group::cyclic(17, 1)})
    for (std::uint64_t seed : {1u, 2u, 3u}) compare_with_eigen(random_hermitian(g, seed));

  const Group g = Group::cyclic(8, 2);
  const Signal phi = gaussian_window(g);
  CounterRng rng(4, 0);
  PhaseFunction a = random_phase_function(g, rng);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(a[i]);
  compare_with_eigen(localization_matrix(a, phi, phi));
}

TEST_CASE("eigenvectors are normalized with a fixed phase") {
  const Group g = Group::make({3, 4}, {1, 2}, 0.5);
  for (const EigenPair& p : hermitian_eigen(random_hermitian(g, 9))) {
    CHECK(p.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
    std::size_t first = 0;
    while (std::abs(p.vector[first]) <= 1e-12 * std::sqrt(static_cast<double>(g.size()))) ++first;
    CHECK(p.vector[first].real() > 0.0);
    CHECK(std::abs(p.vector[first].imag()) <= 1e-12);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  const Group g = Group::cyclic(4, 2);
  OperatorMatrix m = OperatorMatrix::identity(g);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(m), NotHermitian);
}

TEST_CASE("decay profile of a flat phase-space distribution") {
  // K = G: phi = 1 and V_phi delta_0 has constant modulus on all n^2 points, so
  // the counting-measure ratio is (n^2)^{1/gamma - 1/2}.
  const Group g = Group::cyclic(8, 1);
  const double n = 8.0;
  const DecayProfile d = decay_profile(Signal::delta(g, {0}), gaussian_window(g), {0.5, 1.0, 2.0});
  CHECK(d.ratios[0] == doctest::Approx(std::pow(n, 2.0 / 0.5 - 1.0)).epsilon(1e-12));
  CHECK(d.ratios[1] == doctest::Approx(n).epsilon(1e-12));
  CHECK(d.ratios[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concentration_ratio(Signal::delta(g, {0}), gaussian_window(g)) ==
        doctest::Approx(std::pow(n, 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(decay_profile(Signal::delta(g, {0}), Signal::zeros(g), {1.0}), ZeroWindow);
}

TEST_CASE("percentiles") {
  const std::vector<double> sample{1.0, 2.0, 3.0, 4.0};
  CHECK(percentile_of(0.5, sample) == 0.0);
  CHECK(percentile_of(5.0, sample) == 100.0);
  CHECK(percentile_of(2.0, sample) == 37.5);
  DecayReport r;
  r.percentiles = {10.0, 90.0, 40.0};
  CHECK(r.median_percentile() == 40.0);
}

TEST_CASE("decay comparison") {
  const Group g = Group::cyclic(16, 4);
  DecayOptions options;
  options.trials = 100;
  options.seed = 5;
  const DecayReport a = decay_comparison(random_hermitian(g, 5), gaussian_window(g), options);
  const DecayReport b = decay_comparison(random_hermitian(g, 5), gaussian_window(g), options);
  CHECK(a.baseline == b.baseline);
  CHECK(a.percentiles == b.percentiles);
  CHECK(a.percentiles.size() == g.size());
  CHECK(a.profiles.size() == 1);

  CounterRng rng(5, 7);
  CHECK(a.baseline[7] == concentration_ratio(random_unit_signal(g, rng), gaussian_window(g)));
  CHECK_THROWS_AS(decay_comparison(OperatorMatrix::zeros(g), gaussian_window(g), options),
                  DegenerateSpectrum);
}
