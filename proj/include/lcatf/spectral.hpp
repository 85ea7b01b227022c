#pragma once

#include <cstdint>
#include <vector>

#include "lcatf/operators.hpp"

namespace lcatf {

struct EigenPair {
  double value = 0.0;
  Signal vector;  // unit L^2 norm, first nonzero component positive real
};

struct EigenOptions {
  double tolerance = 1e-13;  // off-diagonal Frobenius mass relative to ||M||_F
  int max_sweeps = 100;
};

/// Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ordered by decreasing |lambda|. Throws NotHermitian when
/// max |M - M^H| > 1e-10 ||M||_F.
std::vector<EigenPair> hermitian_eigen(const OperatorMatrix& m, EigenOptions options = {});

/// max_i ||M v_i - lambda_i v_i|| in the Euclidean norm of coefficients.
double eigen_residual(const OperatorMatrix& m, const std::vector<EigenPair>& pairs);
/// max |M - V Lambda V^H| entrywise, with V orthonormal in coefficient space.
double reconstruction_residual(const OperatorMatrix& m, const std::vector<EigenPair>& pairs);

struct DecayProfile {
  std::vector<double> gammas;
  std::vector<double> norms;   // ||f||_{M^gamma}
  std::vector<double> ratios;  // norms[i] / ||f||_{M^2}
};

/// M^{gamma,gamma} norms of f with window g, weight 1 and the canonical window
/// set, measured with unit mass on every phase-space point. gamma = 2 is
/// always evaluated for the ratio denominator.
DecayProfile decay_profile(const Signal& f, const Signal& g, const std::vector<double>& gammas);

/// M^{0.5} / M^2 ratio used to rank concentration.
double concentration_ratio(const Signal& f, const Signal& g);

struct DecayOptions {
  std::vector<double> gammas{0.5, 1.0, 2.0};
  int trials = 500;
  std::uint64_t seed = 0;
  std::size_t top_k = 1;
  /// Relative gap below which adjacent eigenvalues count as tied.
  double tie_tolerance = 1e-9;
};

struct DecayReport {
  std::vector<double> eigenvalues;
  std::vector<DecayProfile> profiles;  // top_k eigenvectors
  std::vector<double> percentiles;     // every eigenvector, in eigenvalue order
  std::vector<double> baseline;        // concentration ratios of the random vectors
  bool degenerate_ties = false;        // some top_k eigenvalue is tied with a neighbour
  std::uint64_t seed = 0;
  int trials = 0;

  /// Median of `percentiles`.
  double median_percentile() const;
};

/// Percentile (0..100) of `value` within `sample`; ties count half.
double percentile_of(double value, const std::vector<double>& sample);

/// Eigen-decomposes A, profiles the top eigenfunctions and ranks every
/// eigenvector's concentration ratio against `trials` Haar-random unit
/// vectors. Trial t draws from CounterRng(seed, t). Throws NotHermitian, and
/// DegenerateSpectrum when the dominant |lambda| <= 1e-8.
DecayReport decay_comparison(const OperatorMatrix& a, const Signal& g, const DecayOptions& options);

/// Random Hermitian matrix with complex normal entries (GUE-like).
OperatorMatrix random_hermitian(const Group& g, std::uint64_t seed);

}  // namespace lcatf
