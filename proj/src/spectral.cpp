#include "lcatf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcatf/error.hpp"
#include "lcatf/random.hpp"

namespace lcatf {

namespace {

double off_diagonal_mass(const CVector& a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) acc += std::norm(a[i * n + j]);
  return std::sqrt(acc);
}

// One complex Jacobi rotation zeroing a(p, q); A <- J^H A J, V <- V J.
void rotate(CVector& a, CVector& v, std::size_t n, std::size_t p, std::size_t q) {
  const cplx apq = a[p * n + q];
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx e = apq / r;
  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const cplx jpp = c;
  const cplx jpq = s;
  const cplx jqp = -s * std::conj(e);
  const cplx jqq = c * std::conj(e);

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a[k * n + p];
    const cplx akq = a[k * n + q];
    a[k * n + p] = akp * jpp + akq * jqp;
    a[k * n + q] = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a[p * n + k];
    const cplx aqk = a[q * n + k];
    a[p * n + k] = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a[q * n + k] = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
  a[p * n + p] = a[p * n + p].real();
  a[q * n + q] = a[q * n + q].real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v[k * n + p];
    const cplx vkq = v[k * n + q];
    v[k * n + p] = vkp * jpp + vkq * jqp;
    v[k * n + q] = vkp * jpq + vkq * jqq;
  }
}

double euclidean_norm(std::span<const cplx> values) {
  double acc = 0.0;
  for (const cplx& c : values) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace

std::vector<EigenPair> hermitian_eigen(const OperatorMatrix& m, EigenOptions options) {
  const std::size_t n = m.dim();
  const double scale = m.frobenius_norm();
  if (m.hermitian_defect() > 1e-10 * scale)
    throw NotHermitian("matrix defect " + std::to_string(m.hermitian_defect()) +
                       " exceeds 1e-10 ||M||");

  CVector a(m.entries().begin(), m.entries().end());
  // Symmetrize so rounding in the input cannot break the rotation algebra.
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = a[i * n + i].real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
      a[i * n + j] = avg;
      a[j * n + i] = std::conj(avg);
    }
  }
  CVector v(n * n);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_mass(a, n) <= options.tolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, n, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double li = a[i * n + i].real();
    const double lj = a[j * n + j].real();
    if (std::abs(li) != std::abs(lj)) return std::abs(li) > std::abs(lj);
    return li > lj;
  });

  const Group& g = m.group();
  const double unit = 1.0 / std::sqrt(g.mass());
  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (std::size_t idx : order) {
    CVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + idx];
    const double len = euclidean_norm(col);
    cplx phase = 1.0;
    for (const cplx& c : col)
      if (std::abs(c) > 1e-12 * len) {
        phase = std::conj(c) / std::abs(c);
        break;
      }
    for (cplx& c : col) c *= phase * (unit / len);
    pairs.push_back({a[idx * n + idx].real(), Signal(g, std::move(col))});
  }
  return pairs;
}

double eigen_residual(const OperatorMatrix& m, const std::vector<EigenPair>& pairs) {
  double worst = 0.0;
  for (const EigenPair& pair : pairs) {
    const Signal mv = m.apply(pair.vector);
    CVector diff(mv.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = mv[i] - pair.value * pair.vector[i];
    worst = std::max(worst, euclidean_norm(diff) / euclidean_norm(pair.vector.values()));
  }
  return worst;
}

double reconstruction_residual(const OperatorMatrix& m, const std::vector<EigenPair>& pairs) {
  const std::size_t n = m.dim();
  CVector rebuilt(n * n);
  for (const EigenPair& pair : pairs) {
    const double len = euclidean_norm(pair.vector.values());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rebuilt[i * n + j] +=
            pair.value * pair.vector[i] * std::conj(pair.vector[j]) / (len * len);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n * n; ++i)
    worst = std::max(worst, std::abs(m.entries()[i] - rebuilt[i]));
  return worst;
}

namespace {

// |M_Q V_g f| with the canonical window set, laid out x * |G| + xi.
std::vector<double> maximal_magnitudes(const Signal& f, const Signal& g) {
  bool zero = true;
  for (const cplx& c : g.values()) zero = zero && c == cplx{};
  if (zero) throw ZeroWindow("decay profile needs a nonzero window");
  const PhaseFunction mf = maximal_function(stft(f, g), WindowSet::canonical(f.group()));
  std::vector<double> out(mf.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mf[i].real();
  return out;
}

double counting_norm(const std::vector<double>& mags, std::size_t n, double gamma) {
  return mixed_norm(mags, n, n, 1.0, 1.0, {gamma, gamma});
}

}  // namespace

DecayProfile decay_profile(const Signal& f, const Signal& g, const std::vector<double>& gammas) {
  const std::size_t n = f.group().size();
  const std::vector<double> mags = maximal_magnitudes(f, g);
  const double base = counting_norm(mags, n, 2.0);
  DecayProfile out;
  out.gammas = gammas;
  for (double gamma : gammas) {
    const double value = counting_norm(mags, n, gamma);
    out.norms.push_back(value);
    out.ratios.push_back(base > 0.0 ? value / base : 0.0);
  }
  return out;
}

double concentration_ratio(const Signal& f, const Signal& g) {
  const std::size_t n = f.group().size();
  const std::vector<double> mags = maximal_magnitudes(f, g);
  const double base = counting_norm(mags, n, 2.0);
  return base > 0.0 ? counting_norm(mags, n, 0.5) / base : 0.0;
}

double percentile_of(double value, const std::vector<double>& sample) {
  if (sample.empty()) return 0.0;
  double below = 0.0;
  for (double s : sample) {
    if (s < value)
      below += 1.0;
    else if (s == value)
      below += 0.5;
  }
  return 100.0 * below / static_cast<double>(sample.size());
}

double DecayReport::median_percentile() const {
  if (percentiles.empty()) return 0.0;
  std::vector<double> sorted = percentiles;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

DecayReport decay_comparison(const OperatorMatrix& a, const Signal& g,
                             const DecayOptions& options) {
  require_same_group(a.group(), g.group(), "decay_comparison");
  const std::vector<EigenPair> pairs = hermitian_eigen(a);
  if (pairs.empty() || std::abs(pairs.front().value) <= 1e-8)
    throw DegenerateSpectrum("dominant eigenvalue is below 1e-8");

  DecayReport report;
  report.seed = options.seed;
  report.trials = options.trials;
  for (const EigenPair& p : pairs) report.eigenvalues.push_back(p.value);

  const double top = std::abs(pairs.front().value);
  const std::size_t k = std::min(options.top_k, pairs.size());
  for (std::size_t i = 0; i < k; ++i) {
    const bool tied_prev =
        i > 0 && std::abs(pairs[i].value - pairs[i - 1].value) <= options.tie_tolerance * top;
    const bool tied_next = i + 1 < pairs.size() &&
                           std::abs(pairs[i].value - pairs[i + 1].value) <=
                               options.tie_tolerance * top;
    report.degenerate_ties = report.degenerate_ties || tied_prev || tied_next;
    report.profiles.push_back(decay_profile(pairs[i].vector, g, options.gammas));
  }

  const Group& grp = a.group();
  report.baseline.reserve(options.trials);
  for (int t = 0; t < options.trials; ++t) {
    CounterRng rng(options.seed, static_cast<std::uint64_t>(t));
    report.baseline.push_back(concentration_ratio(random_unit_signal(grp, rng), g));
  }
  for (const EigenPair& p : pairs)
    report.percentiles.push_back(percentile_of(concentration_ratio(p.vector, g), report.baseline));
  return report;
}

OperatorMatrix random_hermitian(const Group& g, std::uint64_t seed) {
  CounterRng rng(seed, 0x6865726dULL);
  const std::size_t n = g.size();
  OperatorMatrix m = OperatorMatrix::zeros(g);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = rng.complex_normal() * std::sqrt(0.5);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

}  // namespace lcatf
