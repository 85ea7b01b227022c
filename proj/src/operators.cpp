#include "lcatf/operators.hpp"

#include <algorithm>
#include <cmath>

#include "lcatf/error.hpp"

namespace lcatf {

OperatorMatrix::OperatorMatrix(Group group, CVector entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  if (entries_.size() != group_.size() * group_.size())
    throw GroupMismatch("operator matrix needs |G|^2 entries");
}

OperatorMatrix OperatorMatrix::zeros(const Group& g) {
  return OperatorMatrix(g, CVector(g.size() * g.size()));
}

OperatorMatrix OperatorMatrix::identity(const Group& g) {
  OperatorMatrix m = zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) m(i, i) = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::from_columns(const Group& g,
                                            const std::function<Signal(const Signal&)>& op) {
  OperatorMatrix m = zeros(g);
  for (std::size_t col = 0; col < g.size(); ++col) {
    const Signal image = op(Signal::delta(g, {col}));
    require_same_group(g, image.group(), "from_columns");
    for (std::size_t row = 0; row < g.size(); ++row) m(row, col) = image[row];
  }
  return m;
}

Signal OperatorMatrix::apply(const Signal& f) const {
  require_same_group(group_, f.group(), "OperatorMatrix::apply");
  const std::size_t n = dim();
  Signal out = Signal::zeros(group_);
  for (std::size_t row = 0; row < n; ++row) {
    cplx acc = 0.0;
    for (std::size_t col = 0; col < n; ++col) acc += entries_[row * n + col] * f[col];
    out[row] = acc;
  }
  return out;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out = zeros(group_);
  for (std::size_t row = 0; row < dim(); ++row)
    for (std::size_t col = 0; col < dim(); ++col) out(col, row) = std::conj((*this)(row, col));
  return out;
}

double OperatorMatrix::hermitian_defect() const {
  double defect = 0.0;
  for (std::size_t row = 0; row < dim(); ++row)
    for (std::size_t col = row; col < dim(); ++col)
      defect = std::max(defect, std::abs((*this)(row, col) - std::conj((*this)(col, row))));
  return defect;
}

double OperatorMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& v : entries_) acc += std::norm(v);
  return std::sqrt(acc);
}

cplx OperatorMatrix::trace() const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) acc += (*this)(i, i);
  return acc;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_group(group_, other.group_, "operator addition");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx c) {
  for (cplx& v : entries_) v *= c;
  return *this;
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_group(a.group(), b.group(), "max_abs_difference");
  double diff = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    diff = std::max(diff, std::abs(a.entries()[i] - b.entries()[i]));
  return diff;
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_group(a.group(), b.group(), "multiply");
  const std::size_t n = a.dim();
  OperatorMatrix out = OperatorMatrix::zeros(a.group());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Signal kn_apply(const PhaseFunction& sigma, const Signal& f) {
  require_same_group(sigma.base(), f.group(), "kn_apply");
  const Group& g = f.group();
  const Signal fhat = fourier(f);
  Signal out = Signal::zeros(g);
  for (std::size_t x = 0; x < g.size(); ++x) {
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < g.size(); ++xi)
      acc += sigma.at(x, xi) * fhat[xi] * g.character(xi, x);
    out[x] = acc * g.dual_mass();
  }
  return out;
}

double kn_weak_residual(const PhaseFunction& sigma, const Signal& f, const Signal& g) {
  return std::abs(inner(kn_apply(sigma, f), g) - inner_phase(sigma, rihaczek(g, f)));
}

CVector kn_kernel(const PhaseFunction& sigma) {
  const Group& g = sigma.base();
  const std::size_t n = g.size();
  CVector k(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < n; ++u) {
      cplx acc = 0.0;
      const std::size_t diff = g.sub(u, x);
      for (std::size_t xi = 0; xi < n; ++xi)
        acc += sigma.at(x, xi) * std::conj(g.character(xi, diff));
      k[x * n + u] = acc * g.dual_mass();
    }
  return k;
}

OperatorMatrix kn_matrix(const PhaseFunction& sigma) {
  const Group& g = sigma.base();
  CVector k = kn_kernel(sigma);
  for (cplx& v : k) v *= g.mass();
  return OperatorMatrix(g, std::move(k));
}

double kn_kernel_residual(const PhaseFunction& sigma, const Signal& f, const Signal& g) {
  require_same_group(sigma.base(), f.group(), "kn_kernel_residual");
  require_same_group(sigma.base(), g.group(), "kn_kernel_residual");
  const Group& grp = f.group();
  const std::size_t n = grp.size();
  const CVector k = kn_kernel(sigma);
  // <k, g (x) conj f> on G x G.
  cplx pairing = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < n; ++u) pairing += k[x * n + u] * std::conj(g[x]) * f[u];
  pairing *= grp.mass() * grp.mass();
  return std::abs(inner(kn_apply(sigma, f), g) - pairing);
}

CVector gabor_matrix(const PhaseFunction& sigma, const Signal& g,
                     const std::vector<PhasePoint>& points) {
  require_same_group(sigma.base(), g.group(), "gabor_matrix");
  const std::size_t m = points.size();
  std::vector<Signal> atoms;
  atoms.reserve(m);
  for (PhasePoint p : points) atoms.push_back(tf_shift(g, p));
  CVector out(m * m);
  for (std::size_t col = 0; col < m; ++col) {
    const Signal image = kn_apply(sigma, atoms[col]);
    for (std::size_t row = 0; row < m; ++row) out[row * m + col] = inner(image, atoms[row]);
  }
  return out;
}

CVector gabor_matrix_closed_form(const PhaseFunction& sigma,
                                 const std::vector<PhasePoint>& points) {
  const Group& g = sigma.base();
  const std::size_t n = g.size();
  const Signal phi = gaussian_window(g);
  const Signal big_phi = rihaczek(phi, phi).as_signal();
  const Signal s = sigma.as_signal();

  const std::size_t m = points.size();
  CVector out(m * m);
  for (std::size_t row = 0; row < m; ++row) {
    const PhasePoint w = points[row];
    for (std::size_t col = 0; col < m; ++col) {
      const PhasePoint u = points[col];
      const DualPhasePoint j = jmap(g, sub(g, u, w));
      const PhasePoint on_phase{{w.x.index * n + u.xi.index}, {j.omega.index * n + j.u.index}};
      const cplx phase = std::conj(g.character(u.xi, g.sub(w.x, u.x)));
      out[row * m + col] = phase * stft_at(s, big_phi, on_phase);
    }
  }
  return out;
}

Signal localization_apply(const PhaseFunction& a, const Signal& psi1, const Signal& psi2,
                          const Signal& f) {
  require_same_group(a.base(), f.group(), "localization_apply");
  require_same_group(psi1.group(), psi2.group(), "localization_apply");
  const Group& g = f.group();
  const PhaseFunction v = stft(f, psi1);
  Signal out = Signal::zeros(g);
  const double mass = g.mass() * g.dual_mass();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx coef = a[i] * v[i] * mass;
    if (coef == cplx{}) continue;
    out += tf_shift(psi2, a.point(i)) * coef;
  }
  return out;
}

OperatorMatrix localization_matrix(const PhaseFunction& a, const Signal& psi1,
                                   const Signal& psi2) {
  require_same_group(a.base(), psi1.group(), "localization_matrix");
  require_same_group(psi1.group(), psi2.group(), "localization_matrix");
  const Group& g = psi1.group();
  const std::size_t n = g.size();
  OperatorMatrix out = OperatorMatrix::zeros(g);
  const double mass = g.mass() * g.mass() * g.dual_mass();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    const Signal s1 = tf_shift(psi1, a.point(i));
    const Signal s2 = tf_shift(psi2, a.point(i));
    const cplx coef = a[i] * mass;
    for (std::size_t row = 0; row < n; ++row) {
      const cplx left = coef * s2[row];
      for (std::size_t col = 0; col < n; ++col) out(row, col) += left * std::conj(s1[col]);
    }
  }
  return out;
}

double localization_weak_residual(const PhaseFunction& a, const Signal& psi1,
                                  const Signal& psi2, const Signal& f, const Signal& g) {
  const PhaseFunction vf = stft(f, psi1);
  const PhaseFunction vg = stft(g, psi2);
  PhaseFunction product = PhaseFunction::zeros(a.base());
  for (std::size_t i = 0; i < product.size(); ++i) product[i] = std::conj(vf[i]) * vg[i];
  return std::abs(inner(localization_apply(a, psi1, psi2, f), g) - inner_phase(a, product));
}

PhaseFunction loc_to_kn_symbol(const PhaseFunction& a, const Signal& psi2, const Signal& psi1) {
  return convolve_phase(a, rihaczek(psi2, psi1));
}

double loc_kn_residual(const PhaseFunction& a, const Signal& psi1, const Signal& psi2) {
  return max_abs_difference(localization_matrix(a, psi1, psi2),
                            kn_matrix(loc_to_kn_symbol(a, psi2, psi1)));
}

namespace {

double reciprocal(double v) { return std::isinf(v) ? 0.0 : 1.0 / v; }

}  // namespace

bool RihaczekExponents::admissible() const {
  for (double v : {first.p, first.q, second.p, second.q})
    if (v > target.q) return false;
  const double lhs = std::min(reciprocal(first.p) + reciprocal(second.p),
                              reciprocal(first.q) + reciprocal(second.q));
  return lhs >= reciprocal(target.p) + reciprocal(target.q) - 1e-12;
}

ProbeResult rihaczek_continuity_probe(const Signal& g, const Signal& f,
                                      const RihaczekExponents& e, const Weight& v) {
  if (!e.admissible()) throw Error("rihaczek_continuity_probe: inadmissible exponents");
  const Group& grp = g.group();
  const std::size_t n = grp.size();
  const Group phase = grp.phase_space();
  const std::size_t big = phase.size();

  // 1 (x) v o J^{-1} on (G x G^) x (G^ x G): J^{-1}(omega, u) = (u, -omega).
  std::vector<double> outer_weight(big * big);
  for (std::size_t z = 0; z < big; ++z)
    for (std::size_t omega = 0; omega < n; ++omega)
      for (std::size_t u = 0; u < n; ++u)
        outer_weight[z * big + omega * n + u] = v.at(u, grp.neg(omega));

  const Signal phi = gaussian_window(grp);
  ProbeResult out;
  out.lhs = modulation_norm(rihaczek(g, f).as_signal(), rihaczek(phi, phi).as_signal(), e.target,
                            Weight(phase, std::move(outer_weight)), WindowSet::canonical(phase));
  const WindowSet q = WindowSet::canonical(grp);
  out.rhs = modulation_norm(g, phi, e.first, v, q) * modulation_norm(f, phi, e.second, v, q);
  return out;
}

bool ConvolutionExponents::admissible() const {
  if (std::abs(reciprocal(u) + reciprocal(t) - reciprocal(gamma)) > 1e-12) return false;
  if (r >= 1.0) return std::abs(reciprocal(p) + reciprocal(q) - 1.0 - reciprocal(r)) <= 1e-12;
  return p == r && q == r;
}

ProbeResult convolution_relation_probe(const Signal& f, const Signal& g,
                                       const ConvolutionExponents& e, const Weight& m,
                                       const Weight& v, std::span<const double> nu) {
  if (!e.admissible()) throw Error("convolution_relation_probe: inadmissible exponents");
  const Group& grp = f.group();
  if (nu.size() != grp.size()) throw GroupMismatch("nu must have |G| entries");
  const std::vector<double> m1 = m.group_marginal();
  const std::vector<double> v1 = v.group_marginal();
  std::vector<double> v2_over_nu = v.dual_marginal();
  for (std::size_t i = 0; i < v2_over_nu.size(); ++i) v2_over_nu[i] /= nu[i];

  const Signal phi = gaussian_window(grp);
  const WindowSet q = WindowSet::canonical(grp);
  ProbeResult out;
  out.lhs = modulation_norm(convolve(f, g), gaussian_circ(grp), {e.r, e.gamma}, m, q);
  out.rhs = modulation_norm(f, phi, {e.p, e.u}, Weight::tensor(grp, m1, nu), q) *
            modulation_norm(g, phi, {e.q, e.t}, Weight::tensor(grp, v1, v2_over_nu), q);
  return out;
}

}  // namespace lcatf
