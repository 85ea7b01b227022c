#include "lcatf/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lcatf/error.hpp"
#include "lcatf/spectral.hpp"

namespace lcatf {

QuasiLattice::QuasiLattice(Group base, std::vector<PhasePoint> points)
    : base_(std::move(base)), points_(std::move(points)) {
  for (PhasePoint p : points_)
    if (p.x.index >= base_.size() || p.xi.index >= base_.size())
      throw GroupMismatch("lattice point outside the phase space");
}

QuasiLattice QuasiLattice::canonical(const Group& g) {
  const CosetRepresentatives reps = coset_representatives(g);
  std::vector<PhasePoint> points;
  for (GroupElement w : reps.group_reps)
    for (DualElement mu : reps.dual_reps) points.push_back({w, mu});
  return QuasiLattice(g, std::move(points));
}

QuasiLattice QuasiLattice::full(const Group& g) {
  std::vector<PhasePoint> points;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t xi = 0; xi < g.size(); ++xi) points.push_back({{x}, {xi}});
  return QuasiLattice(g, std::move(points));
}

QuasiLattice QuasiLattice::refined(const Group& g, const std::vector<PhasePoint>& shifts) {
  const QuasiLattice base = canonical(g);
  std::vector<PhasePoint> points = base.points();
  std::vector<bool> seen(g.size() * g.size(), false);
  for (PhasePoint p : points) seen[p.x.index * g.size() + p.xi.index] = true;
  for (PhasePoint s : shifts)
    for (PhasePoint p : base.points()) {
      const PhasePoint q = add(g, p, s);
      const std::size_t idx = q.x.index * g.size() + q.xi.index;
      if (seen[idx]) continue;
      seen[idx] = true;
      points.push_back(q);
    }
  return QuasiLattice(g, std::move(points));
}

double QuasiLattice::redundancy() const {
  return static_cast<double>(points_.size()) / static_cast<double>(base_.size());
}

bool QuasiLattice::partitions_phase_space() const {
  const std::size_t n = base_.size();
  std::vector<int> hits(n * n, 0);
  const std::vector<GroupElement> k = base_.subgroup();
  const std::vector<DualElement> kperp = base_.annihilator();
  for (PhasePoint w : points_)
    for (GroupElement a : k)
      for (DualElement b : kperp) {
        const PhasePoint z = add(base_, w, PhasePoint{a, b});
        ++hits[z.x.index * n + z.xi.index];
      }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

CVector analysis(const GaborSystem& sys, const Signal& f) {
  require_same_group(sys.window.group(), f.group(), "analysis");
  CVector out;
  out.reserve(sys.lattice.size());
  for (PhasePoint w : sys.lattice.points()) out.push_back(inner(f, tf_shift(sys.window, w)));
  return out;
}

Signal synthesis(const GaborSystem& sys, std::span<const cplx> coefficients) {
  if (coefficients.size() != sys.lattice.size())
    throw GroupMismatch("coefficient count does not match the lattice");
  Signal out = Signal::zeros(sys.window.group());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == cplx{}) continue;
    out += tf_shift(sys.window, sys.lattice.points()[i]) * coefficients[i];
  }
  return out;
}

OperatorMatrix frame_operator(const Signal& h, const Signal& g, const QuasiLattice& lattice) {
  require_same_group(h.group(), g.group(), "frame_operator");
  require_same_group(g.group(), lattice.base(), "frame_operator");
  const Group& grp = g.group();
  const std::size_t n = grp.size();
  OperatorMatrix s = OperatorMatrix::zeros(grp);
  for (PhasePoint w : lattice.points()) {
    const Signal ph = tf_shift(h, w);
    const Signal pg = tf_shift(g, w);
    for (std::size_t row = 0; row < n; ++row) {
      const cplx left = ph[row] * grp.mass();
      for (std::size_t col = 0; col < n; ++col) s(row, col) += left * std::conj(pg[col]);
    }
  }
  return s;
}

namespace {

FrameBounds bounds_from(const std::vector<EigenPair>& pairs) {
  FrameBounds b;
  b.lower = pairs.front().value;
  b.upper = pairs.front().value;
  for (const EigenPair& p : pairs) {
    b.lower = std::min(b.lower, p.value);
    b.upper = std::max(b.upper, p.value);
  }
  if (!(b.upper > 0.0) || b.lower <= 1e-10 * b.upper) throw NotAFrame(b.lower, b.upper);
  return b;
}

}  // namespace

FrameBounds frame_bounds(const Signal& g, const QuasiLattice& lattice) {
  return bounds_from(hermitian_eigen(frame_operator(g, g, lattice)));
}

Signal dual_window(const Signal& g, const QuasiLattice& lattice) {
  const std::vector<EigenPair> pairs = hermitian_eigen(frame_operator(g, g, lattice));
  bounds_from(pairs);
  // S^{-1} g = sum_i lambda_i^{-1} v_i <g, v_i> with v_i orthonormal in L^2(G).
  Signal h = Signal::zeros(g.group());
  for (const EigenPair& p : pairs) h += p.vector * (inner(g, p.vector) / p.value);
  const OperatorMatrix id = OperatorMatrix::identity(g.group());
  const double defect = std::max(max_abs_difference(frame_operator(h, g, lattice), id),
                                 max_abs_difference(frame_operator(g, h, lattice), id));
  if (defect > 1e-10) throw ToleranceExceeded("S^-1 g is not a dual window on this lattice");
  return h;
}

double expansion_residual(const Signal& f, const Signal& g, const Signal& h,
                          const QuasiLattice& lattice) {
  const GaborSystem by_g{lattice, g};
  const GaborSystem by_h{lattice, h};
  const double first = (synthesis(by_h, analysis(by_g, f)) - f).norm();
  const double second = (synthesis(by_g, analysis(by_h, f)) - f).norm();
  return std::max(first, second);
}

double discrete_modnorm(const Signal& f, const Signal& g, const QuasiLattice& lattice,
                        Exponents e, const Weight& m) {
  require_same_group(f.group(), lattice.base(), "discrete_modnorm");
  const CVector coeffs = analysis(GaborSystem{lattice, g}, f);
  // Columns are frequency coordinates, rows time coordinates, each in order
  // of first appearance.
  std::map<std::size_t, std::size_t> rows;
  std::map<std::size_t, std::size_t> cols;
  std::vector<std::size_t> row_of(lattice.size());
  std::vector<std::size_t> col_of(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const PhasePoint p = lattice.points()[i];
    row_of[i] = rows.try_emplace(p.x.index, rows.size()).first->second;
    col_of[i] = cols.try_emplace(p.xi.index, cols.size()).first->second;
  }
  std::vector<double> mags(rows.size() * cols.size(), 0.0);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const PhasePoint p = lattice.points()[i];
    mags[row_of[i] * cols.size() + col_of[i]] =
        std::abs(coeffs[i]) * m.at(p.x.index, p.xi.index);
  }
  return mixed_norm(mags, rows.size(), cols.size(), 1.0, 1.0, e);
}

namespace {

double coset_max(const PhaseFunction& v, PhasePoint w, const std::vector<GroupElement>& k,
                 const std::vector<DualElement>& kperp) {
  const Group& g = v.base();
  double best = 0.0;
  for (GroupElement a : k)
    for (DualElement b : kperp) best = std::max(best, std::abs(v(add(g, w, PhasePoint{a, b}))));
  return best;
}

}  // namespace

std::vector<double> quotient_coefficients(const Signal& f, const Signal& g) {
  const Group& grp = f.group();
  const PhaseFunction v = stft(f, g);
  const std::vector<GroupElement> k = grp.subgroup();
  const std::vector<DualElement> kperp = grp.annihilator();
  std::vector<double> out;
  const QuasiLattice lattice = QuasiLattice::canonical(grp);
  for (PhasePoint w : lattice.points())
    out.push_back(coset_max(v, w, k, kperp));
  return out;
}

double quotient_representative_residual(const Signal& f, const Signal& g) {
  const Group& grp = f.group();
  const PhaseFunction v = stft(f, g);
  const std::vector<GroupElement> k = grp.subgroup();
  const std::vector<DualElement> kperp = grp.annihilator();
  double residual = 0.0;
  const QuasiLattice lattice = QuasiLattice::canonical(grp);
  for (PhasePoint w : lattice.points()) {
    const double reference = coset_max(v, w, k, kperp);
    for (GroupElement a : k)
      for (DualElement b : kperp) {
        const PhasePoint other = add(grp, w, PhasePoint{a, b});
        residual = std::max(residual, std::abs(coset_max(v, other, k, kperp) - reference));
      }
  }
  return residual;
}

}  // namespace lcatf
