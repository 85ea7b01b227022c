#include "lcatf/tfa.hpp"

#include <algorithm>
#include <cmath>

#include "lcatf/error.hpp"

namespace lcatf {

DualPhasePoint jmap(const Group& g, PhasePoint p) { return {g.neg(p.xi), {p.x.index}}; }

PhasePoint jmap_inverse(const Group& g, DualPhasePoint q) {
  return {{q.u.index}, g.neg(DualElement{q.omega.index})};
}

PhaseFunction translate(const PhaseFunction& f, PhasePoint z) {
  const Signal s = translate(f.as_signal(), GroupElement{f.index(z)});
  return PhaseFunction::from_signal(f.base(), s);
}

PhaseFunction modulate(const PhaseFunction& f, DualPhasePoint q) {
  const std::size_t idx = q.omega.index * f.base().size() + q.u.index;
  const Signal s = modulate(f.as_signal(), DualElement{idx});
  return PhaseFunction::from_signal(f.base(), s);
}

Signal gaussian_window(const Group& g) {
  Signal s = Signal::zeros(g);
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g.in_subgroup(x)) s[x] = 1.0;
  return s;
}

Signal gaussian_circ(const Group& g) {
  const Signal phi = gaussian_window(g);
  return convolve(phi, phi);
}

PhaseFunction stft(const Signal& f, const Signal& window) {
  require_same_group(f.group(), window.group(), "stft");
  const Group& g = f.group();
  const std::size_t n = g.size();
  PhaseFunction out = PhaseFunction::zeros(g);
  CVector product(n);
  CVector chars(n * n);
  for (std::size_t xi = 0; xi < n; ++xi)
    for (std::size_t y = 0; y < n; ++y) chars[xi * n + y] = std::conj(g.character(xi, y));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) product[y] = f[y] * std::conj(window[g.sub(y, x)]);
    for (std::size_t xi = 0; xi < n; ++xi) {
      cplx acc = 0.0;
      const cplx* row = &chars[xi * n];
      for (std::size_t y = 0; y < n; ++y) acc += product[y] * row[y];
      out.at(x, xi) = acc * g.mass();
    }
  }
  return out;
}

cplx stft_at(const Signal& f, const Signal& window, PhasePoint p) {
  return inner(f, tf_shift(window, p));
}

double stft_shift_identity_residual(const Signal& f, const Signal& window, PhasePoint shift_f,
                                    PhasePoint shift_window) {
  const Group& g = f.group();
  const GroupElement u = shift_f.x;
  const DualElement omega = shift_f.xi;
  const GroupElement y = shift_window.x;
  const DualElement eta = shift_window.xi;

  const PhaseFunction lhs = stft(tf_shift(f, shift_f), tf_shift(window, shift_window));
  const PhaseFunction base = stft(f, window);
  const PhasePoint offset{g.sub(u, y), g.sub(omega, eta)};

  double residual = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const PhasePoint p = lhs.point(i);
    const cplx phase = std::conj(g.character(g.sub(p.xi, omega), u)) *
                       g.character(eta, g.sub(p.x, u));
    const cplx rhs = phase * base(sub(g, p, offset));
    residual = std::max(residual, std::abs(lhs[i] - rhs));
  }
  return residual;
}

PhaseFunction rihaczek(const Signal& f, const Signal& h) {
  require_same_group(f.group(), h.group(), "rihaczek");
  const Group& g = f.group();
  const Signal hhat = fourier(h);
  PhaseFunction out = PhaseFunction::zeros(g);
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t xi = 0; xi < g.size(); ++xi)
      out.at(x, xi) = f[x] * std::conj(hhat[xi]) * std::conj(g.character(xi, x));
  return out;
}

namespace {

/// <eta, x - y> M_{J(b - a)} T_{(x, eta)} R, the covariance image of R under
/// the shifts a = (x, xi), b = (y, eta).
PhaseFunction rihaczek_shifted(const PhaseFunction& r, PhasePoint a, PhasePoint b) {
  const Group& g = r.base();
  const cplx phase = g.character(b.xi, g.sub(a.x, b.x));
  PhaseFunction out = modulate(translate(r, PhasePoint{a.x, b.xi}), jmap(g, sub(g, b, a)));
  out *= phase;
  return out;
}

}  // namespace

double rihaczek_covariance_residual(const Signal& f, const Signal& h, PhasePoint a, PhasePoint b) {
  const PhaseFunction lhs = rihaczek(tf_shift(f, a), tf_shift(h, b));
  const PhaseFunction rhs = rihaczek_shifted(rihaczek(f, h), a, b);
  double residual = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    residual = std::max(residual, std::abs(lhs[i] - rhs[i]));
  return residual;
}

Signal TestFunction::materialize() const {
  const Signal phi = gaussian_window(group);
  Signal out = Signal::zeros(group);
  for (const Term& t : terms) out += tf_shift(phi, t.shift) * t.coefficient;
  return out;
}

PhaseFunction testfunction_stft(const TestFunction& f, const TestFunction& h) {
  require_same_group(f.group, h.group, "testfunction_stft");
  const Group& g = f.group;
  const Signal phi = gaussian_window(g);
  const PhaseFunction vpp = stft(phi, phi);
  PhaseFunction out = PhaseFunction::zeros(g);
  for (const auto& a : f.terms) {
    const GroupElement u = a.shift.x;
    const DualElement omega = a.shift.xi;
    for (const auto& b : h.terms) {
      const DualElement eta = b.shift.xi;
      const PhasePoint offset = sub(g, a.shift, b.shift);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const PhasePoint p = out.point(i);
        const cplx factor = a.coefficient *
                            std::conj(b.coefficient * g.character(g.sub(p.xi, omega), u)) *
                            g.character(eta, g.sub(p.x, u));
        out[i] += factor * vpp(sub(g, p, offset));
      }
    }
  }
  return out;
}

PhaseFunction testfunction_rihaczek(const TestFunction& f, const TestFunction& h) {
  require_same_group(f.group, h.group, "testfunction_rihaczek");
  const Group& g = f.group;
  const Signal phi = gaussian_window(g);
  const PhaseFunction rpp = rihaczek(phi, phi);
  PhaseFunction out = PhaseFunction::zeros(g);
  for (const auto& a : f.terms)
    for (const auto& b : h.terms)
      out += rihaczek_shifted(rpp, a.shift, b.shift) * (a.coefficient * std::conj(b.coefficient));
  return out;
}

double magic_formula_residual(const Signal& psi, const Signal& f, const Signal& h) {
  require_same_group(psi.group(), f.group(), "magic_formula_residual");
  require_same_group(psi.group(), h.group(), "magic_formula_residual");
  const Group& g = psi.group();
  const std::size_t n = g.size();

  // STFT on the group G x G^, whose dual is read as G^ x G.
  const PhaseFunction lhs = stft(rihaczek(h, f).as_signal(), rihaczek(psi, psi).as_signal());
  const PhaseFunction vg = stft(h, psi);
  const PhaseFunction vf = stft(f, psi);

  double residual = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi)
      for (std::size_t omega = 0; omega < n; ++omega)
        for (std::size_t u = 0; u < n; ++u) {
          const cplx rhs = std::conj(g.character(xi, u)) * vg.at(x, g.add(xi, omega)) *
                           std::conj(vf.at(g.add(x, u), xi));
          const cplx left = lhs.at(x * n + xi, omega * n + u);
          residual = std::max(residual, std::abs(left - rhs));
        }
  return residual;
}

}  // namespace lcatf
