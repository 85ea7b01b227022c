#include "lcatf/signal.hpp"

#include <cmath>
#include <string>

#include "lcatf/error.hpp"

namespace lcatf {

void require_same_group(const Group& a, const Group& b, const char* what) {
  if (!(a == b)) throw GroupMismatch(std::string(what) + ": operands live on different groups");
}

Signal::Signal(Group group, CVector values, Domain domain)
    : group_(std::move(group)), values_(std::move(values)), domain_(domain) {
  if (values_.size() != group_.size())
    throw GroupMismatch("signal has " + std::to_string(values_.size()) + " values, group has " +
                        std::to_string(group_.size()) + " elements");
}

Signal Signal::zeros(const Group& g, Domain domain) {
  return Signal(g, CVector(g.size()), domain);
}

Signal Signal::delta(const Group& g, GroupElement at) {
  Signal s = zeros(g);
  s[at.index] = 1.0;
  return s;
}

Signal Signal::constant(const Group& g, cplx value, Domain domain) {
  return Signal(g, CVector(g.size(), value), domain);
}

double Signal::norm() const {
  double acc = 0.0;
  for (const cplx& v : values_) acc += std::norm(v);
  return std::sqrt(acc * point_mass());
}

Signal& Signal::operator+=(const Signal& other) {
  require_same_group(group_, other.group_, "signal addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  require_same_group(group_, other.group_, "signal subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Signal& Signal::operator*=(cplx c) {
  for (cplx& v : values_) v *= c;
  return *this;
}

PhaseFunction::PhaseFunction(Group base, CVector values)
    : base_(std::move(base)), values_(std::move(values)) {
  if (values_.size() != base_.size() * base_.size())
    throw GroupMismatch("phase function has " + std::to_string(values_.size()) +
                        " values, expected |G|^2 = " + std::to_string(base_.size() * base_.size()));
}

PhaseFunction PhaseFunction::zeros(const Group& base) {
  return PhaseFunction(base, CVector(base.size() * base.size()));
}

PhaseFunction PhaseFunction::constant(const Group& base, cplx value) {
  return PhaseFunction(base, CVector(base.size() * base.size(), value));
}

PhaseFunction PhaseFunction::from_signal(const Group& base, const Signal& s) {
  if (s.size() != base.size() * base.size())
    throw GroupMismatch("signal does not live on the phase space of the base group");
  return PhaseFunction(base, CVector(s.values().begin(), s.values().end()));
}

Signal PhaseFunction::as_signal() const { return Signal(base_.phase_space(), values_); }

PhaseFunction& PhaseFunction::operator+=(const PhaseFunction& other) {
  require_same_group(base_, other.base_, "phase function addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PhaseFunction& PhaseFunction::operator*=(cplx c) {
  for (cplx& v : values_) v *= c;
  return *this;
}

PhasePoint add(const Group& g, PhasePoint a, PhasePoint b) {
  return {g.add(a.x, b.x), g.add(a.xi, b.xi)};
}

PhasePoint sub(const Group& g, PhasePoint a, PhasePoint b) {
  return {g.sub(a.x, b.x), g.sub(a.xi, b.xi)};
}

Signal translate(const Signal& f, GroupElement x) {
  const Group& g = f.group();
  Signal out = Signal::zeros(g, f.domain());
  for (std::size_t y = 0; y < g.size(); ++y) out[y] = f[g.sub(y, x.index)];
  return out;
}

Signal modulate(const Signal& f, DualElement xi) {
  const Group& g = f.group();
  Signal out = f;
  for (std::size_t y = 0; y < g.size(); ++y) out[y] *= g.character(xi.index, y);
  return out;
}

Signal tf_shift(const Signal& f, PhasePoint p) { return modulate(translate(f, p.x), p.xi); }

Signal fourier(const Signal& f) {
  const Group& g = f.group();
  const std::size_t n = g.size();
  Signal out = Signal::zeros(g, Domain::frequency);
  for (std::size_t xi = 0; xi < n; ++xi) {
    cplx acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) acc += f[x] * std::conj(g.character(xi, x));
    out[xi] = acc * g.mass();
  }
  return out;
}

Signal inverse_fourier(const Signal& spectrum) {
  const Group& g = spectrum.group();
  const std::size_t n = g.size();
  Signal out = Signal::zeros(g, Domain::time);
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < n; ++xi) acc += spectrum[xi] * g.character(xi, x);
    out[x] = acc * g.dual_mass();
  }
  return out;
}

Signal convolve(const Signal& f, const Signal& h) {
  require_same_group(f.group(), h.group(), "convolve");
  const Group& g = f.group();
  const std::size_t n = g.size();
  Signal out = Signal::zeros(g, f.domain());
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) acc += f[y] * h[g.sub(x, y)];
    out[x] = acc * f.point_mass();
  }
  return out;
}

PhaseFunction convolve_phase(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_group(a.base(), b.base(), "convolve_phase");
  const Signal c = convolve(a.as_signal(), b.as_signal());
  return PhaseFunction::from_signal(a.base(), c);
}

Signal involution(const Signal& f) {
  const Group& g = f.group();
  Signal out = Signal::zeros(g, f.domain());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = std::conj(f[g.neg(x)]);
  return out;
}

cplx inner(const Signal& f, const Signal& h) {
  require_same_group(f.group(), h.group(), "inner");
  cplx acc = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) acc += f[x] * std::conj(h[x]);
  return acc * f.point_mass();
}

cplx inner_phase(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_group(a.base(), b.base(), "inner_phase");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc * a.base().mass() * a.base().dual_mass();
}

Signal tensor(const Signal& f, const Signal& h) {
  const Group g = product(f.group(), h.group());
  CVector values;
  values.reserve(f.size() * h.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t z = 0; z < h.size(); ++z) values.push_back(f[x] * h[z]);
  return Signal(g, std::move(values));
}

}  // namespace lcatf
