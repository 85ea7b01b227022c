#pragma once

#include <span>
#include <utility>

#include "lcatf/group.hpp"

namespace lcatf {

/// Which side of the Fourier transform a signal lives on. It selects the
/// point mass used by inner products and norms.
enum class Domain { time, frequency };

/// Complex function on G (or on G^ when domain() == frequency), stored in
/// canonical element order.
class Signal {
 public:
  Signal(Group group, CVector values, Domain domain = Domain::time);

  static Signal zeros(const Group& g, Domain domain = Domain::time);
  static Signal delta(const Group& g, GroupElement at);
  static Signal constant(const Group& g, cplx value, Domain domain = Domain::time);

  const Group& group() const { return group_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  double point_mass() const {
    return domain_ == Domain::time ? group_.mass() : group_.dual_mass();
  }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  double norm() const;

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(cplx c);
  friend Signal operator+(Signal a, const Signal& b) { return a += b; }
  friend Signal operator-(Signal a, const Signal& b) { return a -= b; }
  friend Signal operator*(Signal a, cplx c) { return a *= c; }
  friend Signal operator*(cplx c, Signal a) { return a *= c; }

 private:
  Group group_;
  CVector values_;
  Domain domain_;
};

/// Complex function on G x G^ (symbols, STFTs, Rihaczek distributions).
/// Value (x, xi) sits at x * |G| + xi, which is also its canonical index in
/// base().phase_space().
class PhaseFunction {
 public:
  PhaseFunction(Group base, CVector values);

  static PhaseFunction zeros(const Group& base);
  static PhaseFunction constant(const Group& base, cplx value);
  static PhaseFunction from_signal(const Group& base, const Signal& s);

  const Group& base() const { return base_; }
  std::size_t size() const { return values_.size(); }
  std::size_t index(PhasePoint p) const { return p.x.index * base_.size() + p.xi.index; }
  PhasePoint point(std::size_t index) const {
    return {{index / base_.size()}, {index % base_.size()}};
  }

  cplx at(std::size_t x, std::size_t xi) const { return values_[x * base_.size() + xi]; }
  cplx& at(std::size_t x, std::size_t xi) { return values_[x * base_.size() + xi]; }
  cplx operator()(PhasePoint p) const { return values_[index(p)]; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }

  /// The same values viewed as a signal on base().phase_space().
  Signal as_signal() const;

  PhaseFunction& operator+=(const PhaseFunction& other);
  PhaseFunction& operator*=(cplx c);
  friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
  friend PhaseFunction operator*(PhaseFunction a, cplx c) { return a *= c; }

 private:
  Group base_;
  CVector values_;
};

/// Adds phase-space points componentwise.
PhasePoint add(const Group& g, PhasePoint a, PhasePoint b);
PhasePoint sub(const Group& g, PhasePoint a, PhasePoint b);

// Fundamental operators.
Signal translate(const Signal& f, GroupElement x);
Signal modulate(const Signal& f, DualElement xi);
/// pi(x, xi) f = M_xi T_x f.
Signal tf_shift(const Signal& f, PhasePoint p);

/// f^(xi) = sum_x f(x) conj<xi,x> mass_G.
Signal fourier(const Signal& f);
/// f(x) = sum_xi F(xi) <xi,x> mass_dual.
Signal inverse_fourier(const Signal& spectrum);

/// (f * g)(x) = sum_y f(y) g(x - y) mass.
Signal convolve(const Signal& f, const Signal& g);
/// Convolution on G x G^ with mass_G * mass_dual per point.
PhaseFunction convolve_phase(const PhaseFunction& a, const PhaseFunction& b);

/// f*(x) = conj f(-x).
Signal involution(const Signal& f);

/// <f, g> = sum f conj(g) mass; antilinear in the second slot.
cplx inner(const Signal& f, const Signal& g);
/// Phase-space pairing with mass_G * mass_dual per point.
cplx inner_phase(const PhaseFunction& a, const PhaseFunction& b);

/// (f (x) g)(x, z) = f(x) g(z) on the product group.
Signal tensor(const Signal& f, const Signal& g);

/// Throws GroupMismatch unless both arguments live on the same group.
void require_same_group(const Group& a, const Group& b, const char* what);

}  // namespace lcatf
