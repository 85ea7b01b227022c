#pragma once

#include <vector>

#include "lcatf/signal.hpp"

namespace lcatf {

/// Element (omega, u) of G^ x G, the dual of phase space. Its canonical
/// index in base.phase_space() is omega * |G| + u.
struct DualPhasePoint {
  DualElement omega;
  GroupElement u;
  friend bool operator==(DualPhasePoint, DualPhasePoint) = default;
};

/// J(x, xi) = (-xi, x).
DualPhasePoint jmap(const Group& g, PhasePoint p);
/// J^{-1}(xi, x) = (x, -xi).
PhasePoint jmap_inverse(const Group& g, DualPhasePoint q);

/// Translation of a phase-space function by z: F(. - z).
PhaseFunction translate(const PhaseFunction& f, PhasePoint z);
/// Modulation by (omega, u): F(y, eta) <omega, y> <eta, u>.
PhaseFunction modulate(const PhaseFunction& f, DualPhasePoint q);

/// Generalized Gaussian of a group without Euclidean part: chi_K.
Signal gaussian_window(const Group& g);
/// phi * phi; equals |K| mass_G chi_K.
Signal gaussian_circ(const Group& g);

/// V_g f(x, xi) = <f, pi(x, xi) g>.
PhaseFunction stft(const Signal& f, const Signal& window);
cplx stft_at(const Signal& f, const Signal& window, PhasePoint p);

/// Max over phase space of |LHS - RHS| in the covariance of the STFT under
/// f -> M_omega T_u f, g -> M_eta T_y g.
double stft_shift_identity_residual(const Signal& f, const Signal& window, PhasePoint shift_f,
                                    PhasePoint shift_window);

/// R(f, g)(x, xi) = f(x) conj(g^(xi)) conj<xi, x>.
PhaseFunction rihaczek(const Signal& f, const Signal& g);

/// Max |R(pi(a) f, pi(b) g) - <eta, x - y> M_{J(b - a)} T_{(x, eta)} R(f, g)|
/// with a = (x, xi), b = (y, eta).
double rihaczek_covariance_residual(const Signal& f, const Signal& g, PhasePoint a, PhasePoint b);

/// Finite linear combination sum_k c_k pi(p_k) phi of shifted Gaussians.
struct TestFunction {
  struct Term {
    cplx coefficient;
    PhasePoint shift;
  };
  Group group;
  std::vector<Term> terms;

  Signal materialize() const;
};

/// STFT of two test functions from the closed double sum over their terms,
/// built from translated copies of V_phi phi. Never touches the
/// materialized signals.
PhaseFunction testfunction_stft(const TestFunction& f, const TestFunction& g);

/// R(f, g) for test functions from the covariance of R(phi, phi).
PhaseFunction testfunction_rihaczek(const TestFunction& f, const TestFunction& g);

/// Max residual of
///   V_{R(psi,psi)} R(g, f)((x,xi),(omega,u))
///     = conj<xi,u> V_psi g(x, xi + omega) conj(V_psi f(x + u, xi))
/// over all of (G x G^) x (G^ x G).
double magic_formula_residual(const Signal& psi, const Signal& f, const Signal& g);

}  // namespace lcatf
