#pragma once

#include <functional>
#include <vector>

#include "lcatf/norms.hpp"
#include "lcatf/signal.hpp"
#include "lcatf/tfa.hpp"

namespace lcatf {

/// Dense |G| x |G| matrix in the canonical basis: (M f)(x) = sum_y M(x, y) f(y).
class OperatorMatrix {
 public:
  OperatorMatrix(Group group, CVector entries);

  static OperatorMatrix zeros(const Group& g);
  static OperatorMatrix identity(const Group& g);
  /// Column y is the image of delta_y.
  static OperatorMatrix from_columns(const Group& g,
                                     const std::function<Signal(const Signal&)>& op);

  const Group& group() const { return group_; }
  std::size_t dim() const { return group_.size(); }
  cplx operator()(std::size_t row, std::size_t col) const { return entries_[row * dim() + col]; }
  cplx& operator()(std::size_t row, std::size_t col) { return entries_[row * dim() + col]; }
  std::span<const cplx> entries() const { return entries_; }

  Signal apply(const Signal& f) const;
  OperatorMatrix adjoint() const;
  /// max |M - M^H| entrywise.
  double hermitian_defect() const;
  double frobenius_norm() const;
  cplx trace() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(cplx c);

 private:
  Group group_;
  CVector entries_;
};

/// max |A - B| entrywise.
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b);

/// (Op0(sigma) f)(x) = sum_xi mass_dual sigma(x, xi) f^(xi) <xi, x>.
Signal kn_apply(const PhaseFunction& sigma, const Signal& f);
/// |<Op0(sigma) f, g> - <sigma, R(g, f)>|.
double kn_weak_residual(const PhaseFunction& sigma, const Signal& f, const Signal& g);

/// k(x, u) = sum_xi mass_dual sigma(x, xi) conj<xi, u - x>, laid out at x * |G| + u.
CVector kn_kernel(const PhaseFunction& sigma);
/// Matrix of Op0(sigma): entry (x, u) = mass_G k(x, u).
OperatorMatrix kn_matrix(const PhaseFunction& sigma);
/// |<Op0(sigma) f, g> - <k, g (x) conj f>| with mass_G^2 per point of G x G.
double kn_kernel_residual(const PhaseFunction& sigma, const Signal& f, const Signal& g);

/// Entries [M]_{x,y} = <Op0(sigma) pi(y) g, pi(x) g>, flat at row * |points| + col.
CVector gabor_matrix(const PhaseFunction& sigma, const Signal& g,
                     const std::vector<PhasePoint>& points);
/// Same entries for g = phi from conj<nu, w - u> V_Phi sigma((w, nu), J(u - w))
/// where w = (w, mu), u = (u, nu) and Phi = R(phi, phi); the STFT is taken
/// on G x G^ as a group.
CVector gabor_matrix_closed_form(const PhaseFunction& sigma,
                                 const std::vector<PhasePoint>& points);

/// A f(x) = sum_{u,omega} mass_G mass_dual a(u,omega) V_psi1 f(u,omega) pi(u,omega) psi2 (x).
Signal localization_apply(const PhaseFunction& a, const Signal& psi1, const Signal& psi2,
                          const Signal& f);
OperatorMatrix localization_matrix(const PhaseFunction& a, const Signal& psi1,
                                   const Signal& psi2);
/// |<A f, g> - <a, conj(V_psi1 f) V_psi2 g>|.
double localization_weak_residual(const PhaseFunction& a, const Signal& psi1,
                                  const Signal& psi2, const Signal& f, const Signal& g);

/// a * R(psi2, psi1) with the phase-space convolution; no further factor is
/// needed under the unitary normalization.
PhaseFunction loc_to_kn_symbol(const PhaseFunction& a, const Signal& psi2, const Signal& psi1);
/// max |matrix(A) - matrix(Op0(a * R(psi2, psi1)))|.
double loc_kn_residual(const PhaseFunction& a, const Signal& psi1, const Signal& psi2);

struct ProbeResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs, or 0 when rhs vanishes.
  double constant() const { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

struct RihaczekExponents {
  Exponents target;  // (p, q) on G x G^
  Exponents first;   // (p1, q1) for g
  Exponents second;  // (p2, q2) for f
  /// p_i, q_i <= q and min(1/p1 + 1/p2, 1/q1 + 1/q2) >= 1/p + 1/q.
  bool admissible() const;
};

/// lhs = ||R(g, f)||_{M^{p,q}_{1 (x) v o J^-1}} with window R(phi, phi),
/// rhs = ||g||_{M^{p1,q1}_v} ||f||_{M^{p2,q2}_v} with window phi.
ProbeResult rihaczek_continuity_probe(const Signal& g, const Signal& f,
                                      const RihaczekExponents& e, const Weight& v);

struct ConvolutionExponents {
  double p = 1.0, q = 1.0, r = 1.0;
  double u = 2.0, t = 2.0, gamma = 1.0;
  /// 1/u + 1/t = 1/gamma, and 1/p + 1/q = 1 + 1/r (r >= 1) or p = q = r (r < 1).
  bool admissible() const;
};

/// lhs = ||f * g||_{M^{r,gamma}_m} with window phi * phi,
/// rhs = ||f||_{M^{p,u}_{m1 (x) nu}} ||g||_{M^{q,t}_{v1 (x) v2/nu}} with window phi.
ProbeResult convolution_relation_probe(const Signal& f, const Signal& g,
                                       const ConvolutionExponents& e, const Weight& m,
                                       const Weight& v, std::span<const double> nu);

}  // namespace lcatf
