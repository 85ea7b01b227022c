#pragma once

#include <limits>
#include <span>
#include <vector>

#include "lcatf/signal.hpp"

namespace lcatf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Mixed exponents (p, q) in (0, inf]; p acts on the G variable, q on G^.
struct Exponents {
  double p = 2.0;
  double q = 2.0;

  /// min(1, p, q): the quasi-norm is an r-norm.
  double r() const;
  /// Throws NonPositiveExponent unless both exponents lie in (0, inf].
  void validate() const;
};

/// Strictly positive weight on phase space, indexed like PhaseFunction.
class Weight {
 public:
  Weight(Group base, std::vector<double> values);

  static Weight ones(const Group& base);
  /// v(x, xi) = (1 + |x| + |xi|)^s with |.| the cyclic word length
  /// sum_j min(r_j, N_j - r_j). Submultiplicative and even for s >= 0.
  static Weight polynomial(const Group& base, double s);
  /// w(x, xi) = a(x) b(xi) from weights on G and G^.
  static Weight tensor(const Group& base, std::span<const double> on_group,
                       std::span<const double> on_dual);

  const Group& base() const { return base_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::size_t x, std::size_t xi) const { return values_[x * base_.size() + xi]; }
  std::span<const double> values() const { return values_; }

  /// m_1(x) = m(x, e^).
  std::vector<double> group_marginal() const;
  /// v_2(xi) = v(e, xi).
  std::vector<double> dual_marginal() const;

 private:
  Group base_;
  std::vector<double> values_;
};

/// v(a + b) <= v(a) v(b) for every pair of phase points (relative slack 1e-12).
bool check_submultiplicative(const Weight& v);
/// Tight constant C = max m(a + b) / (v(a) m(b)).
double check_moderate(const Weight& m, const Weight& v);

/// Mixed quasi-norm of an array laid out as value(i, j) at i * outer + j,
/// with the p-sum over i (mass inner_mass per point) inside the q-sum over j
/// (mass outer_mass per point). Zero entries are skipped.
double mixed_norm(std::span<const double> magnitudes, std::size_t inner, std::size_t outer,
                  double inner_mass, double outer_mass, Exponents e);

/// (sum_xi mass_dual (sum_x mass_G |F m|^p)^{q/p})^{1/q}.
double mixed_quasi_norm(const PhaseFunction& f, Exponents e, const Weight& m);

/// ||F + H||^r - ||F||^r - ||H||^r with r = min(1, p, q). Non-positive up to
/// rounding.
double rnorm_subadditivity_residual(const PhaseFunction& f, const PhaseFunction& h, Exponents e,
                                    const Weight& m);

/// Set of phase-space offsets Q containing the unit.
class WindowSet {
 public:
  WindowSet(Group base, std::vector<PhasePoint> offsets);

  static WindowSet unit(const Group& base);
  static WindowSet full(const Group& base);
  /// K x K^perp.
  static WindowSet subgroup_box(const Group& base);
  /// {e} x G^ when K = {e}, otherwise K x K^perp (which is G x {e^} when K = G).
  static WindowSet canonical(const Group& base);

  const Group& base() const { return base_; }
  std::span<const PhasePoint> offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }

 private:
  Group base_;
  std::vector<PhasePoint> offsets_;
};

/// (M_Q F)(z) = max_{q in Q} |F(z + q)|.
PhaseFunction maximal_function(const PhaseFunction& f, const WindowSet& q);

/// Norm of the maximal function in L^{p,q}_m.
double wiener_norm(const PhaseFunction& f, const WindowSet& q, Exponents e, const Weight& m);

/// ||V_g f||_{W(L^inf, L^{p,q}_m)} with window set Q.
double modulation_norm(const Signal& f, const Signal& window, Exponents e, const Weight& m,
                       const WindowSet& q);
/// Default window chi_K and canonical window set.
double modulation_norm(const Signal& f, Exponents e, const Weight& m);

struct InclusionResult {
  bool holds = false;
  double larger_space_norm = 0.0;  // ||f||_{M^{p1,q1}_{m1}}
  double smaller_space_norm = 0.0; // ||f||_{M^{p2,q2}_{m2}}
  double constant = 0.0;           // C' from masses and sup m2 / m1
  double ratio = 0.0;              // smaller / (C' * larger), <= 1 when holds
};

/// Checks ||f||_{M^{p2,q2}_{m2}} <= C' ||f||_{M^{p1,q1}_{m1}} for p1 <= p2,
/// q1 <= q2, where C' = mass_G^{1/p2-1/p1} mass_dual^{1/q2-1/q1} sup(m2/m1)
/// is the exact l^p-monotonicity constant of the point masses.
InclusionResult inclusion_check(const Signal& f, Exponents e1, Exponents e2, const Weight& m1,
                                const Weight& m2);

struct YoungResult {
  double lhs = 0.0;                // ||F * H||_{L^{r1,r2}_m}
  double rhs = 0.0;                // ||F||_{L^{p1,p2}_m} ||H||_{L^{q1,q2}_v}
  double moderate_constant = 1.0;  // C with m(a + b) <= C v(a) m(b)

  bool holds(double slack = 1e-10) const { return lhs <= moderate_constant * rhs * (1.0 + slack); }
};

/// Weighted mixed Young inequality on phase space. Requires exponents in
/// [1, inf] with 1/p_i + 1/q_i = 1 + 1/r_i.
YoungResult young_verify(const PhaseFunction& f, const PhaseFunction& h, Exponents p,
                         Exponents q, Exponents r, const Weight& m, const Weight& v);

}  // namespace lcatf
