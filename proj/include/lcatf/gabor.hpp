#pragma once

#include <vector>

#include "lcatf/norms.hpp"
#include "lcatf/operators.hpp"

namespace lcatf {

/// Finite point set in G x G^ used as sampling set for Gabor systems.
class QuasiLattice {
 public:
  QuasiLattice(Group base, std::vector<PhasePoint> points);

  /// D1 x D2 from the coset representatives; D1 outer, D2 inner.
  static QuasiLattice canonical(const Group& g);
  /// Every point of G x G^.
  static QuasiLattice full(const Group& g);
  /// Canonical lattice together with its translates by each shift,
  /// duplicates removed, first occurrence kept.
  static QuasiLattice refined(const Group& g, const std::vector<PhasePoint>& shifts);

  const Group& base() const { return base_; }
  const std::vector<PhasePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// |Lambda| / |G|.
  double redundancy() const;

  /// True when the translates w + (K x K^perp), w in the lattice, cover
  /// G x G^ exactly once.
  bool partitions_phase_space() const;

 private:
  Group base_;
  std::vector<PhasePoint> points_;
};

struct GaborSystem {
  QuasiLattice lattice;
  Signal window;
};

/// c_w = <f, pi(w) g>.
CVector analysis(const GaborSystem& sys, const Signal& f);
/// sum_w c_w pi(w) g.
Signal synthesis(const GaborSystem& sys, std::span<const cplx> coefficients);

/// Matrix of f -> sum_w <f, pi(w) g> pi(w) h.
OperatorMatrix frame_operator(const Signal& h, const Signal& g, const QuasiLattice& lattice);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool tight(double tolerance = 1e-10) const { return upper / lower - 1.0 <= tolerance; }
};

/// Extreme eigenvalues of S_{g,g}. Throws NotAFrame when A <= 1e-10 B.
FrameBounds frame_bounds(const Signal& g, const QuasiLattice& lattice);

/// h = S_{g,g}^{-1} g from the eigendecomposition of S. Throws NotAFrame, or
/// ToleranceExceeded when S_{h,g} = S_{g,h} = I fails by more than 1e-10; the
/// canonical dual only reconstructs when S commutes with every pi(w), e.g. for
/// tight frames or when the lattice is a subgroup of G x G^.
Signal dual_window(const Signal& g, const QuasiLattice& lattice);

/// max(||sum <f, pi(w) g> pi(w) h - f||, ||sum <f, pi(w) h> pi(w) g - f||).
double expansion_residual(const Signal& f, const Signal& g, const Signal& h,
                          const QuasiLattice& lattice);

/// l^{p,q}_m quasi-norm of (V_g f(w))_w with unit mass per lattice point:
/// inner sum over the time coordinates sharing a frequency coordinate.
double discrete_modnorm(const Signal& f, const Signal& g, const QuasiLattice& lattice,
                        Exponents e, const Weight& m);

/// For each w in the canonical lattice, max over z in K x K^perp of |V_g f(w + z)|.
std::vector<double> quotient_coefficients(const Signal& f, const Signal& g);

/// Largest change of the quotient coefficients when each representative w is
/// replaced by every other member w + z of its coset.
double quotient_representative_residual(const Signal& f, const Signal& g);

}  // namespace lcatf
