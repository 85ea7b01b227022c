#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace lcatf {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Element of G, addressed by its position in the canonical (lexicographic
/// over residues) enumeration.
struct GroupElement {
  std::size_t index = 0;
  friend bool operator==(GroupElement, GroupElement) = default;
};

/// Character of G. The dual of Z_N is identified with Z_N once and for all,
/// so dual elements share the canonical enumeration of G.
struct DualElement {
  std::size_t index = 0;
  friend bool operator==(DualElement, DualElement) = default;
};

/// Point (x, xi) of the phase space G x G^.
struct PhasePoint {
  GroupElement x;
  DualElement xi;
  friend bool operator==(PhasePoint, PhasePoint) = default;
};

/// Finite abelian group Z_{N_1} x ... x Z_{N_k} with the compact-open
/// subgroup K = prod_j d_j Z_{N_j} and a Haar measure that puts `mass()` on
/// every point of G and `dual_mass()` on every point of G^.
///
/// The two masses always satisfy mass * dual_mass * |G| = 1, which makes the
/// Fourier transform unitary. Instances are immutable and cheap to copy.
class Group {
 public:
  /// Validates and builds a group. Throws EmptyGroup / NonDivisor.
  static Group make(std::vector<int> factors, std::vector<int> subgroup_divisors,
                    double point_mass = 1.0);

  /// Cyclic group Z_N with K = d Z_N.
  static Group cyclic(int order, int divisor) { return make({order}, {divisor}); }

  const std::vector<int>& factors() const { return impl_->factors; }
  const std::vector<int>& subgroup_divisors() const { return impl_->divisors; }
  std::size_t rank() const { return impl_->factors.size(); }
  std::size_t size() const { return impl_->size; }
  std::size_t subgroup_size() const { return impl_->subgroup_size; }
  std::size_t annihilator_size() const { return size() / subgroup_size(); }
  double mass() const { return impl_->mass; }
  double dual_mass() const { return impl_->dual_mass; }

  std::span<const int> residues(std::size_t index) const {
    return {impl_->residues.data() + index * rank(), rank()};
  }
  /// Canonical index of a residue tuple; entries are reduced mod N_j first.
  std::size_t index_of(std::span<const long long> residues) const;

  GroupElement element(std::initializer_list<long long> residues) const;
  DualElement dual_element(std::initializer_list<long long> residues) const;
  GroupElement identity() const { return {0}; }
  DualElement dual_identity() const { return {0}; }

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const { return sub(0, a); }

  GroupElement add(GroupElement a, GroupElement b) const { return {add(a.index, b.index)}; }
  GroupElement sub(GroupElement a, GroupElement b) const { return {sub(a.index, b.index)}; }
  GroupElement neg(GroupElement a) const { return {neg(a.index)}; }
  DualElement add(DualElement a, DualElement b) const { return {add(a.index, b.index)}; }
  DualElement sub(DualElement a, DualElement b) const { return {sub(a.index, b.index)}; }
  DualElement neg(DualElement a) const { return {neg(a.index)}; }

  /// <xi, x> = exp(2 pi i sum_j xi_j x_j / N_j), read from a table of
  /// lcm(N_j)-th roots of unity so that equal phases give identical values.
  cplx character(std::size_t xi, std::size_t x) const;
  cplx character(DualElement xi, GroupElement x) const { return character(xi.index, x.index); }

  bool in_subgroup(std::size_t x) const;
  bool in_annihilator(std::size_t xi) const;
  /// Elements of K in canonical order.
  std::vector<GroupElement> subgroup() const;
  /// Elements of K^perp in canonical order.
  std::vector<DualElement> annihilator() const;

  /// G x G^ as a group in its own right: factors (N, N), compact-open
  /// subgroup K x K^perp, point mass mass()*dual_mass(). Phase-space index
  /// x * |G| + xi coincides with this group's canonical index.
  Group phase_space() const;

  friend bool operator==(const Group& a, const Group& b);

 private:
  struct Impl {
    std::vector<int> factors;
    std::vector<int> divisors;
    std::size_t size = 1;
    std::size_t subgroup_size = 1;
    double mass = 1.0;
    double dual_mass = 1.0;
    std::vector<int> residues;          // size * rank
    std::vector<std::size_t> strides;   // mixed-radix strides
    std::vector<long long> root_steps;  // L / N_j
    CVector roots;                      // L-th roots of unity
  };
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Coset representatives D1 of G/K and D2 of G^/K^perp.
struct CosetRepresentatives {
  std::vector<GroupElement> group_reps;
  std::vector<DualElement> dual_reps;
};

/// D1 = prod_j {0..d_j-1}, D2 = prod_j {0..N_j/d_j-1}.
CosetRepresentatives coset_representatives(const Group& g);

/// Direct product G1 x G2 (factors and divisors concatenated, masses
/// multiplied).
Group product(const Group& a, const Group& b);

}  // namespace lcatf
