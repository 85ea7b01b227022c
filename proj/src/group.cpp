#include "lcatf/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lcatf/error.hpp"

namespace lcatf {

Group Group::make(std::vector<int> factors, std::vector<int> subgroup_divisors,
                  double point_mass) {
  if (factors.empty()) throw EmptyGroup("factor list is empty");
  if (factors.size() != subgroup_divisors.size())
    throw NonDivisor("expected " + std::to_string(factors.size()) +
                     " subgroup divisors, got " + std::to_string(subgroup_divisors.size()));
  if (!(point_mass > 0.0) || !std::isfinite(point_mass))
    throw Error("point mass must be positive and finite");

  auto impl = std::make_shared<Impl>();
  const std::size_t rank = factors.size();
  long long lcm = 1;
  for (std::size_t j = 0; j < rank; ++j) {
    const int n = factors[j];
    const int d = subgroup_divisors[j];
    if (n < 1) throw EmptyGroup("factor " + std::to_string(j) + " has order " + std::to_string(n));
    if (d < 1 || n % d != 0)
      throw NonDivisor(std::to_string(d) + " does not divide " + std::to_string(n));
    impl->size *= static_cast<std::size_t>(n);
    impl->subgroup_size *= static_cast<std::size_t>(n / d);
    lcm = std::lcm(lcm, static_cast<long long>(n));
  }

  impl->strides.assign(rank, 1);
  for (std::size_t j = rank; j-- > 1;)
    impl->strides[j - 1] = impl->strides[j] * static_cast<std::size_t>(factors[j]);

  impl->residues.resize(impl->size * rank);
  for (std::size_t i = 0; i < impl->size; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < rank; ++j) {
      impl->residues[i * rank + j] = static_cast<int>(rest / impl->strides[j]);
      rest %= impl->strides[j];
    }
  }

  impl->root_steps.resize(rank);
  for (std::size_t j = 0; j < rank; ++j) impl->root_steps[j] = lcm / factors[j];
  impl->roots.resize(static_cast<std::size_t>(lcm));
  for (long long k = 0; k < lcm; ++k) {
    // Reduce to an angle in [-pi/4, pi/4] and rotate by an exact quarter turn;
    // quarter turns themselves come out exact.
    const long long quarter = (4 * k + lcm / 2) / lcm;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(4 * k - quarter * lcm) /
                         static_cast<double>(4 * lcm);
    const cplx base = angle == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, angle);
    switch (quarter % 4) {
      case 0: impl->roots[k] = base; break;
      case 1: impl->roots[k] = {-base.imag(), base.real()}; break;
      case 2: impl->roots[k] = {-base.real(), -base.imag()}; break;
      default: impl->roots[k] = {base.imag(), -base.real()}; break;
    }
  }

  impl->mass = point_mass;
  impl->dual_mass = 1.0 / (static_cast<double>(impl->size) * point_mass);
  impl->factors = std::move(factors);
  impl->divisors = std::move(subgroup_divisors);
  return Group(std::move(impl));
}

std::size_t Group::index_of(std::span<const long long> residues) const {
  if (residues.size() != rank()) throw GroupMismatch("residue tuple has wrong length");
  std::size_t index = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const long long n = impl_->factors[j];
    long long r = residues[j] % n;
    if (r < 0) r += n;
    index += static_cast<std::size_t>(r) * impl_->strides[j];
  }
  return index;
}

GroupElement Group::element(std::initializer_list<long long> residues) const {
  return {index_of(std::span<const long long>(residues.begin(), residues.size()))};
}

DualElement Group::dual_element(std::initializer_list<long long> residues) const {
  return {index_of(std::span<const long long>(residues.begin(), residues.size()))};
}

std::size_t Group::add(std::size_t a, std::size_t b) const {
  const auto ra = residues(a);
  const auto rb = residues(b);
  std::size_t index = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    int r = ra[j] + rb[j];
    if (r >= impl_->factors[j]) r -= impl_->factors[j];
    index += static_cast<std::size_t>(r) * impl_->strides[j];
  }
  return index;
}

std::size_t Group::sub(std::size_t a, std::size_t b) const {
  const auto ra = residues(a);
  const auto rb = residues(b);
  std::size_t index = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    int r = ra[j] - rb[j];
    if (r < 0) r += impl_->factors[j];
    index += static_cast<std::size_t>(r) * impl_->strides[j];
  }
  return index;
}

cplx Group::character(std::size_t xi, std::size_t x) const {
  const auto rxi = residues(xi);
  const auto rx = residues(x);
  const auto lcm = static_cast<long long>(impl_->roots.size());
  long long phase = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    phase += static_cast<long long>(rxi[j]) * rx[j] % impl_->factors[j] * impl_->root_steps[j];
    phase %= lcm;
  }
  return impl_->roots[static_cast<std::size_t>(phase)];
}

bool Group::in_subgroup(std::size_t x) const {
  const auto r = residues(x);
  for (std::size_t j = 0; j < rank(); ++j)
    if (r[j] % impl_->divisors[j] != 0) return false;
  return true;
}

bool Group::in_annihilator(std::size_t xi) const {
  const auto r = residues(xi);
  for (std::size_t j = 0; j < rank(); ++j)
    if (r[j] % (impl_->factors[j] / impl_->divisors[j]) != 0) return false;
  return true;
}

std::vector<GroupElement> Group::subgroup() const {
  std::vector<GroupElement> out;
  out.reserve(subgroup_size());
  for (std::size_t i = 0; i < size(); ++i)
    if (in_subgroup(i)) out.push_back({i});
  return out;
}

std::vector<DualElement> Group::annihilator() const {
  std::vector<DualElement> out;
  out.reserve(annihilator_size());
  for (std::size_t i = 0; i < size(); ++i)
    if (in_annihilator(i)) out.push_back({i});
  return out;
}

Group Group::phase_space() const {
  std::vector<int> factors = impl_->factors;
  factors.insert(factors.end(), impl_->factors.begin(), impl_->factors.end());
  std::vector<int> divisors = impl_->divisors;
  for (std::size_t j = 0; j < rank(); ++j)
    divisors.push_back(impl_->factors[j] / impl_->divisors[j]);
  return make(std::move(factors), std::move(divisors), mass() * dual_mass());
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->factors == b.impl_->factors && a.impl_->divisors == b.impl_->divisors &&
         a.impl_->mass == b.impl_->mass;
}

CosetRepresentatives coset_representatives(const Group& g) {
  CosetRepresentatives reps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto r = g.residues(i);
    bool in_d1 = true;
    bool in_d2 = true;
    for (std::size_t j = 0; j < g.rank(); ++j) {
      const int d = g.subgroup_divisors()[j];
      in_d1 = in_d1 && r[j] < d;
      in_d2 = in_d2 && r[j] < g.factors()[j] / d;
    }
    if (in_d1) reps.group_reps.push_back({i});
    if (in_d2) reps.dual_reps.push_back({i});
  }
  return reps;
}

Group product(const Group& a, const Group& b) {
  std::vector<int> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  std::vector<int> divisors = a.subgroup_divisors();
  divisors.insert(divisors.end(), b.subgroup_divisors().begin(), b.subgroup_divisors().end());
  return Group::make(std::move(factors), std::move(divisors), a.mass() * b.mass());
}

}  // namespace lcatf
