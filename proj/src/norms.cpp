#include "lcatf/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcatf/error.hpp"
#include "lcatf/tfa.hpp"

namespace lcatf {

double Exponents::r() const { return std::min({1.0, p, q}); }

void Exponents::validate() const {
  if (!(p > 0.0) || !(q > 0.0) || std::isnan(p) || std::isnan(q))
    throw NonPositiveExponent("exponents must lie in (0, inf], got p=" + std::to_string(p) +
                              " q=" + std::to_string(q));
}

Weight::Weight(Group base, std::vector<double> values)
    : base_(std::move(base)), values_(std::move(values)) {
  if (values_.size() != base_.size() * base_.size())
    throw GroupMismatch("weight size does not match phase space");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("weights must be positive and finite");
}

Weight Weight::ones(const Group& base) {
  return Weight(base, std::vector<double>(base.size() * base.size(), 1.0));
}

namespace {

int cyclic_length(const Group& g, std::size_t index) {
  int len = 0;
  const auto r = g.residues(index);
  for (std::size_t j = 0; j < g.rank(); ++j) len += std::min(r[j], g.factors()[j] - r[j]);
  return len;
}

}  // namespace

Weight Weight::polynomial(const Group& base, double s) {
  const std::size_t n = base.size();
  std::vector<double> values(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi)
      values[x * n + xi] = std::pow(1.0 + cyclic_length(base, x) + cyclic_length(base, xi), s);
  return Weight(base, std::move(values));
}

Weight Weight::tensor(const Group& base, std::span<const double> on_group,
                      std::span<const double> on_dual) {
  const std::size_t n = base.size();
  if (on_group.size() != n || on_dual.size() != n)
    throw GroupMismatch("marginal weights must have |G| entries");
  std::vector<double> values(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi) values[x * n + xi] = on_group[x] * on_dual[xi];
  return Weight(base, std::move(values));
}

std::vector<double> Weight::group_marginal() const {
  std::vector<double> out(base_.size());
  for (std::size_t x = 0; x < base_.size(); ++x) out[x] = at(x, 0);
  return out;
}

std::vector<double> Weight::dual_marginal() const {
  std::vector<double> out(base_.size());
  for (std::size_t xi = 0; xi < base_.size(); ++xi) out[xi] = at(0, xi);
  return out;
}

bool check_submultiplicative(const Weight& v) {
  const Group& g = v.base();
  const std::size_t total = v.values().size();
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      const PhasePoint pa{{a / g.size()}, {a % g.size()}};
      const PhasePoint pb{{b / g.size()}, {b % g.size()}};
      const PhasePoint s = add(g, pa, pb);
      if (v.at(s.x.index, s.xi.index) > v[a] * v[b] * (1.0 + 1e-12)) return false;
    }
  return true;
}

double check_moderate(const Weight& m, const Weight& v) {
  require_same_group(m.base(), v.base(), "check_moderate");
  const Group& g = m.base();
  const std::size_t total = m.values().size();
  double c = 0.0;
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      const PhasePoint pa{{a / g.size()}, {a % g.size()}};
      const PhasePoint pb{{b / g.size()}, {b % g.size()}};
      const PhasePoint s = add(g, pa, pb);
      c = std::max(c, m.at(s.x.index, s.xi.index) / (v[a] * m[b]));
    }
  return c;
}

double mixed_norm(std::span<const double> magnitudes, std::size_t inner, std::size_t outer,
                  double inner_mass, double outer_mass, Exponents e) {
  e.validate();
  if (magnitudes.size() != inner * outer) throw Error("mixed_norm: layout mismatch");
  const bool p_inf = std::isinf(e.p);
  const bool q_inf = std::isinf(e.q);

  double outer_acc = 0.0;
  for (std::size_t j = 0; j < outer; ++j) {
    // Inner L^p norm over i for fixed j.
    double inner_norm = 0.0;
    if (p_inf) {
      for (std::size_t i = 0; i < inner; ++i)
        inner_norm = std::max(inner_norm, magnitudes[i * outer + j]);
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i < inner; ++i) {
        const double a = magnitudes[i * outer + j];
        if (a > 0.0) acc += inner_mass * std::pow(a, e.p);
      }
      if (acc == 0.0) continue;
      if (q_inf) {
        inner_norm = std::pow(acc, 1.0 / e.p);
      } else {
        outer_acc += outer_mass * std::pow(acc, e.q / e.p);
        continue;
      }
    }
    if (inner_norm == 0.0) continue;
    if (q_inf)
      outer_acc = std::max(outer_acc, inner_norm);
    else
      outer_acc += outer_mass * std::pow(inner_norm, e.q);
  }
  if (q_inf || outer_acc == 0.0) return outer_acc;
  return std::pow(outer_acc, 1.0 / e.q);
}

namespace {

std::vector<double> weighted_magnitudes(const PhaseFunction& f, const Weight& m) {
  require_same_group(f.base(), m.base(), "weighted norm");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]) * m[i];
  return out;
}

}  // namespace

double mixed_quasi_norm(const PhaseFunction& f, Exponents e, const Weight& m) {
  const Group& g = f.base();
  return mixed_norm(weighted_magnitudes(f, m), g.size(), g.size(), g.mass(), g.dual_mass(), e);
}

double rnorm_subadditivity_residual(const PhaseFunction& f, const PhaseFunction& h, Exponents e,
                                    const Weight& m) {
  const double r = e.r();
  const double sum = mixed_quasi_norm(f + h, e, m);
  return std::pow(sum, r) - std::pow(mixed_quasi_norm(f, e, m), r) -
         std::pow(mixed_quasi_norm(h, e, m), r);
}

WindowSet::WindowSet(Group base, std::vector<PhasePoint> offsets)
    : base_(std::move(base)), offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw EmptyWindow("window set has no offsets");
  const bool has_unit = std::any_of(offsets_.begin(), offsets_.end(), [](PhasePoint p) {
    return p.x.index == 0 && p.xi.index == 0;
  });
  if (!has_unit) throw EmptyWindow("window set must contain the unit (e, e^)");
}

WindowSet WindowSet::unit(const Group& base) { return WindowSet(base, {PhasePoint{}}); }

WindowSet WindowSet::full(const Group& base) {
  std::vector<PhasePoint> all;
  for (std::size_t x = 0; x < base.size(); ++x)
    for (std::size_t xi = 0; xi < base.size(); ++xi) all.push_back({{x}, {xi}});
  return WindowSet(base, std::move(all));
}

WindowSet WindowSet::subgroup_box(const Group& base) {
  std::vector<PhasePoint> box;
  for (GroupElement k : base.subgroup())
    for (DualElement kk : base.annihilator()) box.push_back({k, kk});
  return WindowSet(base, std::move(box));
}

WindowSet WindowSet::canonical(const Group& base) {
  if (base.subgroup_size() == 1) {
    std::vector<PhasePoint> column;
    for (std::size_t xi = 0; xi < base.size(); ++xi) column.push_back({{0}, {xi}});
    return WindowSet(base, std::move(column));
  }
  return subgroup_box(base);
}

PhaseFunction maximal_function(const PhaseFunction& f, const WindowSet& q) {
  require_same_group(f.base(), q.base(), "maximal_function");
  const Group& g = f.base();
  const std::size_t n = g.size();
  std::vector<std::size_t> sum(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) sum[a * n + b] = g.add(a, b);
  std::vector<double> mag(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mag[i] = std::abs(f[i]);

  PhaseFunction out = PhaseFunction::zeros(g);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi) {
      double best = 0.0;
      for (PhasePoint off : q.offsets())
        best = std::max(best, mag[sum[x * n + off.x.index] * n + sum[xi * n + off.xi.index]]);
      out.at(x, xi) = best;
    }
  return out;
}

double wiener_norm(const PhaseFunction& f, const WindowSet& q, Exponents e, const Weight& m) {
  return mixed_quasi_norm(maximal_function(f, q), e, m);
}

double modulation_norm(const Signal& f, const Signal& window, Exponents e, const Weight& m,
                       const WindowSet& q) {
  bool zero = true;
  for (const cplx& v : window.values()) zero = zero && v == cplx{};
  if (zero) throw ZeroWindow("modulation norm needs a nonzero window");
  return wiener_norm(stft(f, window), q, e, m);
}

double modulation_norm(const Signal& f, Exponents e, const Weight& m) {
  const Group& g = f.group();
  return modulation_norm(f, gaussian_window(g), e, m, WindowSet::canonical(g));
}

InclusionResult inclusion_check(const Signal& f, Exponents e1, Exponents e2, const Weight& m1,
                                const Weight& m2) {
  e1.validate();
  e2.validate();
  if (e1.p > e2.p || e1.q > e2.q)
    throw Error("inclusion_check needs p1 <= p2 and q1 <= q2");
  const Group& g = f.group();
  double weight_ratio = 0.0;
  for (std::size_t i = 0; i < m1.values().size(); ++i)
    weight_ratio = std::max(weight_ratio, m2[i] / m1[i]);

  InclusionResult out;
  out.larger_space_norm = modulation_norm(f, e1, m1);
  out.smaller_space_norm = modulation_norm(f, e2, m2);
  out.constant = std::pow(g.mass(), 1.0 / e2.p - 1.0 / e1.p) *
                 std::pow(g.dual_mass(), 1.0 / e2.q - 1.0 / e1.q) * weight_ratio;
  const double bound = out.constant * out.larger_space_norm;
  out.ratio = bound > 0.0 ? out.smaller_space_norm / bound : 0.0;
  out.holds = out.smaller_space_norm <= bound * (1.0 + 1e-10);
  return out;
}

namespace {

void require_young_exponents(Exponents p, Exponents q, Exponents r) {
  for (double v : {p.p, p.q, q.p, q.q, r.p, r.q})
    if (!(v >= 1.0)) throw NonPositiveExponent("Young exponents must lie in [1, inf]");
  auto inv = [](double v) { return std::isinf(v) ? 0.0 : 1.0 / v; };
  if (std::abs(inv(p.p) + inv(q.p) - 1.0 - inv(r.p)) > 1e-12 ||
      std::abs(inv(p.q) + inv(q.q) - 1.0 - inv(r.q)) > 1e-12)
    throw Error("Young exponents must satisfy 1/p + 1/q = 1 + 1/r");
}

}  // namespace

YoungResult young_verify(const PhaseFunction& f, const PhaseFunction& h, Exponents p,
                         Exponents q, Exponents r, const Weight& m, const Weight& v) {
  require_young_exponents(p, q, r);
  YoungResult out;
  out.lhs = mixed_quasi_norm(convolve_phase(f, h), r, m);
  out.rhs = mixed_quasi_norm(f, p, m) * mixed_quasi_norm(h, q, v);
  out.moderate_constant = check_moderate(m, v);
  return out;
}

}  // namespace lcatf
