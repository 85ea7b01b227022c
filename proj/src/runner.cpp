#include "lcatf/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lcatf/error.hpp"
#include "lcatf/gabor.hpp"
#include "lcatf/io.hpp"
#include "lcatf/operators.hpp"
#include "lcatf/random.hpp"
#include "lcatf/spectral.hpp"
#include "lcatf/tfa.hpp"

namespace lcatf {

using nlohmann::json;

const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> registry = {
      {"commutation", "Eq-commutation-relations", "tf_shift", 1e-14, "<="},
      {"fourier_unitary", "Eq-Def-Fourier-Transform", "fourier", 1e-12, "<="},
      {"moyal", "Eq-STFT", "stft", 1e-10, "<="},
      {"stft_shift", "STFTtfsfts", "stft_shift_identity_residual", 1e-12, "<="},
      {"rihaczek_covariance", "Rtfs", "rihaczek_covariance_residual", 1e-12, "<="},
      {"gaussian_stft", "Eq-SFTFgauss", "stft", 1e-12, "<="},
      {"testfunction_stft", "Lem-STFTinS_C", "testfunction_stft", 1e-11, "<="},
      {"magic_formula", "Eq-GroStro-formula-51", "magic_formula_residual", 1e-10, "<="},
      {"kn_weak_form", "Eq-KonNirenberg-weak", "kn_weak_residual", 1e-11, "<="},
      {"kn_kernel", "LemKernelKN", "kn_kernel_residual", 1e-11, "<="},
      {"gabor_matrix", "Th-cont-KN-3-indici", "gabor_matrix_closed_form", 1e-10, "<="},
      {"loc_kn", "Pro-Loc-KN-form", "loc_to_kn_symbol", 1e-9, "<="},
      {"loc_weak_form", "Pro-Loc-KN-form", "localization_weak_residual", 1e-11, "<="},
      {"loc_apply", "Pro-Loc-KN-form", "localization_apply", 1e-11, "<="},
      {"loc_hermitian", "Th-Loc-eigenfunction", "localization_matrix", 1e-12, "<="},
      {"loc_moyal", "Eq-STFT", "localization_matrix", 1e-12, "<="},
      {"eigen_residual", "Th-Loc-eigenfunction", "hermitian_eigen", 1e-9, "<="},
      {"discrete_norm_exactness", "Lem-Analogo-GalSam-Lem3.2", "wiener_norm", 1e-13, "<="},
      {"wiener_dominates", "definizione-Wiener", "maximal_function", 0.0, "<="},
      {"window_robustness", "Lem-WienerSpaceIndependence", "wiener_norm", 0.0, "<="},
      {"rnorm", "Lem-r-norm-Lpq", "rnorm_subadditivity_residual", 1e-12, "<="},
      {"inclusion", "Pro-Incl-Mpq", "inclusion_check", 0.0, "<="},
      {"young", "P1", "young_verify", 0.0, "<="},
      {"partition", "Eq-fund-domain-phase-space", "partitions_phase_space", 1.0, ">="},
      {"frame_tight", "Th-frame-L2", "frame_bounds", 1e-10, "<="},
      {"frame_constant", "Th-frame-L2", "frame_bounds", 1e-10, "<="},
      {"dual_window", "Cor-dual-window-in-sA_v", "dual_window", 1e-10, "<="},
      {"gabor_expansion", "Eq-gabor-expansions-Mpq", "expansion_residual", 1e-10, "<="},
      {"missing_coset", "frame", "frame_bounds", 1.0, ">="},
      {"discrete_norm_equivalence", "Eq-disc-equiv-quasinorms-gabor-Mpq", "discrete_modnorm",
       1e-12, "<="},
      {"quotient", "Eq-quotient-STFT", "quotient_representative_residual", 0.0, "<="},
      {"decay_top_percentile", "Th-Loc-eigenfunction", "decay_comparison", 5.0, "<="},
      {"decay_negative_control", "Th-Loc-eigenfunction", "decay_comparison", 0.8, ">="},
      {"convolution_relation", "Pro-convolution-Mpq", "convolution_relation_probe", 10.0, "<="},
      {"rihaczek_continuity", "Pro-continuity-R", "rihaczek_continuity_probe", 0.0, "finite"},
  };
  return registry;
}

std::string list_identities_table() {
  std::ostringstream out;
  out << "name\tlabel\toperation\ttolerance\trelation\n";
  for (const IdentityInfo& info : identity_registry())
    out << info.name << '\t' << info.label << '\t' << info.operation << '\t'
        << io::format_double(info.tolerance) << '\t' << info.relation << '\n';
  return out.str();
}

namespace {

const IdentityInfo* find_identity(const std::string& name) {
  for (const IdentityInfo& info : identity_registry())
    if (info.name == name) return &info;
  return nullptr;
}

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::identities: return "identities";
    case Experiment::frames: return "frames";
    case Experiment::norms: return "norms";
    case Experiment::locop: return "locop";
    case Experiment::decay: return "decay";
    case Experiment::young: return "young";
    case Experiment::convrel: return "convrel";
  }
  return "unknown";
}

double exponent_value(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
  }
  throw ConfigInvalid("exponents must be numbers or \"inf\"");
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");
  static const std::vector<std::string> known = {
      "experiment", "group",   "seed",  "trials", "tolerances",
      "exponents",  "weight_exponent", "gammas", "symbol", "top_k",
      "negative_control_seeds", "output_dir"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigInvalid("unknown key '" + key + "'");

  ExperimentConfig c;
  if (!j.contains("experiment") || !j.at("experiment").is_string())
    throw ConfigInvalid("'experiment' is required");
  const std::string name = j.at("experiment").get<std::string>();
  bool found = false;
  for (Experiment e : {Experiment::identities, Experiment::frames, Experiment::norms,
                       Experiment::locop, Experiment::decay, Experiment::young,
                       Experiment::convrel})
    if (name == experiment_name(e)) {
      c.experiment = e;
      found = true;
    }
  if (!found) throw ConfigInvalid("unknown experiment '" + name + "'");

  if (!j.contains("group")) throw ConfigInvalid("'group' is required");
  c.group = j.at("group");
  io::group_from_json(c.group);  // validates

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigInvalid("'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("trials")) {
    if (!j.at("trials").is_number_integer() || j.at("trials").get<long long>() < 1)
      throw ConfigInvalid("'trials' must be a positive integer");
    c.trials = j.at("trials").get<int>();
  }
  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object()) throw ConfigInvalid("'tolerances' must be an object");
    for (const auto& [key, value] : j.at("tolerances").items()) {
      if (!find_identity(key)) throw ConfigInvalid("unknown tolerance '" + key + "'");
      if (!value.is_number() || value.get<double>() < 0.0)
        throw ConfigInvalid("tolerance '" + key + "' must be a non-negative number");
      c.tolerances[key] = value.get<double>();
    }
  }
  if (j.contains("exponents")) {
    if (!j.at("exponents").is_array()) throw ConfigInvalid("'exponents' must be an array");
    for (const json& pair : j.at("exponents")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigInvalid("each exponent entry must be [p, q]");
      Exponents e{exponent_value(pair[0]), exponent_value(pair[1])};
      if (!(e.p > 0.0) || !(e.q > 0.0)) throw ConfigInvalid("exponents must be positive");
      c.exponents.push_back(e);
    }
  }
  if (j.contains("weight_exponent")) {
    if (!j.at("weight_exponent").is_number() || j.at("weight_exponent").get<double>() < 0.0)
      throw ConfigInvalid("'weight_exponent' must be a non-negative number");
    c.weight_exponent = j.at("weight_exponent").get<double>();
  }
  if (j.contains("gammas")) {
    if (!j.at("gammas").is_array()) throw ConfigInvalid("'gammas' must be an array");
    for (const json& g : j.at("gammas")) {
      if (!g.is_number() || !(g.get<double>() > 0.0) || g.get<double>() > 2.0)
        throw ConfigInvalid("gammas must lie in (0, 2]");
      c.gammas.push_back(g.get<double>());
    }
  }
  if (j.contains("symbol")) {
    const json& s = j.at("symbol");
    if (!s.is_object() || !s.contains("kind") || !s.at("kind").is_string())
      throw ConfigInvalid("'symbol' must be an object with a 'kind'");
    const std::string kind = s.at("kind").get<std::string>();
    std::vector<std::string> allowed;
    if (kind == "bump")
      allowed = {"kind", "width"};
    else if (kind == "constant")
      allowed = {"kind", "value"};
    else if (kind == "random")
      allowed = {"kind"};
    else if (kind == "entries")
      allowed = {"kind", "entries"};
    else
      throw ConfigInvalid("unknown symbol kind '" + kind + "'");
    for (const auto& [key, _] : s.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigInvalid("unknown symbol key '" + key + "'");
    if (s.contains("width") && (!s.at("width").is_number() || !(s.at("width").get<double>() > 0.0)))
      throw ConfigInvalid("symbol width must be positive");
    if (s.contains("value") && !s.at("value").is_number())
      throw ConfigInvalid("symbol value must be a number");
    c.symbol = s;
  }
  if (j.contains("top_k")) {
    if (!j.at("top_k").is_number_integer() || j.at("top_k").get<long long>() < 1)
      throw ConfigInvalid("'top_k' must be a positive integer");
    c.top_k = j.at("top_k").get<std::size_t>();
  }
  if (j.contains("negative_control_seeds")) {
    if (!j.at("negative_control_seeds").is_number_integer() ||
        j.at("negative_control_seeds").get<long long>() < 0)
      throw ConfigInvalid("'negative_control_seeds' must be a non-negative integer");
    c.negative_control_seeds = j.at("negative_control_seeds").get<int>();
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigInvalid("'output_dir' must be a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  return c;
}

std::vector<std::string> RunResult::failures() const {
  std::vector<std::string> out;
  for (const Check& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

int RunResult::exit_code() const { return failures().empty() ? 0 : 2; }

namespace {

class Context {
 public:
  Context(const ExperimentConfig& config, std::filesystem::path dir)
      : config(config), group(io::group_from_json(config.group)), dir(std::move(dir)) {}

  int trials(int fallback) const { return config.trials.value_or(fallback); }

  void check(const std::string& name, double value) {
    const IdentityInfo* info = find_identity(name);
    const auto override_it = config.tolerances.find(name);
    const double tol = override_it != config.tolerances.end() ? override_it->second : info->tolerance;
    Check c{name, value, tol, info->relation, false};
    if (info->relation == "<=")
      c.pass = value <= tol;
    else if (info->relation == ">=")
      c.pass = value >= tol;
    else if (info->relation == "finite")
      c.pass = std::isfinite(value);
    result.checks.push_back(c);
  }

  void write_text(const std::string& file, const std::string& text) {
    io::write_text(dir / file, text);
    result.artifacts.push_back(dir / file);
  }
  void write_json(const std::string& file, const json& j) {
    io::write_json(dir / file, j);
    result.artifacts.push_back(dir / file);
  }

  const ExperimentConfig& config;
  Group group;
  std::filesystem::path dir;
  RunResult result;
  json report = json::object();
};

PhasePoint random_point(const Group& g, CounterRng& rng) {
  return {{rng.next_u64() % g.size()}, {rng.next_u64() % g.size()}};
}

double max_abs_difference(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double commutation_residual(const Signal& f, PhasePoint p) {
  const Group& g = f.group();
  const Signal lhs = modulate(translate(f, p.x), p.xi);
  const Signal rhs = translate(modulate(f, p.xi), p.x) * g.character(p.xi, p.x);
  return max_abs_difference(lhs.values(), rhs.values());
}

TestFunction random_test_function(const Group& g, CounterRng& rng, int terms) {
  TestFunction t{g, {}};
  for (int k = 0; k < terms; ++k) t.terms.push_back({rng.complex_normal(), random_point(g, rng)});
  return t;
}

// exp(-|r - c|^2 / width) over D1 x D2 in residue coordinates, centred in the
// box and normalized to unit phase-space mass.
PhaseFunction bump_symbol(const Group& g, double width) {
  PhaseFunction a = PhaseFunction::zeros(g);
  const auto& factors = g.factors();
  const auto& divisors = g.subgroup_divisors();
  double total = 0.0;
  const QuasiLattice lattice = QuasiLattice::canonical(g);
  for (PhasePoint w : lattice.points()) {
    const auto rx = g.residues(w.x.index);
    const auto rxi = g.residues(w.xi.index);
    double dist = 0.0;
    for (std::size_t j = 0; j < g.rank(); ++j) {
      const double cx = std::floor((divisors[j] - 1) / 2.0);
      const double cxi = std::floor((factors[j] / divisors[j] - 1) / 2.0);
      dist += (rx[j] - cx) * (rx[j] - cx) + (rxi[j] - cxi) * (rxi[j] - cxi);
    }
    const double value = std::exp(-dist / width);
    a.at(w.x.index, w.xi.index) = value;
    total += value * g.mass() * g.dual_mass();
  }
  a *= 1.0 / total;
  return a;
}

PhaseFunction config_symbol(const Context& ctx) {
  const Group& g = ctx.group;
  const json& s = ctx.config.symbol;
  if (s.is_null()) return bump_symbol(g, 4.0);
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "bump") return bump_symbol(g, s.value("width", 4.0));
  if (kind == "constant") return PhaseFunction::constant(g, s.value("value", 1.0));
  if (kind == "random") {
    CounterRng rng(ctx.config.seed, 0x73796d62ULL);
    PhaseFunction a = PhaseFunction::zeros(g);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.normal();
    return a;
  }
  return io::symbol_from_json({{"group", ctx.config.group}, {"entries", s.at("entries")}});
}

bool is_real(const PhaseFunction& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](const cplx& c) { return c.imag() == 0.0; });
}

std::vector<Exponents> exponent_grid(const std::vector<double>& values) {
  std::vector<Exponents> out;
  for (double p : values)
    for (double q : values) out.push_back({p, q});
  return out;
}

void run_identities(Context& ctx) {
  const Group& g = ctx.group;
  const std::size_t n = g.size();
  const Signal phi = gaussian_window(g);
  const std::vector<PhasePoint> lattice = QuasiLattice::canonical(g).points();
  const bool run_magic = n <= 16;

  double comm = 0, unitary = 0, moyal = 0, shift = 0, cov = 0, tfs = 0, magic = 0;
  double weak = 0, kernel = 0, gmat = 0, lockn = 0;
  const int trials = ctx.trials(50);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    const Signal h = random_signal(g, rng);
    const PhasePoint a = random_point(g, rng);
    const PhasePoint b = random_point(g, rng);

    comm = std::max(comm, commutation_residual(f, a));
    unitary = std::max(unitary, std::abs(fourier(f).norm() - f.norm()) / f.norm());

    const PhaseFunction v = stft(f, h);
    double energy = 0.0;
    for (const cplx& c : v.values()) energy += std::norm(c);
    energy *= g.mass() * g.dual_mass();
    const double expected = f.norm() * f.norm() * h.norm() * h.norm();
    moyal = std::max(moyal, std::abs(energy - expected) / expected);

    shift = std::max(shift, stft_shift_identity_residual(f, h, a, b));
    cov = std::max(cov, rihaczek_covariance_residual(f, h, a, b));

    const TestFunction tf1 = random_test_function(g, rng, 2);
    const TestFunction tf2 = random_test_function(g, rng, 2);
    tfs = std::max(tfs, max_abs_difference(testfunction_stft(tf1, tf2).values(),
                                           stft(tf1.materialize(), tf2.materialize()).values()));

    if (run_magic) magic = std::max(magic, magic_formula_residual(phi, f, h));

    const PhaseFunction sigma = random_phase_function(g, rng);
    weak = std::max(weak, kn_weak_residual(sigma, f, h));
    kernel = std::max(kernel, kn_kernel_residual(sigma, f, h));
    gmat = std::max(gmat, max_abs_difference(gabor_matrix(sigma, phi, lattice),
                                             gabor_matrix_closed_form(sigma, lattice)));

    const Signal psi1 = random_signal(g, rng);
    const Signal psi2 = random_signal(g, rng);
    lockn = std::max(lockn, loc_kn_residual(random_phase_function(g, rng), psi1, psi2));
  }

  // V_phi phi = c(K) on K x K^perp and zero elsewhere, c(K) = |K| mass_G.
  const PhaseFunction vpp = stft(phi, phi);
  const double c_k = static_cast<double>(g.subgroup_size()) * g.mass();
  double gauss = std::abs(vpp.at(0, 0) - c_k);
  for (std::size_t i = 0; i < vpp.size(); ++i) {
    const PhasePoint p = vpp.point(i);
    const bool inside = g.in_subgroup(p.x.index) && g.in_annihilator(p.xi.index);
    gauss = std::max(gauss, std::abs(vpp[i] - (inside ? vpp.at(0, 0) : cplx{})));
  }

  ctx.check("commutation", comm);
  ctx.check("fourier_unitary", unitary);
  ctx.check("moyal", moyal);
  ctx.check("stft_shift", shift);
  ctx.check("rihaczek_covariance", cov);
  ctx.check("gaussian_stft", gauss);
  ctx.check("testfunction_stft", tfs);
  if (run_magic) ctx.check("magic_formula", magic);
  ctx.check("kn_weak_form", weak);
  ctx.check("kn_kernel", kernel);
  ctx.check("gabor_matrix", gmat);
  ctx.check("loc_kn", lockn);
  ctx.report["c_K"] = vpp.at(0, 0).real();
  ctx.report["magic_formula_evaluated"] = run_magic;

  std::ostringstream csv;
  csv << "name,label,max_residual,tolerance,pass\n";
  for (const Check& c : ctx.result.checks)
    csv << c.name << ',' << find_identity(c.name)->label << ',' << io::format_double(c.value)
        << ',' << io::format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  ctx.write_text("identities.csv", csv.str());
}

void run_frames(Context& ctx) {
  const Group& g = ctx.group;
  const std::size_t n = g.size();
  const Signal phi = gaussian_window(g);
  const QuasiLattice lattice = QuasiLattice::canonical(g);

  ctx.check("partition", lattice.partitions_phase_space() ? 1.0 : 0.0);

  const FrameBounds bounds = frame_bounds(phi, lattice);
  ctx.check("frame_tight", bounds.upper / bounds.lower - 1.0);
  const double expected_constant = static_cast<double>(g.subgroup_size()) * g.mass();
  ctx.check("frame_constant", std::abs(bounds.lower / expected_constant - 1.0));

  const Signal h = dual_window(phi, lattice);
  const OperatorMatrix id = OperatorMatrix::identity(g);
  ctx.check("dual_window", std::max(max_abs_difference(frame_operator(h, phi, lattice), id),
                                    max_abs_difference(frame_operator(phi, h, lattice), id)));

  // Non-tight frame: phi plus a small bump off the subgroup. S^-1 g is only a
  // dual when S commutes with the shifts, so this one runs on the full grid.
  Signal perturbed = phi;
  if (n > 1) perturbed[1] += 0.25;
  const QuasiLattice full = QuasiLattice::full(g);
  const Signal h_perturbed = dual_window(perturbed, full);

  double expansion = 0.0;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  std::ostringstream csv;
  csv << "trial,expansion_residual,perturbed_expansion_residual,discrete_ratio\n";
  const int trials = ctx.trials(100);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    const double r1 = expansion_residual(f, phi, h, lattice) / f.norm();
    const double r2 = expansion_residual(f, perturbed, h_perturbed, full) / f.norm();
    expansion = std::max({expansion, r1, r2});
    const double ratio = discrete_modnorm(f, phi, lattice, {2.0, 2.0}, Weight::ones(g)) /
                         modulation_norm(f, {2.0, 2.0}, Weight::ones(g));
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    csv << t << ',' << io::format_double(r1) << ',' << io::format_double(r2) << ','
        << io::format_double(ratio) << '\n';
  }
  ctx.check("gabor_expansion", expansion);
  ctx.check("discrete_norm_equivalence", ratio_max / ratio_min - 1.0);

  double missing = 1.0;
  if (lattice.size() > 1) {
    std::vector<PhasePoint> pts = lattice.points();
    pts.pop_back();
    missing = 0.0;
    try {
      frame_bounds(phi, QuasiLattice(g, pts));
    } catch (const NotAFrame&) {
      missing = 1.0;
    }
  }
  ctx.check("missing_coset", missing);

  ctx.report["A"] = bounds.lower;
  ctx.report["B"] = bounds.upper;
  ctx.report["discrete_ratio_min"] = ratio_min;
  ctx.report["discrete_ratio_max"] = ratio_max;
  ctx.write_json("frame_report.json", io::frame_report(bounds, lattice.redundancy(), h));
  ctx.write_text("dual_window.csv", io::signal_csv(h));
  ctx.write_text("frames.csv", csv.str());
}

void run_norms(Context& ctx) {
  const Group& g = ctx.group;
  const Signal phi = gaussian_window(g);
  const bool discrete = g.subgroup_size() == 1;

  std::vector<Exponents> exponents = ctx.config.exponents;
  if (exponents.empty()) exponents = exponent_grid({0.5, 1.0, 2.0, kInfinity});
  std::vector<std::pair<std::string, Weight>> weights = {{"ones", Weight::ones(g)}};
  if (ctx.config.weight_exponent > 0.0)
    weights.emplace_back("poly" + io::format_double(ctx.config.weight_exponent),
                         Weight::polynomial(g, ctx.config.weight_exponent));
  const std::vector<std::pair<std::string, WindowSet>> windows = {
      {"unit", WindowSet::unit(g)},
      {"canonical", WindowSet::canonical(g)},
      {"full", WindowSet::full(g)}};

  std::vector<io::NormSweepRow> rows;
  double dominates = -std::numeric_limits<double>::infinity();
  double robustness_violations = 0.0;
  double exactness = 0.0;
  double rnorm = -std::numeric_limits<double>::infinity();
  double inclusion_violations = 0.0;
  double open_min = std::numeric_limits<double>::infinity();
  double open_max = 0.0;

  const int trials = ctx.trials(100);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    const Signal h = random_signal(g, rng);
    const PhaseFunction vf = stft(f, phi);
    const PhaseFunction vh = stft(h, phi);

    for (const Exponents& e : exponents)
      for (const auto& [weight_id, w] : weights) {
        const double plain = mixed_quasi_norm(vf, e, w);
        std::vector<double> per_window;
        for (const auto& [window_id, q] : windows) {
          const double value = wiener_norm(vf, q, e, w);
          per_window.push_back(value);
          dominates = std::max(dominates, plain - value);
          if (t == 0) rows.push_back({e.p, e.q, weight_id, window_id, value});
        }
        if (weight_id == "ones") {
          // unit <= canonical <= full, each step bounded by |Q|^{1/r}.
          const double r = e.r();
          const double c_bound = std::pow(static_cast<double>(windows[1].second.size()), 1.0 / r);
          const double f_bound = std::pow(static_cast<double>(windows[2].second.size()), 1.0 / r);
          const double slack = 1e-12;
          if (per_window[1] < per_window[0] * (1 - slack) ||
              per_window[1] > c_bound * per_window[0] * (1 + slack))
            robustness_violations += 1.0;
          if (per_window[2] < per_window[1] * (1 - slack) ||
              per_window[2] > f_bound * per_window[1] * (1 + slack))
            robustness_violations += 1.0;
        }
        if (discrete)
          exactness = std::max(exactness, std::abs(per_window[1] - plain) / (1.0 + plain));
        else if (plain > 0.0) {
          open_min = std::min(open_min, per_window[1] / plain);
          open_max = std::max(open_max, per_window[1] / plain);
        }
      }

    for (const Exponents& e : exponent_grid({0.5, 1.0, 2.0}))
      for (const auto& [weight_id, w] : weights) {
        const double r = e.r();
        const double scale =
            std::pow(mixed_quasi_norm(vf, e, w), r) + std::pow(mixed_quasi_norm(vh, e, w), r);
        rnorm = std::max(rnorm, rnorm_subadditivity_residual(vf, vh, e, w) / scale);
      }

    for (const Exponents& e1 : exponents)
      for (const Exponents& e2 : exponents) {
        if (e1.p > e2.p || e1.q > e2.q) continue;
        for (const auto& [weight_id, w] : weights)
          if (!inclusion_check(f, e1, e2, w, w).holds) inclusion_violations += 1.0;
      }
  }

  ctx.check("wiener_dominates", dominates);
  ctx.check("window_robustness", robustness_violations);
  if (discrete) ctx.check("discrete_norm_exactness", exactness);
  ctx.check("rnorm", rnorm);
  ctx.check("inclusion", inclusion_violations);
  if (!discrete) {
    // Reported only: equivalence for general K is not asserted.
    ctx.report["canonical_to_plain_ratio_min"] = open_min;
    ctx.report["canonical_to_plain_ratio_max"] = open_max;
  }
  ctx.write_text("norm_sweep.csv", io::norm_sweep_csv(rows));
}

void run_locop(Context& ctx) {
  const Group& g = ctx.group;
  const Signal phi = gaussian_window(g);
  const PhaseFunction a = config_symbol(ctx);
  const OperatorMatrix loc = localization_matrix(a, phi, phi);
  const PhaseFunction kn_symbol = loc_to_kn_symbol(a, phi, phi);

  ctx.check("loc_kn", max_abs_difference(loc, kn_matrix(kn_symbol)));
  if (is_real(a)) {
    ctx.check("loc_hermitian", loc.hermitian_defect());
    const std::vector<EigenPair> pairs = hermitian_eigen(loc);
    const double scale = std::max(loc.frobenius_norm(), 1e-300);
    ctx.check("eigen_residual", eigen_residual(loc, pairs) / scale);
    json values = json::array();
    for (const EigenPair& p : pairs) values.push_back(p.value);
    ctx.report["eigenvalues"] = values;
  }

  const OperatorMatrix moyal = localization_matrix(PhaseFunction::constant(g, 1.0), phi, phi);
  OperatorMatrix expected = OperatorMatrix::identity(g);
  expected *= phi.norm() * phi.norm();
  ctx.check("loc_moyal", max_abs_difference(moyal, expected));

  double weak = 0.0;
  double apply = 0.0;
  const int trials = ctx.trials(20);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
    const Signal f = random_signal(g, rng);
    const Signal h = random_signal(g, rng);
    weak = std::max(weak, localization_weak_residual(a, phi, phi, f, h));
    apply = std::max(apply, max_abs_difference(localization_apply(a, phi, phi, f).values(),
                                               loc.apply(f).values()));
  }
  ctx.check("loc_weak_form", weak);
  ctx.check("loc_apply", apply);

  ctx.write_json("locop_matrix.json", io::to_json(loc));
  ctx.write_text("locop_matrix.csv", io::operator_csv(loc));
  ctx.write_text("locop_symbol.csv", io::phase_csv(a));
  ctx.write_text("locop_kn_symbol.csv", io::phase_csv(kn_symbol));
}

void run_decay(Context& ctx) {
  const Group& g = ctx.group;
  const Signal phi = gaussian_window(g);
  const PhaseFunction a = config_symbol(ctx);
  const OperatorMatrix loc = localization_matrix(a, phi, phi);

  DecayOptions options;
  if (!ctx.config.gammas.empty()) options.gammas = ctx.config.gammas;
  options.trials = ctx.trials(500);
  options.seed = ctx.config.seed;
  options.top_k = ctx.config.top_k;

  const DecayReport report = decay_comparison(loc, phi, options);
  ctx.check("decay_top_percentile", report.percentiles.front());
  ctx.report["top_percentile"] = report.percentiles.front();
  ctx.report["degenerate_ties"] = report.degenerate_ties;
  ctx.write_json("decay_report.json", io::decay_report(report));

  if (ctx.config.negative_control_seeds > 0) {
    std::ostringstream csv;
    csv << "seed,median_percentile,top_percentile\n";
    int inside = 0;
    for (int s = 0; s < ctx.config.negative_control_seeds; ++s) {
      DecayOptions control = options;
      control.seed = ctx.config.seed + 1 + static_cast<std::uint64_t>(s);
      const DecayReport r = decay_comparison(random_hermitian(g, control.seed), phi, control);
      const double median = r.median_percentile();
      if (median >= 20.0 && median <= 80.0) ++inside;
      csv << control.seed << ',' << io::format_double(median) << ','
          << io::format_double(r.percentiles.front()) << '\n';
    }
    ctx.check("decay_negative_control",
              static_cast<double>(inside) / ctx.config.negative_control_seeds);
    ctx.write_text("negative_control.csv", csv.str());
  }
}

void run_young(Context& ctx) {
  const Group& g = ctx.group;
  const std::vector<double> values = {1.0, 1.5, 2.0, kInfinity};
  auto inv = [](double v) { return std::isinf(v) ? 0.0 : 1.0 / v; };
  // Admissible (p, q, r) per coordinate: 1/r = 1/p + 1/q - 1 in [0, 1].
  std::vector<std::array<double, 3>> triples;
  for (double p : values)
    for (double q : values) {
      const double inv_r = inv(p) + inv(q) - 1.0;
      if (inv_r < -1e-12) continue;
      triples.push_back({p, q, inv_r <= 1e-12 ? kInfinity : 1.0 / inv_r});
    }

  std::vector<std::pair<std::string, Weight>> weights = {{"ones", Weight::ones(g)}};
  if (ctx.config.weight_exponent > 0.0)
    weights.emplace_back("poly" + io::format_double(ctx.config.weight_exponent),
                         Weight::polynomial(g, ctx.config.weight_exponent));

  std::ostringstream csv;
  csv << "p1,p2,q1,q2,r1,r2,weight_id,max_ratio\n";
  double violations = 0.0;
  const int trials = ctx.trials(200);
  std::vector<PhaseFunction> fs;
  std::vector<PhaseFunction> hs;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
    fs.push_back(random_phase_function(g, rng));
    hs.push_back(random_phase_function(g, rng));
  }
  std::vector<PhaseFunction> convolutions;
  for (int t = 0; t < trials; ++t) convolutions.push_back(convolve_phase(fs[t], hs[t]));

  for (const auto& first : triples)
    for (const auto& second : triples)
      for (const auto& [weight_id, w] : weights) {
        const Exponents p{first[0], second[0]};
        const Exponents q{first[1], second[1]};
        const Exponents r{first[2], second[2]};
        const double c = check_moderate(w, w);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
          const double lhs = mixed_quasi_norm(convolutions[t], r, w);
          const double rhs = mixed_quasi_norm(fs[t], p, w) * mixed_quasi_norm(hs[t], q, w);
          if (lhs > c * rhs * (1.0 + 1e-10)) violations += 1.0;
          worst = std::max(worst, lhs / (c * rhs));
        }
        csv << io::format_double(p.p) << ',' << io::format_double(p.q) << ','
            << io::format_double(q.p) << ',' << io::format_double(q.q) << ','
            << io::format_double(r.p) << ',' << io::format_double(r.q) << ',' << weight_id << ','
            << io::format_double(worst) << '\n';
      }
  ctx.check("young", violations);
  ctx.report["exponent_triples"] = triples.size() * triples.size();
  ctx.write_text("young.csv", csv.str());
}

void run_convrel(Context& ctx) {
  const Group& g = ctx.group;
  const std::vector<std::pair<std::string, ConvolutionExponents>> sets = {
      {"banach", {1.0, 1.0, 1.0, 2.0, 2.0, 1.0}},
      {"mixed", {2.0, 1.0, 2.0, 2.0, 2.0, 1.0}},
      {"quasi", {0.5, 0.5, 0.5, 1.0, 1.0, 0.5}}};
  const Weight m = ctx.config.weight_exponent > 0.0
                       ? Weight::polynomial(g, ctx.config.weight_exponent)
                       : Weight::ones(g);
  const std::vector<double> nu(g.size(), 1.0);

  std::ostringstream csv;
  csv << "set,trial,lhs,rhs,constant\n";
  double worst_spread = 0.0;
  const int trials = ctx.trials(200);
  json constants = json::object();
  for (const auto& [name, e] : sets) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
      const Signal f = random_signal(g, rng);
      const Signal h = random_signal(g, rng);
      const ProbeResult r = convolution_relation_probe(f, h, e, m, m, nu);
      const double c = r.constant();
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      csv << name << ',' << t << ',' << io::format_double(r.lhs) << ','
          << io::format_double(r.rhs) << ',' << io::format_double(c) << '\n';
    }
    const double spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    worst_spread = std::max(worst_spread, spread);
    constants[name] = {{"min", lo}, {"max", hi}};
  }
  ctx.check("convolution_relation", worst_spread);
  ctx.report["convolution_constants"] = constants;

  if (g.size() <= 8) {
    const std::vector<std::pair<std::string, RihaczekExponents>> rsets = {
        {"l2", {{2.0, 2.0}, {2.0, 2.0}, {2.0, 2.0}}},
        {"l1", {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}},
        {"quasi", {{0.5, 1.0}, {0.5, 0.5}, {0.5, 0.5}}}};
    double worst = 0.0;
    json rconstants = json::object();
    const int rtrials = std::min(trials, 20);
    for (const auto& [name, e] : rsets) {
      double hi = 0.0;
      for (int t = 0; t < rtrials; ++t) {
        CounterRng rng(ctx.config.seed, static_cast<std::uint64_t>(t));
        const Signal f = random_signal(g, rng);
        const Signal h = random_signal(g, rng);
        hi = std::max(hi, rihaczek_continuity_probe(h, f, e, m).constant());
      }
      worst = std::max(worst, hi);
      rconstants[name] = hi;
    }
    ctx.check("rihaczek_continuity", worst);
    ctx.report["rihaczek_constants"] = rconstants;
  }
  ctx.write_text("convrel.csv", csv.str());
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir) {
  Context ctx(config, output_dir);
  switch (config.experiment) {
    case Experiment::identities: run_identities(ctx); break;
    case Experiment::frames: run_frames(ctx); break;
    case Experiment::norms: run_norms(ctx); break;
    case Experiment::locop: run_locop(ctx); break;
    case Experiment::decay: run_decay(ctx); break;
    case Experiment::young: run_young(ctx); break;
    case Experiment::convrel: run_convrel(ctx); break;
  }
  ctx.result.experiment = experiment_name(config.experiment);

  json checks = json::array();
  for (const Check& c : ctx.result.checks)
    checks.push_back({{"name", c.name},
                      {"label", find_identity(c.name)->label},
                      {"value", io::format_double(c.value)},
                      {"tolerance", io::format_double(c.tolerance)},
                      {"relation", c.relation},
                      {"pass", c.pass}});
  const json summary = {{"experiment", ctx.result.experiment},
                        {"group", config.group},
                        {"seed", config.seed},
                        {"checks", std::move(checks)},
                        {"report", ctx.report},
                        {"failures", ctx.result.failures()},
                        {"passed", ctx.result.exit_code() == 0}};
  ctx.write_json(ctx.result.experiment + "_summary.json", summary);
  return ctx.result;
}

int run_config_file(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read '" + path.string() + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigInvalid(std::string("malformed JSON: ") + e.what());
    }
    config = parse_config(j);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }

  std::filesystem::path dir = config.output_dir;
  if (const char* env = std::getenv("LCATF_OUTPUT_DIR"); env && *env) dir = env;

  try {
    const RunResult result = run_experiment(config, dir);
    if (result.exit_code() != 0) {
      out << json{{"failures", result.failures()}}.dump() << '\n';
      return result.exit_code();
    }
    for (const Check& c : result.checks)
      out << c.name << ' ' << io::format_double(c.value) << ' ' << c.relation << ' '
          << io::format_double(c.tolerance) << '\n';
    return 0;
  } catch (const Error& e) {
    out << json{{"failures", {e.what()}}}.dump() << '\n';
    return 2;
  }
}

}  // namespace lcatf
