#include "lcatf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lcatf/error.hpp"

namespace lcatf::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

json complex_pair(cplx c) { return json::array({c.real(), c.imag()}); }

cplx pair_value(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigInvalid("complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ConfigInvalid(std::string("group needs an integer list '") + key + "'");
  std::vector<int> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number_integer()) throw ConfigInvalid(std::string("'") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

json to_json(const Group& g) {
  return {{"factors", g.factors()}, {"subgroup_divisors", g.subgroup_divisors()}};
}

Group group_from_json(const json& j) {
  if (!j.is_object()) throw ConfigInvalid("group must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "factors" && key != "subgroup_divisors")
      throw ConfigInvalid("unknown group key '" + key + "'");
  const std::vector<int> factors = int_list(j, "factors");
  const std::vector<int> divisors = int_list(j, "subgroup_divisors");
  if (factors.size() != divisors.size())
    throw ConfigInvalid("factors and subgroup_divisors differ in length");
  for (int n : factors)
    if (n < 1) throw ConfigInvalid("cyclic orders must be >= 1");
  return Group::make(factors, divisors);
}

json to_json(const Signal& s) {
  json values = json::array();
  for (const cplx& c : s.values()) values.push_back(complex_pair(c));
  return {{"group", to_json(s.group())},
          {"domain", s.domain() == Domain::time ? "time" : "frequency"},
          {"values", std::move(values)}};
}

Signal signal_from_json(const json& j) {
  const Group g = group_from_json(j.at("group"));
  Domain domain = Domain::time;
  if (j.contains("domain")) {
    const std::string d = j.at("domain").get<std::string>();
    if (d == "frequency")
      domain = Domain::frequency;
    else if (d != "time")
      throw ConfigInvalid("domain must be 'time' or 'frequency'");
  }
  CVector values;
  for (const json& v : j.at("values")) values.push_back(pair_value(v));
  return Signal(g, std::move(values), domain);
}

json to_json(const PhaseFunction& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const PhasePoint p = f.point(i);
    rows.push_back({{"x", p.x.index}, {"xi", p.xi.index}, {"value", complex_pair(f[i])}});
  }
  return {{"group", to_json(f.base())}, {"entries", std::move(rows)}};
}

PhaseFunction symbol_from_json(const json& j) {
  const Group g = group_from_json(j.at("group"));
  PhaseFunction out = PhaseFunction::zeros(g);
  for (const json& e : j.at("entries")) {
    const auto x = e.at("x").get<long long>();
    const auto xi = e.at("xi").get<long long>();
    if (x < 0 || xi < 0 || static_cast<std::size_t>(x) >= g.size() ||
        static_cast<std::size_t>(xi) >= g.size())
      throw ConfigInvalid("symbol entry index out of range");
    out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(xi)) = pair_value(e.at("value"));
  }
  return out;
}

json to_json(const OperatorMatrix& m) {
  json entries = json::array();
  for (const cplx& c : m.entries()) entries.push_back(complex_pair(c));
  return {{"group", to_json(m.group())}, {"rows", m.dim()}, {"entries", std::move(entries)}};
}

json frame_report(const FrameBounds& bounds, double redundancy, const Signal& dual) {
  return {{"A", bounds.lower},
          {"B", bounds.upper},
          {"tight", bounds.tight()},
          {"redundancy", redundancy},
          {"dual_window", to_json(dual)}};
}

json decay_report(const DecayReport& report) {
  json profiles = json::array();
  for (const DecayProfile& p : report.profiles) {
    json rows = json::array();
    for (std::size_t i = 0; i < p.gammas.size(); ++i)
      rows.push_back({{"gamma", p.gammas[i]}, {"norm", p.norms[i]}, {"ratio", p.ratios[i]}});
    profiles.push_back(std::move(rows));
  }
  return {{"eigenvalues", report.eigenvalues},
          {"profiles", std::move(profiles)},
          {"percentiles", report.percentiles},
          {"median_percentile", report.median_percentile()},
          {"degenerate_ties", report.degenerate_ties},
          {"seed", report.seed},
          {"trials", report.trials}};
}

std::string signal_csv(const Signal& s) {
  std::ostringstream out;
  out << "index,re,im\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << i << ',' << format_double(s[i].real()) << ',' << format_double(s[i].imag()) << '\n';
  return out.str();
}

std::string phase_csv(const PhaseFunction& f) {
  std::ostringstream out;
  out << "x,xi,re,im,abs\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const PhasePoint p = f.point(i);
    out << p.x.index << ',' << p.xi.index << ',' << format_double(f[i].real()) << ','
        << format_double(f[i].imag()) << ',' << format_double(std::abs(f[i])) << '\n';
  }
  return out.str();
}

std::string operator_csv(const OperatorMatrix& m) {
  std::ostringstream out;
  out << "row,col,re,im\n";
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      out << r << ',' << c << ',' << format_double(m(r, c).real()) << ','
          << format_double(m(r, c).imag()) << '\n';
  return out.str();
}

std::string norm_sweep_csv(const std::vector<NormSweepRow>& rows) {
  std::ostringstream out;
  out << "p,q,weight_id,window_id,value\n";
  for (const NormSweepRow& r : rows)
    out << format_double(r.p) << ',' << format_double(r.q) << ',' << r.weight_id << ','
        << r.window_id << ',' << format_double(r.value) << '\n';
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace lcatf::io
