#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcatf/error.hpp"
#include "lcatf/io.hpp"
#include "lcatf/random.hpp"
#include "lcatf/runner.hpp"

using namespace lcatf;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lcatf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1e-300) == "1e-300");
  CHECK(io::format_double(kInfinity) == "inf");
  CHECK(io::format_double(-kInfinity) == "-inf");
  CHECK(io::format_double(std::nan("")) == "nan");
  CounterRng rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.normal() * 10.0);
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("group JSON") {
  const Group g = Group::make({6, 2}, {3, 1});
  CHECK(io::group_from_json(io::to_json(g)) == g);
  CHECK_THROWS_AS(io::group_from_json(json{{"factors", {4}}}), ConfigInvalid);
  CHECK_THROWS_AS(io::group_from_json(json{{"factors", {4}}, {"subgroup_divisors", {2}}, {"x", 1}}),
                  ConfigInvalid);
  CHECK_THROWS_AS(io::group_from_json(json{{"factors", {4.5}}, {"subgroup_divisors", {2}}}),
                  ConfigInvalid);
  CHECK_THROWS_AS(io::group_from_json(json{{"factors", {6}}, {"subgroup_divisors", {4}}}), NonDivisor);
}

TEST_CASE("signal and symbol JSON") {
  const Group g = Group::cyclic(4, 2);
  CounterRng rng(2, 0);
  const Signal f = random_signal(g, rng);
  const Signal back = io::signal_from_json(io::to_json(f));
  CHECK(back.group() == g);
  for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == f[i]);

  const json sym = {{"group", io::to_json(g)},
                    {"entries", {{{"x", 1}, {"xi", 2}, {"value", {0.5, -1.0}}}}}};
  const PhaseFunction s = io::symbol_from_json(sym);
  CHECK(s.at(1, 2) == cplx{0.5, -1.0});
  CHECK(s.at(0, 0) == cplx{});
  json bad = sym;
  bad["entries"][0]["x"] = 4;
  CHECK_THROWS_AS(io::symbol_from_json(bad), ConfigInvalid);
}

TEST_CASE("CSV tables") {
  const Group g = Group::cyclic(2, 1);
  const std::string csv = io::signal_csv(Signal::delta(g, {1}));
  CHECK(csv.substr(0, csv.find('\n')).find(',') != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  const std::string sweep = io::norm_sweep_csv({{1.0, kInfinity, "ones", "unit", 2.5}});
  CHECK(sweep.find("1,inf,ones,unit,2.5") != std::string::npos);
}

TEST_CASE("config validation") {
  const json ok = {{"experiment", "frames"}, {"group", {{"factors", {4}}, {"subgroup_divisors", {2}}}}};
  CHECK_NOTHROW(parse_config(ok));
  json unknown = ok;
  unknown["bogus"] = 1;
  CHECK_THROWS_AS(parse_config(unknown), ConfigInvalid);
  json experiment = ok;
  experiment["experiment"] = "nothing";
  CHECK_THROWS_AS(parse_config(experiment), ConfigInvalid);
  json tol = ok;
  tol["tolerances"] = {{"no_such_check", 1.0}};
  CHECK_THROWS_AS(parse_config(tol), ConfigInvalid);
  json trials = ok;
  trials["trials"] = 0;
  CHECK_THROWS_AS(parse_config(trials), ConfigInvalid);
  json exps = ok;
  exps["exponents"] = {{1, "inf"}};
  CHECK(std::isinf(parse_config(exps).exponents.front().q));
}

TEST_CASE("config file errors exit with 1") {
  const fs::path dir = scratch("errors");
  std::ostringstream out, err;
  CHECK(run_config_file(dir / "missing.json", out, err) == 1);
  CHECK(run_config_file(write_config(dir, "{not json"), out, err) == 1);
  CHECK(run_config_file(write_config(dir, R"({"experiment": "frames", "group": {"factors": [6], "subgroup_divisors": [4]}})"),
                        out, err) == 1);
  CHECK(run_config_file(write_config(dir, R"({"experiment": "frames", "group": {"factors": [4], "subgroup_divisors": [2]}, "extra": 1})"),
                        out, err) == 1);
  CHECK(err.str().find("ConfigInvalid") != std::string::npos);
}

TEST_CASE("failed checks exit with 2") {
  const fs::path dir = scratch("fail");
  ExperimentConfig c = parse_config(json{{"experiment", "frames"},
                                         {"group", {{"factors", {4}}, {"subgroup_divisors", {2}}}},
                                         {"tolerances", {{"gabor_expansion", 0.0}}},
                                         {"trials", 3}});
  // Roundoff makes a zero tolerance unattainable for the expansion residual.
  const RunResult r = run_experiment(c, dir);
  CHECK(r.exit_code() == 2);
  CHECK(r.failures() == std::vector<std::string>{"gabor_expansion"});
}

TEST_CASE("runs are deterministic") {
  const std::string text =
      R"({"experiment": "frames", "group": {"factors": [6], "subgroup_divisors": [3]}, "seed": 11, "trials": 10})";
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  std::ostringstream out, err;
  const ExperimentConfig c = parse_config(json::parse(text));
  CHECK(run_experiment(c, a).exit_code() == 0);
  CHECK(run_experiment(c, b).exit_code() == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(files >= 4);
}

TEST_CASE("identity registry") {
  const std::string table = list_identities_table();
  for (const IdentityInfo& info : identity_registry()) {
    CHECK(table.find(info.name) != std::string::npos);
    CHECK(!info.label.empty());
    CHECK((info.relation == "<=" || info.relation == ">=" || info.relation == "finite"));
  }
}
