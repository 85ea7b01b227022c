#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcatf/gabor.hpp"
#include "lcatf/spectral.hpp"

namespace lcatf::io {

using nlohmann::json;

/// Shortest decimal that round-trips; "inf" / "-inf" / "nan" for the
/// non-finite cases.
std::string format_double(double v);

json to_json(const Group& g);
/// {"factors": [...], "subgroup_divisors": [...]}. Throws ConfigInvalid on
/// malformed input and the group errors on invalid groups.
Group group_from_json(const json& j);

/// {"group": ..., "domain": "time" | "frequency", "values": [[re, im], ...]}.
json to_json(const Signal& s);
Signal signal_from_json(const json& j);

/// Rows (x, xi, re, im, abs).
json to_json(const PhaseFunction& f);
/// {"group": ..., "entries": [{"x": i, "xi": j, "value": [re, im]}, ...]}.
/// Missing entries are zero.
PhaseFunction symbol_from_json(const json& j);

/// {"group": ..., "rows": n, "entries": [[re, im], ...]} row-major.
json to_json(const OperatorMatrix& m);

json frame_report(const FrameBounds& bounds, double redundancy, const Signal& dual);
json decay_report(const DecayReport& report);

struct NormSweepRow {
  double p = 0.0;
  double q = 0.0;
  std::string weight_id;
  std::string window_id;
  double value = 0.0;
};

std::string signal_csv(const Signal& s);
std::string phase_csv(const PhaseFunction& f);
std::string operator_csv(const OperatorMatrix& m);
std::string norm_sweep_csv(const std::vector<NormSweepRow>& rows);

/// Writes text verbatim, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace lcatf::io
