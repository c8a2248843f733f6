#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "csf/flow.hpp"
#include "csf/slingshot.hpp"
#include "csf/verify.hpp"

namespace csf {

using Json = nlohmann::ordered_json;

/// t in fixed 6-decimal form: snap_0.012500.txt
std::string snapshot_name(double t);

/// Columns t, area, length, max_abs_kappa, isoperimetric_ratio,
/// vertex_count; one row per sample plus the final state when it differs.
void write_diagnostics_csv(std::ostream& os, const Trajectory& traj);

/// One curve file per sample in `dir` (created if missing). Returns the
/// file names relative to `dir`.
std::vector<std::string> write_snapshots(const std::filesystem::path& dir, const Trajectory& traj);

struct VerificationRow {
  std::size_t rect_id = 0;
  double t = 0.0;
  std::string check_name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows);

Json to_json(const FlowParams& p);
Json to_json(const OpenCurveSpec& spec);
Json to_json(const HypothesisReport& rep);
Json to_json(const ConvergenceReport& rep);
Json to_json(const std::vector<ConfinementRow>& rows);
Json to_json(const TailDecayReport& rep);
Json to_json(const BasicRectangle& rect);
Json to_json(const CoverReport& rep);
/// Scalars only; snapshots are referenced by the caller.
Json trajectory_summary(const Trajectory& traj);

/// Pretty-printed with a trailing newline; NaN and infinities become null.
void write_json(const std::filesystem::path& path, const Json& doc);
std::string dump_json(const Json& doc);

/// Writes `text` to `path`, throwing InvalidInput when the file cannot be
/// opened.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace csf
