#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace lieconst::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Writes <out>/basis.json and prints a one-line summary.
int cmd_basis(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes <out>/<family>.<format> for each requested family (all if none).
int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the requested suites (symmetry, jacobi, cross, projector; all if
/// none), writes <out>/<suite>_report.{json,txt}. With a check file, compares
/// that file against freshly computed tensors.
int cmd_verify(const RunConfig& cfg, const std::optional<std::filesystem::path>& check_file,
               std::ostream& out, std::ostream& err);

}  // namespace lieconst::cli
