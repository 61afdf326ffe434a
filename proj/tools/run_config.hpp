#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lieconst/geometry.hpp"
#include "lieconst/io.hpp"

namespace lieconst::cli {

/// Settings gathered from one source (flags or a config file). Unset fields
/// fall through to the next source.
struct ConfigLayer {
  std::optional<std::string> manifold;
  std::optional<int> band;
  std::optional<double> tolerance;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::vector<std::string> families;
  std::vector<std::string> suites;
  std::map<std::string, double> conformal;  // mode label -> amplitude
};

struct RunConfig {
  ManifoldSpec spec = ManifoldSpec::flat_torus(2);
  std::optional<double> tolerance;
  std::filesystem::path out = ".";
  ExportFormat format = ExportFormat::Json;
  std::vector<std::string> families;
  std::vector<std::string> suites;
};

/// key = value lines; '#' starts a comment. Keys: manifold, band, tol, out,
/// format, family, suite (both comma-separated), conformal.<mode label>.
ConfigLayer parse_config_text(const std::string& text);
ConfigLayer load_config_file(const std::filesystem::path& path);

/// "c:1,0=0.1" -> ("c:1,0", 0.1).
std::pair<std::string, double> parse_conformal_term(const std::string& term);

/// Flags win over the file, the file wins over defaults. Throws
/// Error(InvalidConfig / InvalidBand) on invalid values.
RunConfig resolve(const ConfigLayer& flags, const ConfigLayer& file);

}  // namespace lieconst::cli
