#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lieconst/error.hpp"

namespace lieconst::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw Error(ErrorCode::InvalidConfig, "bad value for " + key + ": '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::pair<std::string, double> parse_conformal_term(const std::string& term) {
  const auto eq = term.rfind('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "conformal term '" + term + "' is not label=amplitude");
  }
  const std::string label = trim(term.substr(0, eq));
  parse_mode_label(label);  // validates
  return {label, parse_number<double>(trim(term.substr(eq + 1)), "conformal")};
}

ConfigLayer parse_config_text(const std::string& text) {
  ConfigLayer layer;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    // Mode labels contain no '=', so the first '=' separates key and value.
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  "config line " + std::to_string(lineno) + " is not key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "manifold") {
      layer.manifold = value;
    } else if (key == "band") {
      layer.band = parse_number<int>(value, key);
    } else if (key == "tol") {
      layer.tolerance = parse_number<double>(value, key);
    } else if (key == "out") {
      layer.out = value;
    } else if (key == "format") {
      layer.format = value;
    } else if (key == "family") {
      layer.families = split_list(value);
    } else if (key == "suite") {
      layer.suites = split_list(value);
    } else if (key.starts_with("conformal.")) {
      const std::string label = key.substr(10);
      parse_mode_label(label);
      layer.conformal[label] = parse_number<double>(value, key);
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    }
  }
  return layer;
}

ConfigLayer load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

RunConfig resolve(const ConfigLayer& flags, const ConfigLayer& file) {
  auto pick = [](const auto& a, const auto& b) { return a ? a : b; };
  RunConfig cfg;

  const std::string manifold = pick(flags.manifold, file.manifold).value_or("torus");
  const int band = pick(flags.band, file.band).value_or(2);
  if (band < 1) throw Error(ErrorCode::InvalidBand, "band must be >= 1, got " + std::to_string(band));

  cfg.spec.kind = parse_manifold(manifold);
  cfg.spec.band = band;
  if (cfg.spec.kind == ManifoldKind::ConformalTorus) {
    const auto& terms = !flags.conformal.empty() ? flags.conformal : file.conformal;
    if (terms.empty()) {
      cfg.spec.conformal_coefficients[TorusMode{1, 0, Parity::Cos}] = 0.1;
    } else {
      for (const auto& [label, amp] : terms) {
        const ModeId mode = parse_mode_label(label);
        if (!std::holds_alternative<TorusMode>(mode)) {
          throw Error(ErrorCode::InvalidConfig, "conformal mode " + label + " is not a torus mode");
        }
        cfg.spec.conformal_coefficients[std::get<TorusMode>(mode)] = amp;
      }
    }
  }

  cfg.tolerance = pick(flags.tolerance, file.tolerance);
  if (cfg.tolerance && !(*cfg.tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
  }
  cfg.out = pick(flags.out, file.out).value_or(".");
  cfg.format = parse_format(pick(flags.format, file.format).value_or("json"));
  cfg.families = !flags.families.empty() ? flags.families : file.families;
  cfg.suites = !flags.suites.empty() ? flags.suites : file.suites;
  return cfg;
}

}  // namespace lieconst::cli
