#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "lieconst/error.hpp"

using namespace lieconst;
using namespace lieconst::cli;

namespace {

void add_common(CLI::App& sub, ConfigLayer& flags, std::string& config_path,
                std::vector<std::string>& conformal) {
  sub.add_option("--manifold", flags.manifold, "torus, sphere or ctorus");
  sub.add_option("--band", flags.band, "max |k|^2 on the tori, l_max on the sphere");
  sub.add_option("--tol", flags.tolerance, "tolerance override");
  sub.add_option("--out", flags.out, "output directory");
  sub.add_option("--format", flags.format, "json or csv");
  sub.add_option("--config", config_path, "key = value config file");
  sub.add_option("--conformal", conformal, "conformal mode amplitude, e.g. c:1,0=0.1");
}

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBand:
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnknownMode:
    case ErrorCode::InvalidConformalFactor: return true;
    default: return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure constants of the Lie algebra of vector fields on surfaces"};
  app.require_subcommand(1);

  ConfigLayer flags;
  std::string config_path;
  std::vector<std::string> conformal;
  std::string check_file;

  auto* basis = app.add_subcommand("basis", "write the eigenbasis summary");
  auto* constants = app.add_subcommand("constants", "compute and export tensor families");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  for (auto* sub : {basis, constants, verify}) add_common(*sub, flags, config_path, conformal);
  constants->add_option("--family", flags.families, "family name (repeatable)");
  verify->add_option("--suite", flags.suites, "symmetry, jacobi, cross, projector or all");
  verify->add_option("--family", flags.families, "family name (repeatable)");
  verify->add_option("--check-file", check_file, "tensor file to compare against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    for (const auto& term : conformal) {
      const auto [label, amp] = parse_conformal_term(term);
      flags.conformal[label] = amp;
    }
    const ConfigLayer file = config_path.empty() ? ConfigLayer{} : load_config_file(config_path);
    const RunConfig cfg = resolve(flags, file);

    if (basis->parsed()) return cmd_basis(cfg, std::cout, std::cerr);
    if (constants->parsed()) return cmd_constants(cfg, std::cout, std::cerr);
    std::optional<std::filesystem::path> check;
    if (!check_file.empty()) check = check_file;
    return cmd_verify(cfg, check, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? kUsage : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
