// qrad command-line front end.
//
//   qrad run <config> [--out DIR] [--workers N]   run a scenario sweep
//   qrad verify [suite] [--json]                  run self-verification
//   qrad modes <lx> <ly> <lz> [--count N]         list cavity eigenmodes
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 verification failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrad/cavity.hpp"
#include "qrad/config.hpp"
#include "qrad/scenario.hpp"
#include "qrad/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int workers) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return kExitValidation;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto parsed = qrad::config::parse_scenario(buffer.str());
  if (!parsed.ok()) {
    std::cerr << "error: invalid configuration\n" << parsed.error_text();
    return kExitValidation;
  }
  try {
    std::filesystem::create_directories(out_dir);
    const auto records = qrad::scenario::run_sweep(*parsed.config, workers);
    qrad::scenario::write_outputs(records, out_dir);
    for (const auto& rec : records) {
      std::cout << rec.scenario << " T=" << rec.temperature << "  rows="
                << rec.rows.size();
      for (const auto& [k, v] : rec.scalars) std::cout << "  " << k << "=" << v;
      std::cout << "\n";
      for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";
    }
    std::cout << "wrote results to " << out_dir << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, bool json) {
  std::vector<qrad::verify::Check> checks;
  try {
    checks = qrad::verify::run(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  std::cout << (json ? qrad::verify::to_json(checks)
                     : qrad::verify::to_text(checks));
  return qrad::verify::all_pass(checks) ? kExitOk : kExitVerification;
}

int cmd_modes(double lx, double ly, double lz, int count) {
  try {
    qrad::cavity::BoxGeometry geom{{lx, ly, lz}};
    const auto modes = qrad::cavity::box_modes(geom, count);
    std::cout << "n1 n2 n3 omega\n";
    for (const auto& m : modes)
      std::cout << m.index[0] << ' ' << m.index[1] << ' ' << m.index[2] << ' '
                << m.omega << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum radiation from vacuum and thermal fluctuations"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite = "all";
  int workers = 0, count = 10;
  bool json = false;
  double lx = 1.0, ly = 1.0, lz = 1.0;

  auto* run = app.add_subcommand("run", "run a scenario configuration");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers,
                  "worker threads (default: QRAD_WORKERS or hardware)");

  auto* verify = app.add_subcommand("verify", "run self-verification checks");
  verify->add_option("suite", suite,
                     "all | mirror | cavity | dielectric | frw | response | "
                     "special");
  verify->add_flag("--json", json, "machine-readable output");

  auto* modes = app.add_subcommand("modes", "list cavity eigenmodes");
  modes->add_option("lx", lx, "edge length x")->required();
  modes->add_option("ly", ly, "edge length y")->required();
  modes->add_option("lz", lz, "edge length z")->required();
  modes->add_option("--count", count, "number of modes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir, workers);
  if (verify->parsed()) return cmd_verify(suite, json);
  return cmd_modes(lx, ly, lz, count);
}
