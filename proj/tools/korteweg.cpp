#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "korteweg/config.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/simulation.hpp"
#include "korteweg/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int do_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  auto file = korteweg::ConfigFile::load(config_path);
  for (const auto& o : overrides) file.set_override(o);
  const korteweg::SimConfig cfg = korteweg::make_sim_config(file);

  const korteweg::RunReport r = korteweg::run(cfg);
  std::cout.precision(10);
  std::cout << "steps        " << r.steps << '\n'
            << "final_t      " << r.final_t << '\n'
            << "min_rho      " << r.min_rho << '\n'
            << "energy_drop  " << r.energy_drop << '\n';
  for (const auto& p : r.output_paths) std::cout << "wrote        " << p.string() << '\n';
  return kExitOk;
}

int do_verify(const std::string& suite, const korteweg::VerifyOptions& opts) {
  const korteweg::VerifyReport r = korteweg::verify(suite, opts);
  std::cout << "verify " << r.suite << '\n';
  for (const auto& line : r.lines) std::cout << "  " << line << '\n';
  for (const auto& [name, csv] : r.tables) {
    if (opts.csv_dir) {
      std::filesystem::create_directories(*opts.csv_dir);
      const auto path = *opts.csv_dir / name;
      std::ofstream(path) << csv;
      std::cout << "  wrote " << path.string() << '\n';
    } else {
      std::cout << "# " << name << '\n' << csv;
    }
  }
  std::cout << (r.passed ? "PASSED" : "FAILED") << '\n';
  return r.passed ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Korteweg / thin-film simulator with entropy-stable IMEX stepping"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run a simulation from an INI configuration");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--override,-o", overrides, "Override a configuration key (key=value)");

  std::string suite;
  korteweg::VerifyOptions opts;
  std::string laws;
  std::string csv_dir;
  auto* verify = app.add_subcommand("verify", "Run a numerical property battery");
  verify->add_option("suite", suite, "duality | symmetry | bohm | entropy | nusselt")
      ->required()
      ->check(CLI::IsMember({"duality", "symmetry", "bohm", "entropy", "nusselt"}));
  verify->add_option("--n", opts.n, "Grid size (base size for bohm)");
  verify->add_option("--steps", opts.steps, "Number of time steps");
  verify->add_option("--laws", laws, "Comma separated capillarity laws for bohm");
  verify->add_option("--seeds", opts.seeds, "Number of random seeds (entropy)");
  verify->add_option("--seed", opts.seed, "First random seed");
  verify->add_option("--csv-dir", csv_dir, "Directory for CSV tables (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return do_run(config_path, overrides);
    std::stringstream ss(laws);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) opts.laws.push_back(item);
    }
    if (!csv_dir.empty()) opts.csv_dir = csv_dir;
    return do_verify(suite, opts);
  } catch (const korteweg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const korteweg::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
