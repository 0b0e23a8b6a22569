#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pwe/errors.hpp"
#include "pwe/scenario.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& method_override,
                const std::vector<std::string>& overrides) {
  std::ifstream f(config_path);
  if (!f) {
    std::fprintf(stderr, "error: cannot open config file '%s'\n", config_path.c_str());
    return 1;
  }
  std::stringstream buf;
  buf << f.rdbuf();

  std::vector<std::pair<std::string, std::string>> kv;
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --override expects key=value, got '%s'\n", o.c_str());
      return 1;
    }
    kv.emplace_back(o.substr(0, eq), o.substr(eq + 1));
  }
  if (!method_override.empty()) kv.emplace_back("method", method_override);

  try {
    const pwe::ScenarioConfig cfg = pwe::parse_config(buf.str(), kv);
    const pwe::RunManifest manifest = pwe::run_scenario(cfg, out_dir);
    std::printf("run '%s' finished in %.2f s, %zu output file(s)\n", cfg.name.c_str(),
                manifest.wall_seconds, manifest.entries.size());
    for (const auto& e : manifest.entries)
      std::printf("  %s  (%llu bytes)\n", e.path.c_str(),
                  static_cast<unsigned long long>(e.bytes));
    return 0;
  } catch (const pwe::ParseError& e) {
    std::fprintf(stderr, "config parse error: %s\n", e.what());
    return 1;
  } catch (const pwe::ValidationError& e) {
    std::fprintf(stderr, "config validation error: %s\n", e.what());
    return 1;
  } catch (const pwe::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pwe - one-way guided wave propagation (spectral and FD split-step Pade)"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", method;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory (default: .)");
  run->add_option("--method", method, "override the propagation method")
      ->check(CLI::IsMember({"sssp", "fdssp", "modes"}));
  run->add_option("--override", overrides, "override a config key (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return run_command(config_path, out_dir, method, overrides);
}
