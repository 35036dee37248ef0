#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdyn/cli/runner.hpp"
#include "fdyn/cli/scene_config.hpp"
#include "fdyn/parallel.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Escape-time renderer for Julia, Mandelbrot and mapped fractal sets"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  unsigned threads = 0;
  CLI::App* run = app.add_subcommand("run", "Render one scene described by a JSON config");
  run->add_option("--config", config_path, "Scene config file")->required();
  run->add_option("--override", overrides, "Replace a config value, e.g. grid.px_w=1024 (repeatable)");
  run->add_option("--threads", threads, "Maximum worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  fdyn::cli::SceneConfig config;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config " << config_path << "\n";
      return kConfigError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    config = fdyn::cli::parse_config(text.str(), overrides);
  } catch (const fdyn::cli::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kConfigError;
  }

  try {
    fdyn::set_max_threads(threads);
    const auto result = fdyn::cli::run_scene(config);
    for (const auto& image : result.images) std::cout << image.string() << "\n";
    std::cout << result.sidecar.string() << "\n";
    if (!result.manifest.empty()) std::cout << result.manifest.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
