#pragma once

#include <filesystem>
#include <vector>

#include "fdyn/cli/scene_config.hpp"

namespace fdyn::cli {

struct RunResult {
  std::vector<std::filesystem::path> images;
  std::filesystem::path sidecar;
  /// Set for multi-frame commands.
  std::filesystem::path manifest;
  /// Command-specific statistics as written to the sidecar.
  Json stats;
};

/// Executes one scene and writes its images, sidecar "<output>.json" and,
/// for discrete-traj and flow-traj, "<output>_manifest.json".
RunResult run_scene(const SceneConfig& config);

/// Sidecar document: resolved config, statistics, wall time.
void write_metadata(const SceneConfig& config, const Json& stats, double wall_time_s,
                    const std::filesystem::path& path);

}  // namespace fdyn::cli
