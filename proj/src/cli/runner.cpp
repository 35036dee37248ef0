#include "fdyn/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "fdyn/analysis.hpp"
#include "fdyn/cli/image_io.hpp"
#include "fdyn/fji.hpp"
#include "fdyn/flow.hpp"
#include "fdyn/fmi.hpp"
#include "fdyn/verify.hpp"

namespace fdyn::cli {

namespace {

namespace fs = std::filesystem;

Json field_stats(const RasterField& field) {
  long long bounded = 0;
  long long escaped = 0;
  long long invalid = 0;
  int max_escape = 0;
  for (const auto& cell : field.cells()) {
    if (cell.is_bounded()) ++bounded;
    else if (cell.is_invalid()) ++invalid;
    else {
      ++escaped;
      max_escape = std::max(max_escape, cell.iteration);
    }
  }
  return Json{{"bounded_count", bounded},
              {"escaped_count", escaped},
              {"invalid_count", invalid},
              {"max_escape", max_escape}};
}

Json comparison_json(const MaskComparison& cmp) {
  Json j{{"jaccard", cmp.jaccard}};
  // JSON has no infinity; an empty side is reported as null.
  j["hausdorff_px"] = std::isfinite(cmp.hausdorff_px) ? Json(cmp.hausdorff_px) : Json(nullptr);
  return j;
}

Json dimension_json(const DimensionEstimate& d) {
  return Json{{"slope", d.slope}, {"r_squared", d.r_squared}, {"scales", d.scales_used}, {"counts", d.counts}};
}

std::string numbered(const std::string& stem, int index, int width) {
  std::string digits = std::to_string(index);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return stem + digits;
}

int digits_for(std::size_t count) {
  int d = 2;
  for (std::size_t n = 100; n <= count; n *= 10) ++d;
  return d;
}

class Emitter {
 public:
  explicit Emitter(const SceneConfig& cfg) : cfg_(cfg), prefix_(cfg.output) {}

  fs::path image(const RasterField& field, const std::string& suffix = "") {
    fs::path path = prefix_;
    path += suffix + ".ppm";
    write_image(field, PaletteRule::for_field(cfg_.palette, field), path);
    result.images.push_back(path);
    return path;
  }

  fs::path sidecar_path() const {
    fs::path p = prefix_;
    p += ".json";
    return p;
  }

  fs::path manifest_path() const {
    fs::path p = prefix_;
    p += "_manifest.json";
    return p;
  }

  RunResult result;

 private:
  const SceneConfig& cfg_;
  fs::path prefix_;
};

RasterField render_source(const SceneConfig& cfg, DimensionSource source) {
  const MapSpec map = cfg.map.value_or(MapSpec{});
  switch (source) {
    case DimensionSource::Julia: return render_julia(cfg.grid, *cfg.c, cfg.iter);
    case DimensionSource::Mandelbrot: return render_mandelbrot(cfg.grid, cfg.iter);
    case DimensionSource::FmiJulia:
      return fmi_julia(FmiScene{cfg.grid, *cfg.c, map, cfg.iter, FmiMode::JuliaFmi, cfg.domain});
    case DimensionSource::FmiMandelbrot:
      return fmi_mandelbrot(FmiScene{cfg.grid, {0, 0}, map, cfg.iter, FmiMode::MandelbrotFmi, cfg.domain});
  }
  throw std::logic_error("unknown source");
}

Json run_single(const SceneConfig& cfg, Emitter& out, DimensionSource source) {
  const RasterField field = render_source(cfg, source);
  out.image(field);
  return field_stats(field);
}

Json run_discrete(const SceneConfig& cfg, Emitter& out) {
  const auto frames = discrete_trajectory(*cfg.c, *cfg.map, cfg.k_max, cfg.grid, cfg.iter, cfg.supersample);
  const int width = digits_for(frames.pullback.size());
  Json manifest_frames = Json::array();
  Json stats_frames = Json::array();
  long long total = 0;
  for (int k = 0; k <= cfg.k_max; ++k) {
    const auto& pull = frames.pullback[static_cast<std::size_t>(k)];
    const auto& push = frames.pushforward[static_cast<std::size_t>(k)];
    const fs::path pull_file = out.image(pull, numbered("_pull_k", k, width));
    const fs::path push_file = out.image(push, numbered("_push_k", k, width));
    Json fs_pull = field_stats(pull);
    total += fs_pull["bounded_count"].get<long long>();
    manifest_frames.push_back(Json{{"k", k}, {"variant", "pullback"}, {"file", pull_file.filename().string()}});
    manifest_frames.push_back(Json{{"k", k}, {"variant", "pushforward"}, {"file", push_file.filename().string()}});

    Json entry{{"k", k}, {"pullback", fs_pull}, {"pushforward", field_stats(push)}};
    try {
      entry["consistency"] = comparison_json(compare_masks(pull, push));
    } catch (const UndefinedComparison&) {
      entry["consistency"] = nullptr;
    }
    stats_frames.push_back(std::move(entry));
  }
  write_text(out.manifest_path(),
             Json{{"command", "discrete-traj"}, {"frames", manifest_frames}}.dump(2) + "\n");
  out.result.manifest = out.manifest_path();
  return Json{{"bounded_count", total}, {"frames", stats_frames}};
}

Json run_flow(const SceneConfig& cfg, Emitter& out) {
  const int width = digits_for(cfg.t_list.size());
  Json manifest_frames = Json::array();
  Json stats_frames = Json::array();
  long long total = 0;
  for (std::size_t k = 0; k < cfg.t_list.size(); ++k) {
    const double t = cfg.t_list[k];
    const RasterField field = fmi_flow_julia(cfg.grid, *cfg.c, *cfg.flow, t, cfg.iter);
    const fs::path file = out.image(field, numbered("_t", static_cast<int>(k), width));
    Json st = field_stats(field);
    total += st["bounded_count"].get<long long>();
    manifest_frames.push_back(Json{{"index", k}, {"t", t}, {"file", file.filename().string()}});
    stats_frames.push_back(Json{{"index", k}, {"t", t}, {"stats", st}});
  }
  write_text(out.manifest_path(), Json{{"command", "flow-traj"}, {"frames", manifest_frames}}.dump(2) + "\n");
  out.result.manifest = out.manifest_path();
  return Json{{"bounded_count", total}, {"frames", stats_frames}};
}

Json run_dimension(const SceneConfig& cfg, Emitter& out) {
  RasterField field = render_source(cfg, cfg.source);
  if (cfg.boundary) field = extract_boundary(field);
  out.image(field);
  Json stats = field_stats(field);
  stats["dimension"] = dimension_json(box_counting_dimension(field, cfg.min_box, cfg.max_box));
  return stats;
}

Json run_verify(const SceneConfig& cfg, Emitter& out) {
  const GridSpec dst = cfg.dst_grid ? *cfg.dst_grid : image_window(*cfg.map, cfg.grid, cfg.grid.px_w(), cfg.grid.px_h());
  const FmtCheck check = verify_fmt(*cfg.c, *cfg.map, cfg.grid, dst, cfg.iter, cfg.supersample, cfg.pad_px, cfg.n_pairs);
  out.image(check.direct, "_forward");
  out.image(check.pulled, "_pullback");
  Json stats = comparison_json(check.comparison);
  stats["bounded_count"] = check.pulled.bounded_count();
  stats["forward_bounded_count"] = check.direct.bounded_count();
  stats["source_bounded_count"] = check.source.bounded_count();
  stats["dst_grid"] = to_json(dst);
  if (check.lipschitz)
    stats["bilipschitz"] = Json{{"l1", check.lipschitz->l1}, {"l2", check.lipschitz->l2},
                                {"valid_pairs", check.lipschitz->valid_pairs}};
  else
    stats["bilipschitz"] = nullptr;
  return stats;
}

Json run_zeno(const SceneConfig& cfg, Emitter& out) {
  const ZenoDiagram diagram = zeno_states(cfg.d0, cfg.t1, cfg.n, cfg.i0);
  const Mask mask = rasterize_zeno(diagram, 2 * cfg.t1, cfg.d0, cfg.grid.px_w(), cfg.grid.px_h());
  RasterField field(cfg.grid);
  for (int j = 0; j < field.px_h(); ++j)
    for (int i = 0; i < field.px_w(); ++i)
      field.at(i, j) = mask(j, i) ? OrbitResult::bounded(0) : OrbitResult::escaped(0, 0);
  out.image(field);

  Json stats{{"bounded_count", field.bounded_count()}, {"times", diagram.times}, {"heights", diagram.heights}};
  const int side = std::min(field.px_w(), field.px_h());
  try {
    stats["dimension"] = dimension_json(box_counting_dimension(mask, 2, side / 4));
  } catch (const std::exception&) {
    stats["dimension"] = nullptr;
  }
  return stats;
}

}  // namespace

void write_metadata(const SceneConfig& config, const Json& stats, double wall_time_s, const fs::path& path) {
  Json doc;
  doc["config"] = to_json(config);
  doc["bounded_count"] = stats.contains("bounded_count") ? stats["bounded_count"] : Json(nullptr);
  doc["stats"] = stats;
  doc["wall_time_s"] = wall_time_s;
  write_text(path, doc.dump(2) + "\n");
}

RunResult run_scene(const SceneConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Emitter out(cfg);
  Json stats;
  switch (cfg.command) {
    case Command::Julia: stats = run_single(cfg, out, DimensionSource::Julia); break;
    case Command::Mandelbrot: stats = run_single(cfg, out, DimensionSource::Mandelbrot); break;
    case Command::FmiJulia: stats = run_single(cfg, out, DimensionSource::FmiJulia); break;
    case Command::FmiMandelbrot: stats = run_single(cfg, out, DimensionSource::FmiMandelbrot); break;
    case Command::DiscreteTraj: stats = run_discrete(cfg, out); break;
    case Command::FlowTraj: stats = run_flow(cfg, out); break;
    case Command::Dimension: stats = run_dimension(cfg, out); break;
    case Command::VerifyFmt: stats = run_verify(cfg, out); break;
    case Command::Zeno: stats = run_zeno(cfg, out); break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.result.sidecar = out.sidecar_path();
  out.result.stats = stats;
  write_metadata(cfg, stats, wall, out.result.sidecar);
  return std::move(out.result);
}

}  // namespace fdyn::cli
