#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fdyn/complex_core.hpp"
#include "fdyn/fji.hpp"
#include "fdyn/flow.hpp"
#include "fdyn/maps.hpp"

namespace fdyn::cli {

using Json = nlohmann::ordered_json;

enum class Command { Julia, Mandelbrot, FmiJulia, FmiMandelbrot, DiscreteTraj, FlowTraj, Dimension, VerifyFmt, Zeno };
enum class PaletteKind { Grayscale, Classic, Mono };
enum class DimensionSource { Julia, Mandelbrot, FmiJulia, FmiMandelbrot };

std::string_view command_name(Command c);
std::string_view palette_name(PaletteKind p);
std::string_view source_name(DimensionSource s);

struct SceneConfig {
  Command command = Command::Julia;
  GridSpec grid{{0, 0}, 3, 3, 512, 512};
  IterParams iter;
  PaletteKind palette = PaletteKind::Classic;
  std::string output;

  std::optional<ComplexPoint> c;
  std::optional<MapSpec> map;
  std::optional<GridSpec> domain;

  // discrete-traj
  int k_max = 0;
  int supersample = 3;

  // flow-traj
  std::optional<FlowSpec> flow;
  std::vector<double> t_list;

  // dimension
  DimensionSource source = DimensionSource::Julia;
  bool boundary = true;
  int min_box = 2;
  int max_box = 0;

  // verify-fmt
  std::optional<GridSpec> dst_grid;
  int pad_px = 8;
  long n_pairs = 10000;

  // zeno
  double d0 = 1;
  double t1 = 1;
  int n = 1;
  int i0 = 0;

  friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownKey, MissingField, OutOfRange, WrongType, Override };

  ConfigError(Kind kind, std::string field, int line, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  /// Dotted path of the offending key ("" for document-level errors).
  const std::string& field() const noexcept { return field_; }
  /// 1-based line in the config text; 0 when the value came from an override.
  int line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::string field_;
  int line_;
};

/// Parses and validates a scene config. Overrides are "dotted.key=value"
/// strings applied to the document before validation; values are read as JSON
/// when they parse as JSON and as plain strings otherwise.
SceneConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Fully resolved config, including defaulted fields.
Json to_json(const SceneConfig& config);
std::string serialize(const SceneConfig& config);

Json to_json(const MapSpec& map);
Json to_json(const FlowSpec& flow);
Json to_json(const GridSpec& grid);

}  // namespace fdyn::cli
