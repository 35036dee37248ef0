#include "fdyn/cli/scene_config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <memory>
#include <set>

namespace fdyn::cli {

namespace {

using Path = std::vector<std::string>;

std::string dotted(const Path& path) {
  std::string out;
  for (const auto& p : path) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Julia, "julia"},
    {Command::Mandelbrot, "mandelbrot"},
    {Command::FmiJulia, "fmi-julia"},
    {Command::FmiMandelbrot, "fmi-mandelbrot"},
    {Command::DiscreteTraj, "discrete-traj"},
    {Command::FlowTraj, "flow-traj"},
    {Command::Dimension, "dimension"},
    {Command::VerifyFmt, "verify-fmt"},
    {Command::Zeno, "zeno"},
};

constexpr std::pair<PaletteKind, std::string_view> kPalettes[] = {
    {PaletteKind::Grayscale, "grayscale"},
    {PaletteKind::Classic, "classic"},
    {PaletteKind::Mono, "mono"},
};

constexpr std::pair<DimensionSource, std::string_view> kSources[] = {
    {DimensionSource::Julia, "julia"},
    {DimensionSource::Mandelbrot, "mandelbrot"},
    {DimensionSource::FmiJulia, "fmi-julia"},
    {DimensionSource::FmiMandelbrot, "fmi-mandelbrot"},
};

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

template <typename E, std::size_t N>
std::string choices(const std::pair<E, std::string_view> (&table)[N]) {
  std::string out;
  for (const auto& entry : table) {
    if (!out.empty()) out += ", ";
    out += entry.second;
  }
  return out;
}

// Walks the config text along a key path; the line of the deepest key found.
int locate(std::string_view text, const Path& path) {
  std::size_t pos = 0;
  bool any = false;
  for (const auto& key : path) {
    const std::string quoted = "\"" + key + "\"";
    std::size_t found = pos;
    bool hit = false;
    while ((found = text.find(quoted, found)) != std::string_view::npos) {
      std::size_t after = found + quoted.size();
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after < text.size() && text[after] == ':') {
        hit = true;
        break;
      }
      found += quoted.size();
    }
    if (!hit) break;
    pos = found;
    any = true;
  }
  if (!any) return 1;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

int line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class Reader {
 public:
  Reader(std::string_view text, std::vector<Path> overridden) : text_(text), overridden_(std::move(overridden)) {}

  [[noreturn]] void fail(ConfigError::Kind kind, const Path& path, const std::string& what) const {
    const std::string field = dotted(path);
    for (const auto& o : overridden_) {
      if (o.size() <= path.size() && std::equal(o.begin(), o.end(), path.begin()))
        throw ConfigError(kind, field, 0, "override " + dotted(o) + ": " + what);
    }
    const int line = locate(text_, path);
    throw ConfigError(kind, field, line, "config line " + std::to_string(line) + ": " + what);
  }

  void expect_object(const Json& j, const Path& path) const {
    if (!j.is_object()) fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be an object");
  }

  void allow_only(const Json& j, const Path& path, std::initializer_list<std::string_view> keys) const {
    expect_object(j, path);
    for (const auto& item : j.items()) {
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        Path p = path;
        p.push_back(item.key());
        fail(ConfigError::Kind::UnknownKey, p, "unknown key \"" + dotted(p) + "\"");
      }
    }
  }

  const Json& require(const Json& j, const Path& path, const std::string& key) const {
    if (!j.contains(key)) {
      Path p = path;
      p.push_back(key);
      const std::string where = path.empty() ? "" : " in \"" + dotted(path) + "\"";
      // Report the line of the enclosing object.
      const Path parent = path;
      for (const auto& o : overridden_)
        if (o == p) fail(ConfigError::Kind::MissingField, p, "missing required field \"" + key + "\"");
      const int line = locate(text_, parent);
      throw ConfigError(ConfigError::Kind::MissingField, dotted(p), line,
                        "config line " + std::to_string(line) + ": missing required field \"" + key + "\"" + where);
    }
    return j.at(key);
  }

  double real(const Json& j, const Path& path) const {
    if (!j.is_number()) fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" must be finite");
    return v;
  }

  long long integer(const Json& j, const Path& path) const {
    if (!j.is_number_integer())
      fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" is too large");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" is out of range");
    return v;
  }

  int int_at_least(const Json& j, const Path& path, long long lo) const {
    const auto v = integer(j, path);
    if (v < lo)
      fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" must be >= " + std::to_string(lo));
    return static_cast<int>(v);
  }

  double positive(const Json& j, const Path& path) const {
    const double v = real(j, path);
    if (!(v > 0)) fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" must be > 0");
    return v;
  }

  bool boolean(const Json& j, const Path& path) const {
    if (!j.is_boolean()) fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be true or false");
    return j.get<bool>();
  }

  std::string string(const Json& j, const Path& path) const {
    if (!j.is_string()) fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be a string");
    return j.get<std::string>();
  }

  ComplexPoint complex(const Json& j, const Path& path) const {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      fail(ConfigError::Kind::WrongType, path, "\"" + dotted(path) + "\" must be a complex number [re, im]");
    const ComplexPoint z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z)) fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" must be finite");
    return z;
  }

  template <typename E, std::size_t N>
  E choice(const Json& j, const Path& path, const std::pair<E, std::string_view> (&table)[N]) const {
    const std::string s = string(j, path);
    for (const auto& [v, name] : table)
      if (name == s) return v;
    fail(ConfigError::Kind::OutOfRange, path,
         "\"" + dotted(path) + "\" has unknown value \"" + s + "\" (expected one of: " + choices(table) + ")");
  }

  GridSpec grid(const Json& j, const Path& path, const GridSpec& defaults) const {
    allow_only(j, path, {"center", "width", "height", "px_w", "px_h"});
    auto sub = [&](const char* key) {
      Path p = path;
      p.push_back(key);
      return p;
    };
    const ComplexPoint center = j.contains("center") ? complex(j["center"], sub("center")) : defaults.center();
    const double width = j.contains("width") ? positive(j["width"], sub("width")) : defaults.width();
    const double height = j.contains("height") ? positive(j["height"], sub("height")) : defaults.height();
    const int px_w = j.contains("px_w") ? int_at_least(j["px_w"], sub("px_w"), 1) : defaults.px_w();
    const int px_h = j.contains("px_h") ? int_at_least(j["px_h"], sub("px_h"), 1) : defaults.px_h();
    return GridSpec(center, width, height, px_w, px_h);
  }

  flows::ClosedForm<double> closed_flow(const Json& j, const Path& path) const {
    const FlowSpec f = flow(j, path);
    if (const auto* l = std::get_if<flows::Linear<double>>(&f)) return *l;
    if (const auto* lc = std::get_if<flows::LimitCycle>(&f)) return *lc;
    if (const auto* pf = std::get_if<flows::PeriodicForced<double>>(&f)) return *pf;
    fail(ConfigError::Kind::OutOfRange, path, "\"" + dotted(path) + "\" must be a closed-form flow");
  }

  FlowSpec flow(const Json& j, const Path& path) const {
    expect_object(j, path);
    Path kp = path;
    kp.push_back("kind");
    const std::string kind = string(require(j, path, "kind"), kp);
    auto sub = [&](const char* key) {
      Path p = path;
      p.push_back(key);
      return p;
    };
    if (kind == "linear") {
      allow_only(j, path, {"kind", "lambda"});
      flows::Linear<double> f;
      if (j.contains("lambda")) f.lambda = complex(j["lambda"], sub("lambda"));
      return f;
    }
    if (kind == "limit_cycle") {
      allow_only(j, path, {"kind"});
      return flows::LimitCycle{};
    }
    if (kind == "periodic_forced") {
      allow_only(j, path, {"kind", "a"});
      flows::PeriodicForced<double> f;
      if (j.contains("a")) f.a = real(j["a"], sub("a"));
      return f;
    }
    if (kind == "rk4") {
      allow_only(j, path, {"kind", "base", "dt"});
      flows::NumericRK4<double> f;
      f.base = closed_flow(require(j, path, "base"), sub("base"));
      if (j.contains("dt")) f.dt = positive(j["dt"], sub("dt"));
      return f;
    }
    fail(ConfigError::Kind::OutOfRange, kp,
         "unknown flow kind \"" + kind + "\" (expected one of: linear, limit_cycle, periodic_forced, rk4)");
  }

  MapSpec map(const Json& j, const Path& path) const {
    expect_object(j, path);
    Path kp = path;
    kp.push_back("kind");
    const std::string kind = string(require(j, path, "kind"), kp);
    auto sub = [&](const char* key) {
      Path p = path;
      p.push_back(key);
      return p;
    };
    if (j.contains("branch") && string(j["branch"], sub("branch")) != "principal")
      fail(ConfigError::Kind::OutOfRange, sub("branch"), "only the \"principal\" branch is supported");

    MapSpec m;
    if (kind == "identity") {
      allow_only(j, path, {"kind", "branch"});
      m = maps::Identity{};
    } else if (kind == "affine") {
      allow_only(j, path, {"kind", "branch", "a", "b"});
      maps::Affine<double> a;
      a.a = complex(require(j, path, "a"), sub("a"));
      if (a.a == ComplexPoint(0, 0)) fail(ConfigError::Kind::OutOfRange, sub("a"), "affine \"a\" must be non-zero");
      if (j.contains("b")) a.b = complex(j["b"], sub("b"));
      m = a;
    } else if (kind == "arccos_reciprocal") {
      allow_only(j, path, {"kind", "branch"});
      m = maps::ArccosReciprocal{};
    } else if (kind == "arcsin_root5") {
      allow_only(j, path, {"kind", "branch"});
      m = maps::ArcsinRoot5{};
    } else if (kind == "reciprocal_sqrt") {
      allow_only(j, path, {"kind", "branch"});
      m = maps::ReciprocalSqrt{};
    } else if (kind == "quadratic_param") {
      allow_only(j, path, {"kind", "branch", "a", "b", "c"});
      maps::QuadraticParam<double> q;
      q.a = real(require(j, path, "a"), sub("a"));
      q.b = complex(require(j, path, "b"), sub("b"));
      q.c = complex(require(j, path, "c"), sub("c"));
      m = q;
    } else if (kind == "flow") {
      allow_only(j, path, {"kind", "branch", "flow", "t"});
      maps::FlowMap<double> f;
      f.flow = flow(require(j, path, "flow"), sub("flow"));
      f.t = real(require(j, path, "t"), sub("t"));
      m = f;
    } else if (kind == "iterated") {
      allow_only(j, path, {"kind", "branch", "base", "count"});
      const MapSpec base = map(require(j, path, "base"), sub("base"));
      const int count = int_at_least(require(j, path, "count"), sub("count"), 0);
      m = iterate_map(base, count);
    } else {
      fail(ConfigError::Kind::OutOfRange, kp,
           "unknown map kind \"" + kind +
               "\" (expected one of: identity, affine, arccos_reciprocal, arcsin_root5, reciprocal_sqrt, "
               "quadratic_param, flow, iterated)");
    }
    try {
      validate_map(m);
    } catch (const std::invalid_argument& e) {
      fail(ConfigError::Kind::OutOfRange, path, e.what());
    }
    return m;
  }

 private:
  std::string_view text_;
  std::vector<Path> overridden_;
};

Path split_key(const std::string& key) {
  Path out;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    out.push_back(key.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return out;
}

Path apply_override(Json& doc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError(ConfigError::Kind::Override, spec, 0, "override \"" + spec + "\" is not of the form key=value");
  const std::string key = spec.substr(0, eq);
  const std::string raw = spec.substr(eq + 1);
  const Path path = split_key(key);
  for (const auto& part : path)
    if (part.empty())
      throw ConfigError(ConfigError::Kind::Override, key, 0, "override key \"" + key + "\" has an empty component");

  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  Json* node = &doc;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!node->contains(path[k])) (*node)[path[k]] = Json::object();
    node = &(*node)[path[k]];
    if (!node->is_object())
      throw ConfigError(ConfigError::Kind::Override, key, 0,
                        "override \"" + key + "\": \"" + path[k] + "\" is not an object");
  }
  (*node)[path.back()] = std::move(value);
  return path;
}

GridSpec default_grid(Command command) {
  if (command == Command::Mandelbrot || command == Command::FmiMandelbrot) return GridSpec({-0.5, 0}, 3, 3, 512, 512);
  return GridSpec({0, 0}, 3, 3, 512, 512);
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string field, int line, const std::string& message)
    : std::runtime_error(message), kind_(kind), field_(std::move(field)), line_(line) {}

std::string_view command_name(Command c) { return name_of(kCommands, c); }
std::string_view palette_name(PaletteKind p) { return name_of(kPalettes, p); }
std::string_view source_name(DimensionSource s) { return name_of(kSources, s); }

SceneConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const int line = line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(ConfigError::Kind::Syntax, "", line, "config line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(ConfigError::Kind::Syntax, "", 1, "config line 1: top level must be an object");

  std::vector<Path> overridden;
  for (const auto& o : overrides) overridden.push_back(apply_override(doc, o));

  const Reader r(text, overridden);
  auto at = [](const char* key) { return Path{key}; };

  SceneConfig cfg;
  cfg.command = r.choice(r.require(doc, {}, "command"), at("command"), kCommands);

  std::vector<std::string_view> allowed = {"command", "grid", "palette", "output"};
  const auto add = [&](std::initializer_list<std::string_view> keys) { allowed.insert(allowed.end(), keys); };
  switch (cfg.command) {
    case Command::Julia: add({"iter", "c"}); break;
    case Command::Mandelbrot: add({"iter"}); break;
    case Command::FmiJulia: add({"iter", "c", "map", "domain"}); break;
    case Command::FmiMandelbrot: add({"iter", "map", "domain"}); break;
    case Command::DiscreteTraj: add({"iter", "c", "map", "k_max", "supersample"}); break;
    case Command::FlowTraj: add({"iter", "c", "flow", "t", "t_list"}); break;
    case Command::Dimension: add({"iter", "source", "c", "map", "domain", "boundary", "min_box", "max_box"}); break;
    case Command::VerifyFmt: add({"iter", "c", "map", "dst_grid", "supersample", "pad_px", "n_pairs"}); break;
    case Command::Zeno: add({"d0", "t1", "n", "i0"}); break;
  }
  for (const auto& item : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      r.fail(ConfigError::Kind::UnknownKey, at(item.key().c_str()),
             "unknown key \"" + item.key() + "\" for command \"" + std::string(command_name(cfg.command)) + "\"");
  }

  cfg.output = doc.contains("output") ? r.string(doc["output"], at("output")) : std::string(command_name(cfg.command));
  if (cfg.output.empty()) r.fail(ConfigError::Kind::OutOfRange, at("output"), "\"output\" must not be empty");
  if (doc.contains("palette")) cfg.palette = r.choice(doc["palette"], at("palette"), kPalettes);

  if (doc.contains("iter")) {
    const Json& it = doc["iter"];
    r.allow_only(it, at("iter"), {"max_iter", "escape_radius"});
    if (it.contains("max_iter")) cfg.iter.max_iter = r.int_at_least(it["max_iter"], {"iter", "max_iter"}, 1);
    if (it.contains("escape_radius")) cfg.iter.escape_radius = r.positive(it["escape_radius"], {"iter", "escape_radius"});
  }

  if (cfg.command == Command::Zeno) {
    cfg.d0 = r.positive(r.require(doc, {}, "d0"), at("d0"));
    cfg.t1 = r.positive(r.require(doc, {}, "t1"), at("t1"));
    cfg.n = r.int_at_least(r.require(doc, {}, "n"), at("n"), 1);
    if (doc.contains("i0")) cfg.i0 = r.int_at_least(doc["i0"], at("i0"), 0);
    int px_w = 512;
    int px_h = 256;
    if (doc.contains("grid")) {
      const Json& g = doc["grid"];
      r.allow_only(g, at("grid"), {"px_w", "px_h"});
      if (g.contains("px_w")) px_w = r.int_at_least(g["px_w"], {"grid", "px_w"}, 1);
      if (g.contains("px_h")) px_h = r.int_at_least(g["px_h"], {"grid", "px_h"}, 1);
    }
    cfg.grid = GridSpec::from_bounds(0, 2 * cfg.t1, 0, cfg.d0, px_w, px_h);
    return cfg;
  }

  cfg.grid = doc.contains("grid") ? r.grid(doc["grid"], at("grid"), default_grid(cfg.command)) : default_grid(cfg.command);

  bool needs_c = false;
  bool needs_map = false;
  switch (cfg.command) {
    case Command::Julia:
    case Command::FlowTraj:
      needs_c = true;
      break;
    case Command::FmiJulia:
    case Command::DiscreteTraj:
    case Command::VerifyFmt:
      needs_c = needs_map = true;
      break;
    case Command::FmiMandelbrot:
      needs_map = true;
      break;
    case Command::Dimension:
      if (doc.contains("source")) cfg.source = r.choice(doc["source"], at("source"), kSources);
      needs_c = cfg.source == DimensionSource::Julia || cfg.source == DimensionSource::FmiJulia;
      needs_map = cfg.source == DimensionSource::FmiJulia || cfg.source == DimensionSource::FmiMandelbrot;
      break;
    default:
      break;
  }
  if (needs_c) cfg.c = r.complex(r.require(doc, {}, "c"), at("c"));
  else if (doc.contains("c")) r.fail(ConfigError::Kind::UnknownKey, at("c"), "\"c\" is not used by this source");
  if (needs_map) cfg.map = r.map(r.require(doc, {}, "map"), at("map"));
  else if (doc.contains("map")) r.fail(ConfigError::Kind::UnknownKey, at("map"), "\"map\" is not used by this source");

  if (cfg.c) {
    try {
      cfg.iter.validate_for(*cfg.c);
    } catch (const std::invalid_argument& e) {
      r.fail(ConfigError::Kind::OutOfRange, at("iter"), e.what());
    }
  } else if (cfg.iter.escape_radius < 2) {
    r.fail(ConfigError::Kind::OutOfRange, {"iter", "escape_radius"}, "escape_radius must be >= 2 for Mandelbrot renders");
  }

  if (doc.contains("domain")) {
    if (cfg.command == Command::Dimension && !needs_map)
      r.fail(ConfigError::Kind::UnknownKey, at("domain"), "\"domain\" is only used with fmi sources");
    cfg.domain = r.grid(doc["domain"], at("domain"), cfg.grid);
  }
  if (doc.contains("supersample")) cfg.supersample = r.int_at_least(doc["supersample"], at("supersample"), 1);

  switch (cfg.command) {
    case Command::DiscreteTraj:
      cfg.k_max = r.int_at_least(r.require(doc, {}, "k_max"), at("k_max"), 0);
      break;
    case Command::FlowTraj: {
      cfg.flow = r.flow(r.require(doc, {}, "flow"), at("flow"));
      if (doc.contains("t") && doc.contains("t_list"))
        r.fail(ConfigError::Kind::OutOfRange, at("t_list"), "give either \"t\" or \"t_list\", not both");
      if (doc.contains("t")) {
        cfg.t_list = {r.real(doc["t"], at("t"))};
      } else {
        const Json& tl = r.require(doc, {}, "t_list");
        if (!tl.is_array() || tl.empty())
          r.fail(ConfigError::Kind::WrongType, at("t_list"), "\"t_list\" must be a non-empty array of numbers");
        for (const auto& t : tl) cfg.t_list.push_back(r.real(t, at("t_list")));
      }
      break;
    }
    case Command::Dimension: {
      if (doc.contains("boundary")) cfg.boundary = r.boolean(doc["boundary"], at("boundary"));
      const int side = std::min(cfg.grid.px_w(), cfg.grid.px_h());
      if (doc.contains("min_box")) cfg.min_box = r.int_at_least(doc["min_box"], at("min_box"), 2);
      cfg.max_box = doc.contains("max_box") ? r.int_at_least(doc["max_box"], at("max_box"), 2) : side / 4;
      if (cfg.min_box >= cfg.max_box || cfg.max_box > side / 4)
        r.fail(ConfigError::Kind::OutOfRange, at(doc.contains("max_box") ? "max_box" : "grid"),
               "box sizes need 2 <= min_box < max_box <= min(px_w, px_h)/4 (" + std::to_string(side / 4) + ")");
      break;
    }
    case Command::VerifyFmt:
      if (doc.contains("dst_grid")) cfg.dst_grid = r.grid(doc["dst_grid"], at("dst_grid"), cfg.grid);
      if (doc.contains("pad_px")) cfg.pad_px = r.int_at_least(doc["pad_px"], at("pad_px"), 0);
      if (doc.contains("n_pairs")) cfg.n_pairs = r.int_at_least(doc["n_pairs"], at("n_pairs"), 100);
      break;
    default:
      break;
  }
  return cfg;
}

Json to_json(const GridSpec& grid) {
  return Json{{"center", {grid.center().real(), grid.center().imag()}},
              {"width", grid.width()},
              {"height", grid.height()},
              {"px_w", grid.px_w()},
              {"px_h", grid.px_h()}};
}

namespace {

Json complex_json(const ComplexPoint& z) { return Json::array({z.real(), z.imag()}); }

template <typename Closed>
Json closed_json(const Closed& f) {
  if (const auto* l = std::get_if<flows::Linear<double>>(&f))
    return Json{{"kind", "linear"}, {"lambda", complex_json(l->lambda)}};
  if (std::holds_alternative<flows::LimitCycle>(f)) return Json{{"kind", "limit_cycle"}};
  const auto& pf = std::get<flows::PeriodicForced<double>>(f);
  return Json{{"kind", "periodic_forced"}, {"a", pf.a}};
}

}  // namespace

Json to_json(const FlowSpec& flow) {
  if (const auto* rk = std::get_if<flows::NumericRK4<double>>(&flow))
    return Json{{"kind", "rk4"}, {"base", closed_json(rk->base)}, {"dt", rk->dt}};
  return closed_json(flow);
}

Json to_json(const MapSpec& map) {
  Json j{{"kind", std::string(kind_name(map))}};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, maps::Affine<double>>) {
          j["a"] = complex_json(k.a);
          j["b"] = complex_json(k.b);
        } else if constexpr (std::is_same_v<K, maps::QuadraticParam<double>>) {
          j["a"] = k.a;
          j["b"] = complex_json(k.b);
          j["c"] = complex_json(k.c);
        } else if constexpr (std::is_same_v<K, maps::FlowMap<double>>) {
          j["flow"] = to_json(k.flow);
          j["t"] = k.t;
        } else if constexpr (std::is_same_v<K, maps::Iterated<double>>) {
          j["base"] = to_json(*k.base);
          j["count"] = k.count;
        }
      },
      map.kind);
  return j;
}

Json to_json(const SceneConfig& cfg) {
  Json j;
  j["command"] = std::string(command_name(cfg.command));
  if (cfg.command == Command::Zeno) {
    j["grid"] = Json{{"px_w", cfg.grid.px_w()}, {"px_h", cfg.grid.px_h()}};
    j["d0"] = cfg.d0;
    j["t1"] = cfg.t1;
    j["n"] = cfg.n;
    j["i0"] = cfg.i0;
  } else {
    j["grid"] = to_json(cfg.grid);
    j["iter"] = Json{{"max_iter", cfg.iter.max_iter}, {"escape_radius", cfg.iter.escape_radius}};
    if (cfg.command == Command::Dimension) j["source"] = std::string(source_name(cfg.source));
    if (cfg.c) j["c"] = complex_json(*cfg.c);
    if (cfg.map) j["map"] = to_json(*cfg.map);
    if (cfg.domain) j["domain"] = to_json(*cfg.domain);
    switch (cfg.command) {
      case Command::DiscreteTraj:
        j["k_max"] = cfg.k_max;
        j["supersample"] = cfg.supersample;
        break;
      case Command::FlowTraj:
        j["flow"] = to_json(*cfg.flow);
        j["t_list"] = cfg.t_list;
        break;
      case Command::Dimension:
        j["boundary"] = cfg.boundary;
        j["min_box"] = cfg.min_box;
        j["max_box"] = cfg.max_box;
        break;
      case Command::VerifyFmt:
        if (cfg.dst_grid) j["dst_grid"] = to_json(*cfg.dst_grid);
        j["supersample"] = cfg.supersample;
        j["pad_px"] = cfg.pad_px;
        j["n_pairs"] = cfg.n_pairs;
        break;
      default:
        break;
    }
  }
  j["palette"] = std::string(palette_name(cfg.palette));
  j["output"] = cfg.output;
  return j;
}

std::string serialize(const SceneConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace fdyn::cli
