#include "pwe/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "pwe/modes.hpp"
#include "pwe/output.hpp"
#include "pwe/pade.hpp"

namespace pwe {

int ScenarioConfig::steps() const {
  return int(std::llround(range_extent / range_step));
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name", "method", "f", "h", "n", "r", "p", "m", "starter", "z_s", "c0",
      "starter_c_phase_max", "slice_z", "outputs", "tl_min", "tl_max",
      "normalize", "dk2_sampling", "eddy_beta", "eddy_rx", "eddy_ry", "eddy_rz",
      "eddy_x0", "eddy_y0", "eddy_z0", "eddy_cm", "sponge_thickness",
      "sponge_smax"};
  // "h" is the range step and "H" the depth; keys are case-sensitive for
  // those two, handled before lowering.
  return keys;
}

struct KeyValues {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  const std::string& raw(const std::string& k) const { return kv.at(k); }
};

double parse_number(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "': not a number: '" + value + "'");
  }
  if (pos != value.size())
    throw ParseError("key '" + key + "': trailing characters in '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v))
    throw ParseError("key '" + key + "': expected an integer, got '" + value + "'");
  return int(v);
}

}  // namespace

ScenarioConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  KeyValues kvs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty key or value");
    // H (depth) and h (range step) differ only by case; map H to a
    // lowercase-safe internal name before folding.
    if (key == "H") key = "depth";
    else key = lower(key);
    if (key != "depth" && known_keys().count(key) == 0)
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    kvs.kv[key] = value;
  }
  for (const auto& [k, v] : overrides) {
    std::string key = k == "H" ? "depth" : lower(k);
    if (key != "depth" && known_keys().count(key) == 0)
      throw ParseError("override: unknown key '" + k + "'");
    kvs.kv[key] = v;
  }

  std::vector<std::string> problems;
  const auto require = [&](const char* key) {
    if (!kvs.has(key)) problems.push_back(std::string("missing required key '") + key + "'");
  };
  for (const char* key : {"method", "f", "depth", "n", "h", "r", "p", "starter", "z_s"})
    require(key);
  if (!problems.empty()) {
    std::string msg = "configuration invalid:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ValidationError(msg);
  }

  ScenarioConfig cfg;
  if (kvs.has("name")) cfg.name = kvs.raw("name");

  const std::string method = lower(kvs.raw("method"));
  if (method == "sssp") cfg.method = Method::Sssp;
  else if (method == "fdssp") cfg.method = Method::FdSsp;
  else if (method == "modes") cfg.method = Method::ModesReference;
  else throw ParseError("key 'method': expected sssp|fdssp|modes, got '" + method + "'");

  const std::string starter = lower(kvs.raw("starter"));
  if (starter == "modal") cfg.starter = StarterKind::Modal;
  else if (starter == "greene") cfg.starter = StarterKind::Greene;
  else throw ParseError("key 'starter': expected modal|greene, got '" + starter + "'");

  cfg.frequency = parse_number("f", kvs.raw("f"));
  cfg.depth = parse_number("H", kvs.raw("depth"));
  cfg.depth_intervals = parse_int("N", kvs.raw("n"));
  cfg.range_step = parse_number("h", kvs.raw("h"));
  cfg.range_extent = parse_number("R", kvs.raw("r"));
  cfg.pade_order = parse_int("p", kvs.raw("p"));
  cfg.z_source = parse_number("z_s", kvs.raw("z_s"));
  if (kvs.has("m")) cfg.neumann_cutoff = parse_int("M", kvs.raw("m"));
  if (kvs.has("c0")) cfg.c0 = parse_number("c0", kvs.raw("c0"));
  if (kvs.has("starter_c_phase_max"))
    cfg.starter_c_phase_max =
        parse_number("starter_c_phase_max", kvs.raw("starter_c_phase_max"));
  if (kvs.has("slice_z")) cfg.slice_z = parse_number("slice_z", kvs.raw("slice_z"));
  if (kvs.has("tl_min")) cfg.tl_min = parse_number("tl_min", kvs.raw("tl_min"));
  if (kvs.has("tl_max")) cfg.tl_max = parse_number("tl_max", kvs.raw("tl_max"));
  if (kvs.has("normalize")) {
    const std::string v = lower(kvs.raw("normalize"));
    if (v == "max") cfg.normalize_max = true;
    else if (v == "none") cfg.normalize_max = false;
    else throw ParseError("key 'normalize': expected max|none, got '" + v + "'");
  }
  if (kvs.has("dk2_sampling")) {
    const std::string v = lower(kvs.raw("dk2_sampling"));
    if (v == "midpoint") cfg.midpoint_sampling = true;
    else if (v == "start") cfg.midpoint_sampling = false;
    else throw ParseError("key 'dk2_sampling': expected start|midpoint, got '" + v + "'");
  }
  if (kvs.has("outputs")) {
    cfg.outputs.clear();
    std::istringstream os(kvs.raw("outputs"));
    std::string item;
    while (std::getline(os, item, ',')) {
      const std::string v = lower(trim(item));
      if (v == "full_field") cfg.outputs.push_back(OutputKind::FullField);
      else if (v == "tl_grid") cfg.outputs.push_back(OutputKind::TlGrid);
      else if (v == "depth_slice") cfg.outputs.push_back(OutputKind::DepthSlice);
      else if (v == "image") cfg.outputs.push_back(OutputKind::Image);
      else throw ParseError("key 'outputs': unknown output kind '" + v + "'");
    }
  }

  const char* eddy_keys[] = {"eddy_beta", "eddy_rx", "eddy_ry", "eddy_rz",
                             "eddy_x0", "eddy_y0", "eddy_z0", "eddy_cm"};
  int eddy_present = 0;
  for (const char* k : eddy_keys) eddy_present += kvs.has(k);
  if (eddy_present == 8) {
    EddyModel e;
    e.beta = parse_number("eddy_beta", kvs.raw("eddy_beta"));
    e.r_x = parse_number("eddy_rx", kvs.raw("eddy_rx"));
    e.r_y = parse_number("eddy_ry", kvs.raw("eddy_ry"));
    e.r_z = parse_number("eddy_rz", kvs.raw("eddy_rz"));
    e.x_0 = parse_number("eddy_x0", kvs.raw("eddy_x0"));
    e.y_0 = parse_number("eddy_y0", kvs.raw("eddy_y0"));
    e.z_0 = parse_number("eddy_z0", kvs.raw("eddy_z0"));
    e.c_m = parse_number("eddy_cm", kvs.raw("eddy_cm"));
    cfg.eddy = e;
  } else if (eddy_present != 0) {
    problems.push_back("eddy_* keys must be given all together (8 keys)");
  }

  const bool has_sponge_t = kvs.has("sponge_thickness");
  const bool has_sponge_s = kvs.has("sponge_smax");
  if (has_sponge_t && has_sponge_s) {
    cfg.sponge = SpongeConfig{
        parse_number("sponge_thickness", kvs.raw("sponge_thickness")),
        parse_number("sponge_smax", kvs.raw("sponge_smax"))};
  } else if (has_sponge_t != has_sponge_s) {
    problems.push_back("sponge_thickness and sponge_smax must be given together");
  }

  // Validation: collect every violation, then report them all at once.
  if (!(cfg.frequency > 0.0)) problems.push_back("f must be positive");
  if (!(cfg.depth > 0.0)) problems.push_back("H must be positive");
  if (cfg.depth_intervals < 2) problems.push_back("N must be >= 2");
  if (!(cfg.range_step > 0.0)) problems.push_back("h must be positive");
  if (!(cfg.range_extent >= cfg.range_step) && !(cfg.range_extent == 0.0))
    problems.push_back("R must be >= h (or 0 for a starter-only run)");
  if (cfg.range_extent < 0.0) problems.push_back("R must be nonnegative");
  if (cfg.pade_order < 1) problems.push_back("p must be >= 1");
  if (cfg.neumann_cutoff < 0) problems.push_back("M must be >= 0");
  if (!(cfg.c0 > 0.0)) problems.push_back("c0 must be positive");
  if (!(cfg.z_source > 0.0 && cfg.z_source < cfg.depth))
    problems.push_back("z_s must lie inside (0, H)");
  if (cfg.slice_z && !(*cfg.slice_z >= 0.0 && *cfg.slice_z <= cfg.depth))
    problems.push_back("slice_z must lie inside [0, H]");
  if (std::count(cfg.outputs.begin(), cfg.outputs.end(), OutputKind::DepthSlice) &&
      !cfg.slice_z)
    problems.push_back("depth_slice output requires slice_z");
  if (!(cfg.tl_max > cfg.tl_min)) problems.push_back("tl_max must exceed tl_min");
  if (cfg.starter_c_phase_max && !(*cfg.starter_c_phase_max > 0.0))
    problems.push_back("starter_c_phase_max must be positive");
  if (cfg.eddy) {
    if (!(cfg.eddy->beta > 0.0)) problems.push_back("eddy_beta must be positive");
    if (!(cfg.eddy->r_x > 0.0 && cfg.eddy->r_y > 0.0 && cfg.eddy->r_z > 0.0))
      problems.push_back("eddy radii must be positive");
  }
  if (cfg.sponge) {
    if (!(cfg.sponge->thickness > 0.0 && cfg.sponge->thickness < cfg.depth / 2.0))
      problems.push_back("sponge_thickness must lie inside (0, H/2)");
    if (cfg.sponge->s_max < 0.0) problems.push_back("sponge_smax must be nonnegative");
  }

  if (!problems.empty()) {
    std::string msg = "configuration invalid:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ValidationError(msg);
  }
  return cfg;
}

namespace {

std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string config_echo(const ScenarioConfig& cfg) {
  std::string out;
  const auto add = [&](const std::string& k, const std::string& v) {
    out += k + " = " + v + "\n";
  };
  add("name", cfg.name);
  add("method", cfg.method == Method::Sssp     ? "sssp"
                : cfg.method == Method::FdSsp ? "fdssp"
                                              : "modes");
  add("f", fmt_g(cfg.frequency));
  add("H", fmt_g(cfg.depth));
  add("N", std::to_string(cfg.depth_intervals));
  add("h", fmt_g(cfg.range_step));
  add("R", fmt_g(cfg.range_extent));
  add("p", std::to_string(cfg.pade_order));
  add("M", std::to_string(cfg.neumann_cutoff));
  add("starter", cfg.starter == StarterKind::Modal ? "modal" : "greene");
  add("z_s", fmt_g(cfg.z_source));
  add("c0", fmt_g(cfg.c0));
  if (cfg.starter_c_phase_max)
    add("starter_c_phase_max", fmt_g(*cfg.starter_c_phase_max));
  if (cfg.eddy) {
    add("eddy_beta", fmt_g(cfg.eddy->beta));
    add("eddy_rx", fmt_g(cfg.eddy->r_x));
    add("eddy_ry", fmt_g(cfg.eddy->r_y));
    add("eddy_rz", fmt_g(cfg.eddy->r_z));
    add("eddy_x0", fmt_g(cfg.eddy->x_0));
    add("eddy_y0", fmt_g(cfg.eddy->y_0));
    add("eddy_z0", fmt_g(cfg.eddy->z_0));
    add("eddy_cm", fmt_g(cfg.eddy->c_m));
  }
  if (cfg.sponge) {
    add("sponge_thickness", fmt_g(cfg.sponge->thickness));
    add("sponge_smax", fmt_g(cfg.sponge->s_max));
  }
  std::string outputs;
  for (OutputKind k : cfg.outputs) {
    if (!outputs.empty()) outputs += ",";
    outputs += k == OutputKind::FullField    ? "full_field"
               : k == OutputKind::TlGrid     ? "tl_grid"
               : k == OutputKind::DepthSlice ? "depth_slice"
                                             : "image";
  }
  add("outputs", outputs.empty() ? "none" : outputs);
  if (cfg.slice_z) add("slice_z", fmt_g(*cfg.slice_z));
  add("tl_min", fmt_g(cfg.tl_min));
  add("tl_max", fmt_g(cfg.tl_max));
  add("normalize", cfg.normalize_max ? "max" : "none");
  add("dk2_sampling", cfg.midpoint_sampling ? "midpoint" : "start");
  return out;
}

RealMatrix transmission_loss(const ComplexMatrix& history) {
  if (history.size() == 0)
    throw std::invalid_argument("transmission_loss: empty history");
  RealMatrix tl(history.rows(), history.cols());
  for (Eigen::Index j = 0; j < history.cols(); ++j)
    for (Eigen::Index i = 0; i < history.rows(); ++i)
      tl(i, j) = -20.0 * std::log10(std::abs(history(i, j)) + 1e-12);
  return tl;
}

ComplexMatrix compute_history(const ScenarioConfig& cfg) {
  const DepthGrid grid(cfg.depth, cfg.depth_intervals);
  EnvironmentModel env;
  env.frequency = cfg.frequency;
  env.c0 = cfg.c0;
  env.eddy = cfg.eddy;

  const int steps = cfg.steps();

  ModeSet modes;
  const bool needs_modes =
      cfg.starter == StarterKind::Modal || cfg.method == Method::ModesReference;
  if (needs_modes) {
    modes = solve_modes(env, grid, 0.0);
    if (cfg.starter_c_phase_max)
      modes = restrict_phase_speed(modes, env.omega(), *cfg.starter_c_phase_max);
  }

  if (cfg.method == Method::ModesReference) {
    std::vector<double> ranges(steps + 1);
    for (int n = 0; n <= steps; ++n) ranges[n] = n * cfg.range_step;
    return reference_field(env, modes, cfg.z_source, ranges, grid);
  }

  const ComplexField u0 = cfg.starter == StarterKind::Modal
                              ? modal_starter(modes, cfg.z_source, grid)
                              : greene_starter(env.k0(), cfg.z_source, grid);
  if (steps == 0) {
    ComplexMatrix history(grid.points(), 1);
    history.col(0) = u0.values;
    return history;
  }
  const RangeGrid range(cfg.range_step, steps);
  const PadeCoefficients coeffs =
      pade_coefficients(env.k0() * cfg.range_step, cfg.pade_order);

  int current_step = 0;
  try {
    if (cfg.method == Method::Sssp) {
      const TransformPlan plan(BoundaryKind::Sine, grid);
      const SsspStepper stepper(coeffs, plan, env, cfg.range_step,
                                cfg.neumann_cutoff, cfg.sponge,
                                cfg.midpoint_sampling);
      ComplexMatrix history(grid.points(), steps + 1);
      propagate(stepper, u0, range, [&](int n, double, const ComplexField& u) {
        current_step = n;
        history.col(n) = u.values;
      });
      return history;
    }
    const FdSspStepper stepper(coeffs, grid, env, cfg.range_step, cfg.sponge,
                               cfg.midpoint_sampling);
    ComplexMatrix history(grid.points(), steps + 1);
    propagate(stepper, u0, range, [&](int n, double, const ComplexField& u) {
      current_step = n;
      history.col(n) = u.values;
    });
    return history;
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " (at range step " +
                      std::to_string(current_step + 1) + ")");
  }
}

RunManifest run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const ComplexMatrix history = compute_history(cfg);
  const RealMatrix tl = transmission_loss(history);
  const DepthGrid grid(cfg.depth, cfg.depth_intervals);

  RunManifest manifest;
  manifest.config_echo = config_echo(cfg);

  const std::string method_tag = cfg.method == Method::Sssp     ? "sssp"
                                 : cfg.method == Method::FdSsp ? "fdssp"
                                                               : "modes";
  const std::string stem = out_dir + "/" + cfg.name + "_" + method_tag;

  for (OutputKind kind : cfg.outputs) {
    switch (kind) {
      case OutputKind::TlGrid:
        manifest.entries.push_back(write_output_file(
            stem + "_tl.csv", format_tl_csv(tl, cfg.range_step, grid.dz)));
        break;
      case OutputKind::DepthSlice: {
        const int row =
            std::clamp(int(std::lround(*cfg.slice_z / grid.dz)), 0, grid.N);
        manifest.entries.push_back(write_output_file(
            stem + "_slice.csv",
            format_slice_csv(tl.row(row).transpose(), cfg.range_step)));
        break;
      }
      case OutputKind::Image: {
        RealMatrix shown = tl;
        if (cfg.normalize_max) shown.array() -= tl.minCoeff();
        manifest.entries.push_back(write_output_file(
            stem + ".pgm", format_pgm(shown, cfg.tl_min, cfg.tl_max)));
        break;
      }
      case OutputKind::FullField:
        manifest.entries.push_back(
            write_output_file(stem + "_field.bin", format_field_dump(history)));
        break;
    }
  }

  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_output_file(stem + "_manifest.txt", format_manifest(manifest));
  return manifest;
}

}  // namespace pwe
