#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwe/env.hpp"
#include "pwe/propagators.hpp"
#include "pwe/types.hpp"

namespace pwe {

inline constexpr const char* kVersion = "0.1.0";

enum class Method { Sssp, FdSsp, ModesReference };
enum class StarterKind { Modal, Greene };
enum class OutputKind { FullField, TlGrid, DepthSlice, Image };

struct ScenarioConfig {
  std::string name = "run";
  Method method = Method::Sssp;
  double frequency = 0.0;       // f (Hz)
  double depth = 0.0;           // H (m)
  int depth_intervals = 0;      // N
  double range_step = 0.0;      // h (m)
  double range_extent = 0.0;    // R (m)
  int pade_order = 0;           // p
  int neumann_cutoff = 2;       // M
  StarterKind starter = StarterKind::Modal;
  double z_source = 0.0;        // z_s (m)
  double c0 = 1500.0;
  std::optional<double> starter_c_phase_max;
  std::optional<EddyModel> eddy;
  std::optional<SpongeConfig> sponge;
  std::vector<OutputKind> outputs = {OutputKind::TlGrid};
  std::optional<double> slice_z;
  double tl_min = 40.0;
  double tl_max = 120.0;
  bool normalize_max = false;       // image display option
  bool midpoint_sampling = false;   // delta k^2 sampled at r + h/2

  int steps() const;
};

/// Parses the flat `key = value` format (# comments). Overrides are applied
/// on top of the file before validation. Throws ParseError with line/key
/// context, or ValidationError listing every violated invariant.
ScenarioConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Effective configuration, one `key = value` per line (echoed in manifests).
std::string config_echo(const ScenarioConfig& config);

struct ManifestEntry {
  std::string path;
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct RunManifest {
  std::vector<ManifestEntry> entries;
  std::string config_echo;
  double wall_seconds = 0.0;
  std::string version = kVersion;
};

/// TL(r,z) = -20 log10(|u| + 1e-12), same layout as the field history
/// (rows depth, columns range).
RealMatrix transmission_loss(const ComplexMatrix& history);

/// Builds the scenario, marches it, writes all requested outputs plus
/// `<name>_manifest.txt` under out_dir, and returns the manifest.
RunManifest run_scenario(const ScenarioConfig& config, const std::string& out_dir);

/// The computed field history without any file output (rows depth points,
/// columns range samples including r = 0).
ComplexMatrix compute_history(const ScenarioConfig& config);

}  // namespace pwe
