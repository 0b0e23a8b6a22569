#pragma once

#include <cstdint>
#include <string>

#include "pwe/scenario.hpp"
#include "pwe/types.hpp"

namespace pwe {

/// TL grid as CSV: header `r_m,z_m,tl_db`, range-major data rows.
std::string format_tl_csv(const RealMatrix& tl, double range_step, double dz);

/// Depth slice as CSV: header `r_m,tl_db`.
std::string format_slice_csv(const RealVector& tl_slice, double range_step);

/// 8-bit binary PGM of the TL grid, width = range samples, height = depth
/// samples; tl_min maps to white (loudest), tl_max to black.
std::string format_pgm(const RealMatrix& tl, double tl_min, double tl_max);

/// Binary field dump: 64-byte ASCII header "PWE1 <Nr> <Nz>" padded with
/// spaces, newline-terminated, then little-endian float64 (re, im) pairs,
/// range-major.
std::string format_field_dump(const ComplexMatrix& history);

std::string sha256_hex(const std::string& bytes);

/// Writes bytes to path (parent directory must exist) and returns the
/// manifest entry with checksum and size.
ManifestEntry write_output_file(const std::string& path, const std::string& bytes);

std::string format_manifest(const RunManifest& manifest);

}  // namespace pwe
