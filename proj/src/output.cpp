#include "pwe/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "field dumps are written as little-endian float64");

namespace pwe {

namespace {

void append_num(std::string& out, const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  out += buf;
}

}  // namespace

std::string format_tl_csv(const RealMatrix& tl, double range_step, double dz) {
  std::string out = "r_m,z_m,tl_db\n";
  out.reserve(out.size() + size_t(tl.size()) * 24);
  for (Eigen::Index ir = 0; ir < tl.cols(); ++ir) {
    for (Eigen::Index iz = 0; iz < tl.rows(); ++iz) {
      append_num(out, "%.10g", double(ir) * range_step);
      out += ',';
      append_num(out, "%.10g", double(iz) * dz);
      out += ',';
      append_num(out, "%.6f", tl(iz, ir));
      out += '\n';
    }
  }
  return out;
}

std::string format_slice_csv(const RealVector& tl_slice, double range_step) {
  std::string out = "r_m,tl_db\n";
  for (Eigen::Index ir = 0; ir < tl_slice.size(); ++ir) {
    append_num(out, "%.10g", double(ir) * range_step);
    out += ',';
    append_num(out, "%.6f", tl_slice[ir]);
    out += '\n';
  }
  return out;
}

std::string format_pgm(const RealMatrix& tl, double tl_min, double tl_max) {
  const int width = int(tl.cols());
  const int height = int(tl.rows());
  char header[64];
  std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", width, height);
  std::string out = header;
  out.reserve(out.size() + size_t(width) * height);
  const double span = tl_max - tl_min;
  for (int iz = 0; iz < height; ++iz) {
    for (int ir = 0; ir < width; ++ir) {
      const double t = std::clamp((tl(iz, ir) - tl_min) / span, 0.0, 1.0);
      out += char(static_cast<unsigned char>(std::lround(255.0 * (1.0 - t))));
    }
  }
  return out;
}

std::string format_field_dump(const ComplexMatrix& history) {
  char header[65];
  std::memset(header, ' ', 64);
  const int written = std::snprintf(header, sizeof(header), "PWE1 %lld %lld",
                                    static_cast<long long>(history.cols()),
                                    static_cast<long long>(history.rows()));
  header[written] = ' ';  // undo snprintf's terminator, keep the pad
  header[63] = '\n';
  std::string out(header, 64);
  out.reserve(64 + size_t(history.size()) * 16);
  for (Eigen::Index ir = 0; ir < history.cols(); ++ir) {
    for (Eigen::Index iz = 0; iz < history.rows(); ++iz) {
      const Complex v = history(iz, ir);
      const double re = v.real(), im = v.imag();
      out.append(reinterpret_cast<const char*>(&re), sizeof(double));
      out.append(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256_hex: EVP_Digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

ManifestEntry write_output_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_output_file: cannot open " + path);
  f.write(bytes.data(), std::streamsize(bytes.size()));
  if (!f) throw std::runtime_error("write_output_file: short write to " + path);
  return ManifestEntry{path, sha256_hex(bytes), bytes.size()};
}

std::string format_manifest(const RunManifest& manifest) {
  std::string out = "# pwe run manifest\n";
  out += "# version ";
  out += manifest.version;
  out += '\n';
  append_num(out, "# wall_time_s %.3f", manifest.wall_seconds);
  out += '\n';
  for (const auto& e : manifest.entries) {
    out += e.path;
    out += '\t';
    out += e.sha256;
    out += '\t';
    out += std::to_string(e.bytes);
    out += '\n';
  }
  out += "# config\n";
  out += manifest.config_echo;
  return out;
}

}  // namespace pwe
