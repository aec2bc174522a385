#pragma once

#include "ckdv/field.hpp"

#include <filesystem>

namespace ckdv {

// Binary field dump: 32-byte header (24-byte magic + u64 version), then
// N (u64), L (f64), t (f64), then 2N little-endian doubles of interleaved
// re/im spectral coefficients per field, u first then v. A JSON sidecar
// (<path>.json) mirrors the header for human inspection.
inline constexpr std::uint64_t kFieldDumpVersion = 1;

struct StateDump {
    Field u;
    Field v;
    double t = 0.0;
};

void write_state_dump(const std::filesystem::path& path, const Field& u, const Field& v,
                      double t);
StateDump read_state_dump(const std::filesystem::path& path);

} // namespace ckdv
