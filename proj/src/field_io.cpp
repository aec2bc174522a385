#include "ckdv/field_io.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ckdv {
namespace {

constexpr char kMagic[24] = "CKDV-FIELD-DUMP";

void write_raw(std::ofstream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::ifstream& in, void* p, std::size_t n, const char* what) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n))
        throw std::runtime_error(std::string("field dump truncated while reading ") + what);
}

} // namespace

void write_state_dump(const std::filesystem::path& path, const Field& u, const Field& v,
                      double t) {
    if (!(*u.grid() == *v.grid()))
        throw std::invalid_argument("write_state_dump: u and v on different grids");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

    const std::uint64_t version = kFieldDumpVersion;
    const std::uint64_t n = u.size();
    const double length = u.grid()->length();
    write_raw(out, kMagic, sizeof(kMagic));
    write_raw(out, &version, sizeof(version));
    write_raw(out, &n, sizeof(n));
    write_raw(out, &length, sizeof(length));
    write_raw(out, &t, sizeof(t));
    for (const Field* f : {&u, &v})
        write_raw(out, f->coeffs().data(), 2 * n * sizeof(double));
    if (!out) throw std::runtime_error("write failed for " + path.string());

    nlohmann::json sidecar{{"magic", kMagic},
                           {"version", version},
                           {"N", n},
                           {"L", length},
                           {"t", t}};
    std::ofstream side(path.string() + ".json");
    side << sidecar.dump(2) << "\n";
}

StateDump read_state_dump(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    char magic[24];
    read_raw(in, magic, sizeof(magic), "magic");
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("malformed field dump header in " + path.string());
    std::uint64_t version = 0;
    read_raw(in, &version, sizeof(version), "version");
    if (version != kFieldDumpVersion)
        throw std::runtime_error("field dump version mismatch in " + path.string() +
                                 ": file has v" + std::to_string(version) + ", reader expects v" +
                                 std::to_string(kFieldDumpVersion));
    std::uint64_t n = 0;
    double length = 0.0, t = 0.0;
    read_raw(in, &n, sizeof(n), "N");
    read_raw(in, &length, sizeof(length), "L");
    read_raw(in, &t, sizeof(t), "t");
    if (n < 16 || (n & (n - 1)) != 0 || !(length > 0.0))
        throw std::runtime_error("field dump declares invalid grid (N=" + std::to_string(n) +
                                 ", L=" + std::to_string(length) + ")");

    auto grid = make_grid(static_cast<std::size_t>(n), length);
    std::vector<cplx> cu(n), cv(n);
    read_raw(in, cu.data(), 2 * n * sizeof(double), "u coefficients");
    read_raw(in, cv.data(), 2 * n * sizeof(double), "v coefficients");
    return StateDump{Field(grid, std::move(cu)), Field(grid, std::move(cv)), t};
}

} // namespace ckdv
