#include "stirap2d/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace stirap2d {

static_assert(std::endian::native == std::endian::little,
              "grid file writer assumes a little-endian host");

namespace {

const char kMagic[4] = {'F', '6', '4', 'G'};

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(is);
}

} // namespace

void write_grid(const ScalarField2D& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put<std::uint16_t>(os, kGridFormatVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.nx));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.ny));
    put<double>(os, field.grid.x0);
    put<double>(os, field.grid.y0);
    put<double>(os, field.grid.dx);
    put<double>(os, field.grid.dy);
    os.write(reinterpret_cast<const char*>(field.values.data()),
             static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!os) throw IoError("write failed: " + path);
}

ScalarField2D read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad magic in grid file: " + path);
    std::uint16_t version;
    std::uint32_t nx, ny;
    double x0, y0, dx, dy;
    if (!get(is, version)) throw IoError("truncated grid file: " + path);
    if (version != kGridFormatVersion)
        throw IoError("unsupported grid file version in: " + path);
    if (!get(is, nx) || !get(is, ny) || !get(is, x0) || !get(is, y0) || !get(is, dx) ||
        !get(is, dy))
        throw IoError("truncated grid file: " + path);

    ScalarField2D field;
    field.grid = {static_cast<std::int32_t>(nx), static_cast<std::int32_t>(ny), x0, y0, dx, dy};
    field.grid.validate();
    field.values.resize(field.grid.size());
    is.read(reinterpret_cast<char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != field.values.size() * sizeof(double))
        throw IoError("truncated grid file: " + path);
    return field;
}

void render_heatmap(const ScalarField2D& field, const std::string& path, HeatmapScale scale) {
    const auto& g = field.grid;
    double lo = 0.0, hi = 0.0;
    std::vector<double> mapped(field.values.size());
    if (scale == HeatmapScale::Linear) {
        mapped = field.values;
        hi = *std::max_element(mapped.begin(), mapped.end());
        lo = 0.0;
    } else {
        const double mx = *std::max_element(field.values.begin(), field.values.end());
        const double floor = mx > 0.0 ? 1e-12 * mx : 1e-300;
        for (std::size_t i = 0; i < mapped.size(); ++i)
            mapped[i] = std::log10(std::max(field.values[i], floor));
        lo = std::log10(floor);
        hi = *std::max_element(mapped.begin(), mapped.end());
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "P5\n" << g.nx << " " << g.ny << "\n255\n";
    const double range = hi - lo;
    std::vector<unsigned char> row(static_cast<std::size_t>(g.nx));
    for (std::int32_t j = g.ny - 1; j >= 0; --j) {  // row 0 of the image = max y
        for (std::int32_t i = 0; i < g.nx; ++i) {
            const double v = mapped[g.index(i, j)];
            unsigned char px;
            if (std::isnan(v)) {
                px = 0;
            } else if (range <= 0.0) {
                px = 255;  // degenerate range: constant fields render white
            } else {
                double s = (v - lo) / range;
                s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
                px = static_cast<unsigned char>(std::lround(s * 255.0));
            }
            row[static_cast<std::size_t>(i)] = px;
        }
        os.write(reinterpret_cast<const char*>(row.data()), g.nx);
    }
    if (!os) throw IoError("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (columns.size() != header.size()) throw IoError("csv: header/column count mismatch");
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        os << header[c] << (c + 1 < header.size() ? "," : "\n");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    char buf[40];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", columns[c][r]);
            os << buf << (c + 1 < columns.size() ? "," : "\n");
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (is) {
        is.read(buf, sizeof(buf));
        const auto n = static_cast<std::size_t>(is.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

} // namespace stirap2d
