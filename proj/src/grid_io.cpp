#include "hoadi/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hoadi {

static_assert(std::endian::native == std::endian::little,
              "field binary format is little endian; add byte swapping for this platform");

namespace {
constexpr char kMagic[4] = {'V', 'G', 'F', '1'};

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}
}  // namespace

void write_field_csv(std::ostream& os, const UniformGrid& grid, const GridField& field) {
    os.precision(17);
    os << "x";
    for (int j = 0; j < grid.n(); ++j) os << "," << grid.y(j);
    os << "\n";
    for (int i = 0; i < grid.m(); ++i) {
        os << grid.x(i);
        for (int j = 0; j < grid.n(); ++j) os << "," << field.at(i, j);
        os << "\n";
    }
}

void write_field_csv(const std::string& path, const UniformGrid& grid, const GridField& field) {
    auto os = open_out(path, std::ios::out);
    write_field_csv(os, grid, field);
}

void write_field_binary(std::ostream& os, const GridField& field) {
    os.write(kMagic, 4);
    const uint32_t m = static_cast<uint32_t>(field.m());
    const uint32_t n = static_cast<uint32_t>(field.n());
    os.write(reinterpret_cast<const char*>(&m), 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    for (int i = 0; i < field.m(); ++i)
        for (int j = 0; j < field.n(); ++j) {
            const double v = field.at(i, j);
            os.write(reinterpret_cast<const char*>(&v), 8);
        }
}

void write_field_binary(const std::string& path, const GridField& field) {
    auto os = open_out(path, std::ios::out | std::ios::binary);
    write_field_binary(os, field);
}

GridField read_field_binary(std::istream& is, const UniformGrid& grid) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("field binary: bad magic");
    uint32_t m = 0, n = 0;
    is.read(reinterpret_cast<char*>(&m), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    if (!is || m != static_cast<uint32_t>(grid.m()) || n != static_cast<uint32_t>(grid.n()))
        throw std::runtime_error("field binary: dimension mismatch with grid");
    GridField field(grid);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            double v;
            is.read(reinterpret_cast<char*>(&v), 8);
            field.at(static_cast<int>(i), static_cast<int>(j)) = v;
        }
    if (!is) throw std::runtime_error("field binary: truncated file");
    return field;
}

GridField read_field_binary(const std::string& path, const UniformGrid& grid) {
    std::ifstream is(path, std::ios::in | std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_field_binary(is, grid);
}

}  // namespace hoadi
