#pragma once

#include <iosfwd>
#include <string>

#include "hoadi/grid.hpp"

namespace hoadi {

// CSV layout: header row carries the y-coordinates, first column the
// x-coordinates, cell (i, j) the value at (x_i, y_j).
void write_field_csv(std::ostream& os, const UniformGrid& grid, const GridField& field);
void write_field_csv(const std::string& path, const UniformGrid& grid, const GridField& field);

// Binary dump, little endian: magic "VGF1", uint32 M, uint32 N, then M*N
// doubles row-major (x index outer, y index inner).
void write_field_binary(std::ostream& os, const GridField& field);
void write_field_binary(const std::string& path, const GridField& field);

struct FieldDims {
    uint32_t m;
    uint32_t n;
};

GridField read_field_binary(std::istream& is, const UniformGrid& grid);
GridField read_field_binary(const std::string& path, const UniformGrid& grid);

}  // namespace hoadi
