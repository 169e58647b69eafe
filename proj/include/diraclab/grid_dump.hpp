#pragma once

#include "diraclab/fourier_grid.hpp"

#include <iosfwd>
#include <string>

namespace diraclab {

// Text dump of a spatial GridFunction4:
//
//   # n_per_axis=<n> half_length=<L>
//   node,re1,im1,re2,im2,re3,im3,re4,im4
//   0,<8 values>
//   ...
//
// Nodes are listed in flat index order (i*n + j)*n + k. Values carry 17
// significant digits so a write/read cycle is lossless.
void write_grid_dump(std::ostream &os, const GridFunction4 &f);
void write_grid_dump(const std::string &path, const GridFunction4 &f);

/// Throws ParseError on malformed input.
GridFunction4 read_grid_dump(std::istream &is);
GridFunction4 read_grid_dump(const std::string &path);

} // namespace diraclab
