#pragma once

#include "plasma/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace plasma::csv {

/// Shortest "%.17g" rendering; parses back to the identical double.
std::string format_double(double v);

// Potential: header `x,q`, one row per node.
void write_potential(std::ostream& os, const Potential& q);
Potential read_potential(std::istream& is);

// Spectral samples: header `k,re,im`.
void write_spectral(std::ostream& os, const ComplexSamples& s);
ComplexSamples read_spectral(std::istream& is);

// Boundary data: header `k,re_um,im_um,re_up,im_up`.
void write_boundary(std::ostream& os, const BoundaryData& d);
BoundaryData read_boundary(std::istream& is, double k_min_floor = kDefaultKMinFloor);

Potential load_potential(const std::filesystem::path& path);
BoundaryData load_boundary(const std::filesystem::path& path, double k_min_floor = kDefaultKMinFloor);

}  // namespace plasma::csv
