#pragma once

#include <string>
#include <vector>

#include "ardr/matrix.hpp"

namespace ardr {

// Scatter plot of a 2-d embedding as an SVG 1.1 document: one circle of
// radius 2px per point on an 800x800 canvas, data bounds fitted with a 5%
// margin per axis. Labels (optional; pass empty for none) cycle through a
// fixed 10-color palette. d=3 input is projected by dropping the third
// coordinate, with a warning on stderr; other widths are rejected.
// Output is byte-deterministic for identical inputs.
void emit_scatter_svg(const DataMatrix& y, const std::vector<int>& labels,
                      const std::string& path);

// Palette entry for class id c (cycled modulo 10), as "#rrggbb".
std::string palette_color(int c);

}  // namespace ardr
