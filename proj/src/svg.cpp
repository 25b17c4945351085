#include "ardr/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace ardr {

using detail::require;

namespace {

const char* const kPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

constexpr double kCanvas = 800.0;
constexpr double kMargin = 0.05 * kCanvas;

}  // namespace

std::string palette_color(int c) {
    int slot = ((c % 10) + 10) % 10;
    return kPalette[slot];
}

void emit_scatter_svg(const DataMatrix& y, const std::vector<int>& labels,
                      const std::string& path) {
    require(!y.empty(), "emit_scatter_svg: empty embedding");
    require(y.cols() == 2 || y.cols() == 3,
            "emit_scatter_svg: embedding must have 2 or 3 columns");
    require(labels.empty() || labels.size() == y.rows(),
            "emit_scatter_svg: labels/embedding size mismatch");
    if (y.cols() == 3)
        std::fprintf(stderr, "warning: 3-d embedding, dropping the third coordinate\n");
    const std::size_t n = y.rows();

    double lo[2], hi[2];
    for (std::size_t c = 0; c < 2; ++c) {
        lo[c] = hi[c] = y(0, c);
        for (std::size_t i = 1; i < n; ++i) {
            lo[c] = std::min(lo[c], y(i, c));
            hi[c] = std::max(hi[c], y(i, c));
        }
        if (!(hi[c] > lo[c])) {  // degenerate span: pad so the map stays affine
            lo[c] -= 1.0;
            hi[c] += 1.0;
        }
    }
    const double inner = kCanvas - 2.0 * kMargin;
    auto map_x = [&](double v) { return kMargin + (v - lo[0]) / (hi[0] - lo[0]) * inner; };
    auto map_y = [&](double v) { return kCanvas - kMargin - (v - lo[1]) / (hi[1] - lo[1]) * inner; };

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) detail::fail("emit_scatter_svg: cannot open '" + path + "' for writing");
    std::fprintf(f, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                 "width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                 kCanvas, kCanvas, kCanvas, kCanvas);
    std::fprintf(f, "<rect width=\"%g\" height=\"%g\" fill=\"#ffffff\"/>\n", kCanvas, kCanvas);
    for (std::size_t i = 0; i < n; ++i) {
        const char* fill = kPalette[labels.empty() ? 0 : ((labels[i] % 10) + 10) % 10];
        std::fprintf(f, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"%s\"/>\n",
                     map_x(y(i, 0)), map_y(y(i, 1)), fill);
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

}  // namespace ardr
