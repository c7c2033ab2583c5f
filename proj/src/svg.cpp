#include "localmap/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "localmap/error.hpp"

namespace localmap {

namespace {

// Category palette (20 entries); label ids map through modulo.
const char* kPalette[20] = {
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c", "#98df8a", "#d62728",
    "#ff9896", "#9467bd", "#c5b0d5", "#8c564b", "#c49c94", "#e377c2", "#f7b6d2",
    "#7f7f7f", "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
};

void append_num(std::string& out, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    out.append(buf, res.ptr);
}

}  // namespace

std::string svg_scatter(const Matrix& coords, const std::vector<int>* labels) {
    const std::size_t n = coords.rows();
    if (n == 0 || coords.cols() < 2) throw Error("svg_scatter: need n >= 1 points with 2 columns");
    if (labels != nullptr && labels->size() != n) {
        throw Error("svg_scatter: label count mismatch");
    }

    double min_x = coords(0, 0), max_x = coords(0, 0);
    double min_y = coords(0, 1), max_y = coords(0, 1);
    for (std::size_t i = 0; i < n; ++i) {
        min_x = std::min(min_x, coords(i, 0));
        max_x = std::max(max_x, coords(i, 0));
        min_y = std::min(min_y, coords(i, 1));
        max_y = std::max(max_y, coords(i, 1));
    }
    const double range_x = max_x - min_x > 0.0 ? max_x - min_x : 1.0;
    const double range_y = max_y - min_y > 0.0 ? max_y - min_y : 1.0;
    const double margin_x = 0.05 * range_x;
    const double margin_y = 0.05 * range_y;
    const double width = range_x + 2.0 * margin_x;
    const double height = range_y + 2.0 * margin_y;
    const double radius = 0.004 * std::max(width, height);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    append_num(out, min_x - margin_x);
    out += ' ';
    append_num(out, min_y - margin_y);
    out += ' ';
    append_num(out, width);
    out += ' ';
    append_num(out, height);
    out += "\" width=\"800\" height=\"";
    append_num(out, std::round(800.0 * height / width));
    out += "\">\n";

    for (std::size_t i = 0; i < n; ++i) {
        out += "<circle cx=\"";
        append_num(out, coords(i, 0));
        out += "\" cy=\"";
        append_num(out, coords(i, 1));
        out += "\" r=\"";
        append_num(out, radius);
        out += "\" fill=\"";
        if (labels != nullptr) {
            const int id = ((*labels)[i] % 20 + 20) % 20;
            out += kPalette[id];
        } else {
            out += "#808080";
        }
        out += "\" fill-opacity=\"0.8\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace localmap
