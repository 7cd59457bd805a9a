#pragma once

#include <string>
#include <utility>
#include <vector>

namespace robustmix::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> vertical_markers;  // dashed guides (breakpoint brackets)
};

// Minimal deterministic line plot: fixed canvas, axes with five ticks per
// side, one polyline per series, legend in the top-right corner. Identical
// inputs produce byte-identical output.
std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace robustmix::svg
