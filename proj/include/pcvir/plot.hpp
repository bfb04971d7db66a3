#pragma once

#include <string>

#include "pcvir/pcvir.hpp"

namespace pcvir {

// Box plot of per-group coefficients, one box per variable in display order:
// median bar, interquartile box, 1.5 IQR whiskers, outlier points and a dot
// for the group mean. Horizontal guides mark the moderate (dotted) and
// strong (dashed) thresholds on both sides of zero, with shaded bands in
// between. Self-contained SVG, no external references.
std::string box_plot_svg(const GroupedResult& result);

void write_box_plot_svg(const std::string& path, const GroupedResult& result);

}  // namespace pcvir
