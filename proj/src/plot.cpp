#include "pcvir/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pcvir/stats.hpp"

namespace pcvir {

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Round a raw step to a pleasant 1/2/5 multiple.
double nice_step(double raw) {
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    if (frac <= 1.0) return mag;
    if (frac <= 2.0) return 2.0 * mag;
    if (frac <= 5.0) return 5.0 * mag;
    return 10.0 * mag;
}

const char* band_fill(ImportanceBand band) {
    switch (band) {
        case ImportanceBand::strong: return "#c0504d";
        case ImportanceBand::moderate: return "#e8a33d";
        case ImportanceBand::none: return "#8faab8";
    }
    return "#8faab8";
}

struct BoxStats {
    double q1, median, q3, lo, hi;  // whisker ends in lo/hi
    std::vector<double> outliers;
    double mean;
};

BoxStats box_stats(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    BoxStats b{};
    b.q1 = quantile_sorted(values, 0.25);
    b.median = quantile_sorted(values, 0.5);
    b.q3 = quantile_sorted(values, 0.75);
    double iqr = b.q3 - b.q1;
    double fence_lo = b.q1 - 1.5 * iqr;
    double fence_hi = b.q3 + 1.5 * iqr;
    b.lo = b.q3;
    b.hi = b.q1;
    for (double v : values) {
        if (v < fence_lo || v > fence_hi) {
            b.outliers.push_back(v);
            continue;
        }
        b.lo = std::min(b.lo, v);
        b.hi = std::max(b.hi, v);
    }
    b.mean = mean(values);
    return b;
}

}  // namespace

std::string box_plot_svg(const GroupedResult& result) {
    if (result.groups.empty()) throw std::invalid_argument("box_plot_svg: no groups");
    const std::size_t p = result.variables.size();
    const double mod = result.thresholds.moderate;
    const double strong = result.thresholds.strong;

    std::vector<BoxStats> boxes;
    double vmin = -strong, vmax = strong;
    for (std::size_t pos = 0; pos < p; ++pos) {
        std::size_t j = result.display_order[pos];
        std::vector<double> values;
        for (const GroupFit& g : result.groups) values.push_back(g.importance.coefficients[j]);
        BoxStats b = box_stats(values);
        vmin = std::min({vmin, b.lo, b.mean});
        vmax = std::max({vmax, b.hi, b.mean});
        for (double o : b.outliers) {
            vmin = std::min(vmin, o);
            vmax = std::max(vmax, o);
        }
        boxes.push_back(std::move(b));
    }
    double pad = 0.08 * (vmax - vmin);
    vmin -= pad;
    vmax += pad;

    const double slot = 34.0;
    const double left = 70.0, right = 20.0, top = 48.0, bottom = 86.0;
    const double plot_w = slot * static_cast<double>(p);
    const double plot_h = 420.0;
    const double width = left + plot_w + right;
    const double height = top + plot_h + bottom;

    auto ypix = [&](double v) { return top + (vmax - v) / (vmax - vmin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\" viewBox=\"0 0 " << px(width) << ' ' << px(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Shaded threshold bands, clipped to the value range actually shown.
    auto band_rect = [&](double a, double b, const char* fill) {
        double lo = std::max(std::min(a, b), vmin);
        double hi = std::min(std::max(a, b), vmax);
        if (hi <= lo) return;
        svg << "<rect x=\"" << px(left) << "\" y=\"" << px(ypix(hi)) << "\" width=\"" << px(plot_w)
            << "\" height=\"" << px(ypix(lo) - ypix(hi)) << "\" fill=\"" << fill << "\"/>\n";
    };
    band_rect(-mod, mod, "#f5f5f5");
    band_rect(mod, strong, "#fdf3d9");
    band_rect(-strong, -mod, "#fdf3d9");
    band_rect(strong, vmax, "#fbe5e2");
    band_rect(vmin, -strong, "#fbe5e2");

    // Axis ticks.
    double step = nice_step((vmax - vmin) / 8.0);
    double first = std::ceil(vmin / step) * step;
    for (double v = first; v <= vmax + 1e-9; v += step) {
        double y = ypix(v);
        svg << "<line x1=\"" << px(left - 4) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left)
            << "\" y2=\"" << px(y) << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << px(left - 8) << "\" y=\"" << px(y + 3.5)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">"
            << tick_label(std::abs(v) < 1e-12 ? 0.0 : v) << "</text>\n";
    }

    // Zero line and threshold guides.
    auto guide = [&](double v, const char* dash, const char* color) {
        if (v < vmin || v > vmax) return;
        double y = ypix(v);
        svg << "<line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left + plot_w)
            << "\" y2=\"" << px(y) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\" stroke-dasharray=\"" << dash << "\"/>\n";
    };
    guide(0.0, "none", "#999999");
    guide(mod, "2,3", "#b08a1e");
    guide(-mod, "2,3", "#b08a1e");
    guide(strong, "7,4", "#a33a35");
    guide(-strong, "7,4", "#a33a35");

    // Boxes in display order.
    for (std::size_t pos = 0; pos < p; ++pos) {
        std::size_t j = result.display_order[pos];
        const BoxStats& b = boxes[pos];
        double cx = left + slot * (static_cast<double>(pos) + 0.5);
        double half = slot * 0.32;
        const char* fill = band_fill(result.bands[j]);

        // whiskers with caps
        svg << "<line x1=\"" << px(cx) << "\" y1=\"" << px(ypix(b.hi)) << "\" x2=\"" << px(cx)
            << "\" y2=\"" << px(ypix(b.q3)) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << px(cx) << "\" y1=\"" << px(ypix(b.q1)) << "\" x2=\"" << px(cx)
            << "\" y2=\"" << px(ypix(b.lo)) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        for (double w : {b.hi, b.lo})
            svg << "<line x1=\"" << px(cx - half * 0.6) << "\" y1=\"" << px(ypix(w)) << "\" x2=\""
                << px(cx + half * 0.6) << "\" y2=\"" << px(ypix(w))
                << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";

        // interquartile box and median
        svg << "<rect x=\"" << px(cx - half) << "\" y=\"" << px(ypix(b.q3)) << "\" width=\""
            << px(2 * half) << "\" height=\"" << px(ypix(b.q1) - ypix(b.q3)) << "\" fill=\"" << fill
            << "\" fill-opacity=\"0.55\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << px(cx - half) << "\" y1=\"" << px(ypix(b.median)) << "\" x2=\""
            << px(cx + half) << "\" y2=\"" << px(ypix(b.median))
            << "\" stroke=\"#111\" stroke-width=\"1.6\"/>\n";

        for (double o : b.outliers)
            svg << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(ypix(o))
                << "\" r=\"2.4\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        svg << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(ypix(b.mean))
            << "\" r=\"2.8\" fill=\"#1a1a1a\"/>\n";

        // rotated variable label
        double lx = cx + 4.0, ly = top + plot_h + 12.0;
        svg << "<text x=\"" << px(lx) << "\" y=\"" << px(ly) << "\" transform=\"rotate(-55 "
            << px(lx) << ' ' << px(ly)
            << ")\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">"
            << result.variables[j] << "</text>\n";
    }

    svg << "<text x=\"" << px(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
           "font-weight=\"bold\" fill=\"#111\">Variable importance by group</text>\n";
    std::string sub = std::to_string(result.groups.size()) + " groups, " +
                      (result.adjusted ? "adjusted" : "unadjusted") +
                      " coefficients; dot marks the group mean";
    svg << "<text x=\"" << px(left) << "\" y=\"36\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#555\">" << sub << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_box_plot_svg(const std::string& path, const GroupedResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << box_plot_svg(result);
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace pcvir
