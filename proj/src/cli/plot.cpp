// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/cli/plot.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace chainpulse::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 450.0;

const char* kBlue = "#1f77b4";
const char* kRed = "#d62728";
const char* kGray = "#888888";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Frame {
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;

    void pad_degenerate() {
        if (!(x_hi > x_lo)) {
            x_lo -= 0.5;
            x_hi += 0.5;
        }
        if (!(y_hi > y_lo)) {
            y_lo -= 0.5;
            y_hi += 0.5;
        }
    }
    double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft); }
    double py(double y) const { return kBottom - (y - y_lo) / (y_hi - y_lo) * (kBottom - kTop); }
};

std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + step * 1e-9; t += step) {
        ticks.push_back(t == 0.0 ? 0.0 : t); // normalize -0
    }
    return ticks;
}

void open_svg(std::string& svg) {
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
}

void draw_axes(std::string& svg, const Frame& frame, const std::string& x_label,
               const std::string& y_label) {
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kRight) +
           "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(frame.x_lo, frame.x_hi)) {
        const double x = frame.px(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(kBottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt_tick(t) + "</text>\n";
    }
    for (double t : nice_ticks(frame.y_lo, frame.y_hi)) {
        const double y = frame.py(t);
        svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt_tick(t) + "</text>\n";
    }
    svg += "<text x=\"" + fmt((kLeft + kRight) / 2) + "\" y=\"" + fmt(kHeight - 8) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt((kTop + kBottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";
}

void polyline(std::string& svg, const std::vector<std::pair<double, double>>& pts,
              const Frame& frame, const char* color, const char* dash = nullptr) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\"";
    if (dash != nullptr) {
        svg += " stroke-dasharray=\"";
        svg += dash;
        svg += "\"";
    }
    svg += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            svg += ' ';
        }
        svg += fmt(frame.px(pts[i].first)) + "," + fmt(frame.py(pts[i].second));
    }
    svg += "\"/>\n";
}

struct Columns {
    std::vector<std::vector<double>> data;
    const Table& table;

    Columns(const Table& t, std::initializer_list<const char*> names) : table(t) {
        for (const char* name : names) {
            const auto c = t.col(name); // throws bad-column on mismatch
            std::vector<double> col;
            col.reserve(t.n_rows());
            for (std::size_t r = 0; r < t.n_rows(); ++r) {
                col.push_back(t.number(r, c));
            }
            data.push_back(std::move(col));
        }
        if (t.n_rows() == 0) {
            throw Error("bad-table", "plot table has no rows");
        }
    }
};

Frame frame_of(const std::vector<double>& xs, const std::vector<double>& ys) {
    Frame f;
    f.x_lo = *std::min_element(xs.begin(), xs.end());
    f.x_hi = *std::max_element(xs.begin(), xs.end());
    f.y_lo = *std::min_element(ys.begin(), ys.end());
    f.y_hi = *std::max_element(ys.begin(), ys.end());
    f.pad_degenerate();
    return f;
}

} // namespace

PlotKind plot_kind_from_string(const std::string& name) {
    if (name == "ecdf") {
        return PlotKind::Ecdf;
    }
    if (name == "histogram-fit") {
        return PlotKind::HistogramFit;
    }
    if (name == "acf") {
        return PlotKind::Acf;
    }
    if (name == "scatter") {
        return PlotKind::Scatter;
    }
    if (name == "series-overlay") {
        return PlotKind::SeriesOverlay;
    }
    if (name == "roc") {
        return PlotKind::Roc;
    }
    throw Error("bad-plot", "unknown plot kind: '" + name + "'");
}

std::string render_plot(const Table& table, PlotKind kind) {
    std::string svg;
    open_svg(svg);
    switch (kind) {
    case PlotKind::Ecdf: {
        Columns cols(table, {"value", "cumulative"});
        Frame frame = frame_of(cols.data[0], cols.data[1]);
        frame.y_lo = 0.0;
        frame.y_hi = 1.0;
        draw_axes(svg, frame, table.columns[table.col("value")], "cumulative probability");
        std::vector<std::pair<double, double>> pts;
        double prev = 0.0;
        for (std::size_t r = 0; r < cols.data[0].size(); ++r) {
            pts.emplace_back(cols.data[0][r], prev); // horizontal run-in
            pts.emplace_back(cols.data[0][r], cols.data[1][r]); // the step
            prev = cols.data[1][r];
        }
        polyline(svg, pts, frame, kBlue);
        break;
    }
    case PlotKind::HistogramFit: {
        Columns cols(table, {"bin_lo", "bin_hi", "count", "fit"});
        Frame frame;
        frame.x_lo = *std::min_element(cols.data[0].begin(), cols.data[0].end());
        frame.x_hi = *std::max_element(cols.data[1].begin(), cols.data[1].end());
        frame.y_lo = 0.0;
        frame.y_hi = std::max(*std::max_element(cols.data[2].begin(), cols.data[2].end()),
                              *std::max_element(cols.data[3].begin(), cols.data[3].end()));
        frame.pad_degenerate();
        draw_axes(svg, frame, "value", "count");
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            const double x0 = frame.px(cols.data[0][r]);
            const double x1 = frame.px(cols.data[1][r]);
            const double y = frame.py(cols.data[2][r]);
            svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y) + "\" width=\"" +
                   fmt(std::max(x1 - x0 - 1.0, 0.5)) + "\" height=\"" + fmt(kBottom - y) +
                   "\" fill=\"" + kBlue + "\" fill-opacity=\"0.6\"/>\n";
        }
        std::vector<std::pair<double, double>> pts;
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            pts.emplace_back((cols.data[0][r] + cols.data[1][r]) / 2.0, cols.data[3][r]);
        }
        polyline(svg, pts, frame, kRed);
        break;
    }
    case PlotKind::Acf: {
        Columns cols(table, {"lag", "correlation", "band"});
        Frame frame = frame_of(cols.data[0], cols.data[1]);
        frame.y_lo = std::min(frame.y_lo, -cols.data[2][0] * 1.5);
        frame.y_hi = std::max({frame.y_hi, 1.0, cols.data[2][0] * 1.5});
        frame.pad_degenerate();
        draw_axes(svg, frame, "lag", "correlation");
        const double band = cols.data[2][0];
        polyline(svg, {{frame.x_lo, band}, {frame.x_hi, band}}, frame, kGray, "4 3");
        polyline(svg, {{frame.x_lo, -band}, {frame.x_hi, -band}}, frame, kGray, "4 3");
        polyline(svg, {{frame.x_lo, 0.0}, {frame.x_hi, 0.0}}, frame, kGray);
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            const double x = frame.px(cols.data[0][r]);
            svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(frame.py(0.0)) + "\" x2=\"" +
                   fmt(x) + "\" y2=\"" + fmt(frame.py(cols.data[1][r])) + "\" stroke=\"" +
                   kBlue + "\" stroke-width=\"2\"/>\n";
        }
        break;
    }
    case PlotKind::Scatter: {
        Columns cols(table, {"x", "y"});
        const Frame frame = frame_of(cols.data[0], cols.data[1]);
        draw_axes(svg, frame, table.columns[table.col("x")], table.columns[table.col("y")]);
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            svg += "<circle cx=\"" + fmt(frame.px(cols.data[0][r])) + "\" cy=\"" +
                   fmt(frame.py(cols.data[1][r])) + "\" r=\"2\" fill=\"" + kBlue +
                   "\" fill-opacity=\"0.7\"/>\n";
        }
        break;
    }
    case PlotKind::SeriesOverlay: {
        Columns cols(table, {"index", "measured", "predicted"});
        std::vector<double> all_y(cols.data[1]);
        all_y.insert(all_y.end(), cols.data[2].begin(), cols.data[2].end());
        const Frame frame = frame_of(cols.data[0], all_y);
        draw_axes(svg, frame, "index", "value");
        std::vector<std::pair<double, double>> measured, predicted;
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            measured.emplace_back(cols.data[0][r], cols.data[1][r]);
            predicted.emplace_back(cols.data[0][r], cols.data[2][r]);
        }
        polyline(svg, measured, frame, kBlue);
        polyline(svg, predicted, frame, kRed, "5 3");
        svg += "<line x1=\"620\" y1=\"30\" x2=\"650\" y2=\"30\" stroke=\"";
        svg += kBlue;
        svg += "\" stroke-width=\"1.5\"/>\n<text x=\"656\" y=\"34\" font-size=\"12\">measured"
               "</text>\n";
        svg += "<line x1=\"620\" y1=\"48\" x2=\"650\" y2=\"48\" stroke=\"";
        svg += kRed;
        svg += "\" stroke-width=\"1.5\" stroke-dasharray=\"5 3\"/>\n"
               "<text x=\"656\" y=\"52\" font-size=\"12\">predicted</text>\n";
        break;
    }
    case PlotKind::Roc: {
        Columns cols(table, {"fpr", "tpr"});
        Frame frame;
        frame.x_lo = 0.0;
        frame.x_hi = 1.0;
        frame.y_lo = 0.0;
        frame.y_hi = 1.0;
        draw_axes(svg, frame, "false positive rate", "true positive rate");
        polyline(svg, {{0.0, 0.0}, {1.0, 1.0}}, frame, kGray, "4 3");
        std::vector<std::pair<double, double>> pts;
        double auc = 0.0;
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            pts.emplace_back(cols.data[0][r], cols.data[1][r]);
            if (r > 0) {
                auc += (cols.data[0][r] - cols.data[0][r - 1]) *
                       (cols.data[1][r] + cols.data[1][r - 1]) / 2.0;
            }
        }
        polyline(svg, pts, frame, kBlue);
        char label[48];
        std::snprintf(label, sizeof(label), "AUC = %.3f", auc);
        svg += "<text x=\"600\" y=\"420\" font-size=\"14\">";
        svg += label;
        svg += "</text>\n";
        break;
    }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace chainpulse::cli
