#include "oscnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace oscnet {

ComparisonReport compare(const SolutionTrace& dnn, const SolutionTrace& ref) {
    if (dnn.size() != ref.size()) {
        throw std::invalid_argument("compare: traces differ in length (" +
                                    std::to_string(dnn.size()) + " vs " +
                                    std::to_string(ref.size()) + ")");
    }
    if (dnn.size() == 0) throw std::invalid_argument("compare: empty traces");
    for (std::size_t i = 0; i < dnn.size(); ++i) {
        if (dnn.times[i] != ref.times[i]) {
            throw std::invalid_argument("compare: grids differ first at t = " +
                                        std::to_string(dnn.times[i]) + " vs " +
                                        std::to_string(ref.times[i]));
        }
    }

    ComparisonReport report;
    report.grid = dnn.times;
    report.dnn_values = dnn.values;
    report.ref_values = ref.values;
    report.errors.resize(dnn.size());
    double sum_abs = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < dnn.size(); ++i) {
        const double e = dnn.values[i] - ref.values[i];
        report.errors[i] = e;
        report.max_abs_error = std::max(report.max_abs_error, std::abs(e));
        sum_abs += std::abs(e);
        sum_sq += e * e;
    }
    report.mean_abs_error = sum_abs / static_cast<double>(dnn.size());
    report.rms_error = std::sqrt(sum_sq / static_cast<double>(dnn.size()));
    return report;
}

void write_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open comparison file: " + path.string());
    out << "t,u_dnn,u_ref,error\n";
    char buf[32];
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", report.grid[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", report.dnn_values[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", report.ref_values[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", report.errors[i]);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("comparison write failed: " + path.string());
}

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

void write_line_plot_svg(const std::vector<PlotSeries>& series, const std::string& title,
                         bool log_y, const std::filesystem::path& path) {
    if (series.empty()) throw std::invalid_argument("write_line_plot_svg: no series");
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw std::invalid_argument("write_line_plot_svg: empty or ragged series '" +
                                        s.label + "'");
        }
    }

    auto ty = [log_y](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };

    double xmin = series[0].x[0], xmax = xmin;
    double ymin = ty(series[0].y[0]), ymax = ymin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - ty(y)) / (ymax - ymin) * plot_h; };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open plot file: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    // axes
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x=\"" << px(fx) << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(fx) << "</text>\n";
        const std::string ylab = log_y ? ("1e" + fmt(fy)) : fmt(fy);
        out << "<text x=\"" << kMarginLeft - 6 << "\" y=\""
            << kMarginTop + (ymax - fy) / (ymax - ymin) * plot_h + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << ylab
            << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            out << fmt(px(series[s].x[i])) << ',' << fmt(py(series[s].y[i])) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kMarginLeft + 10 << "\" y=\"" << kMarginTop + 16 + 16 * s
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
            << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("plot write failed: " + path.string());
}

void write_bar_plot_svg(const std::vector<std::string>& labels,
                        const std::vector<double>& heights, const std::string& title,
                        const std::filesystem::path& path) {
    if (labels.empty() || labels.size() != heights.size()) {
        throw std::invalid_argument("write_bar_plot_svg: bad labels/heights");
    }
    double hmax = 0.0;
    for (double h : heights) {
        if (std::isfinite(h)) hmax = std::max(hmax, h);
    }
    if (hmax == 0.0) hmax = 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double slot = plot_w / static_cast<double>(labels.size());

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open plot file: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double h = std::isfinite(heights[i]) ? heights[i] : 0.0;
        const double bar_h = h / hmax * plot_h;
        const double x = kMarginLeft + slot * (static_cast<double>(i) + 0.2);
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(kMarginTop + plot_h - bar_h)
            << "\" width=\"" << fmt(slot * 0.6) << "\" height=\"" << fmt(bar_h)
            << "\" fill=\"" << kPalette[i % 5] << "\"/>\n";
        out << "<text x=\"" << fmt(x + slot * 0.3) << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << labels[i] << "</text>\n";
        out << "<text x=\"" << fmt(x + slot * 0.3) << "\" y=\""
            << fmt(kMarginTop + plot_h - bar_h - 5)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(heights[i]) << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("plot write failed: " + path.string());
}

}  // namespace oscnet
