#ifndef SOCLIN_SVG_HPP
#define SOCLIN_SVG_HPP

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "soclin/common.hpp"
#include "soclin/fit.hpp"

namespace soclin {

// Hand-emitted SVG scatter/line plot. The contract is structural (axes,
// circles for points, polylines for curves, text labels), not pixel-exact;
// output is deterministic for identical inputs.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label, bool log_x = false,
            bool log_y = false)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)),
          log_x_(log_x), log_y_(log_y) {}

    void add_points(const std::vector<Point>& pts, const std::string& color = "#1f6fb2") {
        scatter_.push_back({pts, color});
        extend_range(pts);
    }

    void add_curve(const std::vector<Point>& pts, const std::string& color = "#c23b22",
                   const std::string& label = "") {
        curves_.push_back({pts, color, label});
        extend_range(pts);
    }

    void add_annotation(const std::string& text) { annotations_.push_back(text); }

    std::string render() const {
        if (!have_range_) throw EmptyInput("SvgPlot: nothing to draw");
        std::string out;
        out.reserve(4096);
        append(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                    "viewBox=\"0 0 %d %d\">\n", kW, kH, kW, kH);
        append(out, "  <rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>\n", kW, kH);

        // axes
        append(out, "  <line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", kM,
               kH - kM, kW - kM, kH - kM);
        append(out, "  <line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", kM, kM,
               kM, kH - kM);

        for (int i = 0; i <= kTicks; ++i) {
            const double fx = flo_x() + (fhi_x() - flo_x()) * i / kTicks;
            const double fy = flo_y() + (fhi_y() - flo_y()) * i / kTicks;
            const double px = tx(fx);
            const double py = ty(fy);
            append(out, "  <line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"black\"/>\n",
                   px, kH - kM, px, kH - kM + 5);
            append(out, "  <text x=\"%.1f\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\">%s"
                        "</text>\n", px, kH - kM + 18, fmt_val(unscale(fx, log_x_)).c_str());
            append(out, "  <line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"black\"/>\n",
                   kM - 5, py, kM, py);
            append(out, "  <text x=\"%d\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%s"
                        "</text>\n", kM - 8, py + 4, fmt_val(unscale(fy, log_y_)).c_str());
        }

        for (const auto& series : curves_) {
            std::string pts;
            for (const Point& p : series.points) {
                if (!plottable(p)) continue;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", tx(scale(p.x, log_x_)),
                              ty(scale(p.y, log_y_)));
                pts += buf;
            }
            if (!pts.empty()) pts.pop_back();
            // built by concatenation: the points list can exceed any fixed buffer
            out += "  <polyline fill=\"none\" stroke=\"" + series.color +
                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        }
        for (const auto& series : scatter_) {
            for (const Point& p : series.points) {
                if (!plottable(p)) continue;
                append(out, "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                       tx(scale(p.x, log_x_)), ty(scale(p.y, log_y_)), series.color.c_str());
            }
        }

        append(out, "  <text x=\"%d\" y=\"%d\" font-size=\"15\" text-anchor=\"middle\">%s</text>\n",
               kW / 2, kM - 16, title_.c_str());
        append(out, "  <text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
               kW / 2, kH - 10, x_label_.c_str());
        append(out, "  <text x=\"14\" y=\"%d\" font-size=\"12\" text-anchor=\"middle\" "
                    "transform=\"rotate(-90 14 %d)\">%s</text>\n", kH / 2, kH / 2, y_label_.c_str());
        int y = kM + 14;
        for (const std::string& note : annotations_) {
            append(out, "  <text x=\"%d\" y=\"%d\" font-size=\"12\">%s</text>\n", kW - kM - 200, y,
                   note.c_str());
            y += 16;
        }
        int ly = y + 4;
        for (const auto& series : curves_) {
            if (series.label.empty()) continue;
            append(out, "  <line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"%s\" "
                        "stroke-width=\"1.5\"/>\n", kW - kM - 200, ly - 4, kW - kM - 176, ly - 4,
                   series.color.c_str());
            append(out, "  <text x=\"%d\" y=\"%d\" font-size=\"12\">%s</text>\n", kW - kM - 170, ly,
                   series.label.c_str());
            ly += 16;
        }
        out += "</svg>\n";
        return out;
    }

private:
    struct Series {
        std::vector<Point> points;
        std::string color;
        std::string label;
    };
    struct Scatter {
        std::vector<Point> points;
        std::string color;
    };

    static constexpr int kW = 640;
    static constexpr int kH = 480;
    static constexpr int kM = 56;
    static constexpr int kTicks = 4;

    bool plottable(const Point& p) const {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
        if (log_x_ && p.x <= 0.0) return false;
        if (log_y_ && p.y <= 0.0) return false;
        return true;
    }

    static double scale(double v, bool log) { return log ? std::log10(v) : v; }
    static double unscale(double v, bool log) { return log ? std::pow(10.0, v) : v; }

    void extend_range(const std::vector<Point>& pts) {
        for (const Point& p : pts) {
            if (!plottable(p)) continue;
            const double fx = scale(p.x, log_x_);
            const double fy = scale(p.y, log_y_);
            if (!have_range_) {
                min_x_ = max_x_ = fx;
                min_y_ = max_y_ = fy;
                have_range_ = true;
            } else {
                min_x_ = std::min(min_x_, fx);
                max_x_ = std::max(max_x_, fx);
                min_y_ = std::min(min_y_, fy);
                max_y_ = std::max(max_y_, fy);
            }
        }
    }

    double flo_x() const { return min_x_; }
    double fhi_x() const { return max_x_ > min_x_ ? max_x_ : min_x_ + 1.0; }
    double flo_y() const { return min_y_; }
    double fhi_y() const { return max_y_ > min_y_ ? max_y_ : min_y_ + 1.0; }

    double tx(double fx) const {
        return kM + (fx - flo_x()) / (fhi_x() - flo_x()) * (kW - 2 * kM);
    }
    double ty(double fy) const {
        return kH - kM - (fy - flo_y()) / (fhi_y() - flo_y()) * (kH - 2 * kM);
    }

    static std::string fmt_val(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }

    static void append(std::string& out, const char* fmt, ...) {
        char buf[1024];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, args);
        va_end(args);
        out += buf;
    }

    std::string title_, x_label_, y_label_;
    bool log_x_ = false, log_y_ = false;
    bool have_range_ = false;
    double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
    std::vector<Scatter> scatter_;
    std::vector<Series> curves_;
    std::vector<std::string> annotations_;
};

} // namespace soclin

#endif // SOCLIN_SVG_HPP
