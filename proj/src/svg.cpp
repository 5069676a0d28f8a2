#include "superrad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace superrad {

namespace {

const char* kPalette[] = {"#1b6ca8", "#c43d3d", "#3d9950", "#8a5fbf",
                          "#c78a1e", "#4ea6a6", "#9b5d43", "#5c5c5c"};
constexpr int kPaletteSize = 8;
constexpr int kMarginLeft = 62, kMarginRight = 16, kMarginTop = 34,
              kMarginBottom = 46;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void widen(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double d = 0.05 * (hi - lo);
            lo -= d;
            hi += d;
        }
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

void open_svg(std::string& out, const PlotOptions& opt) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!opt.title.empty())
        out += "<text x=\"" + fmt(opt.width / 2.0) +
               "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\""
               " font-size=\"15\">" +
               opt.title + "</text>\n";
}

void draw_frame(std::string& out, const PlotOptions& opt, const Range& xr,
                const Range& yr) {
    const double w = opt.width - kMarginLeft - kMarginRight;
    const double h = opt.height - kMarginTop - kMarginBottom;
    out += "<rect x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kMarginTop) +
           "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double f = k / 4.0;
        const double x = kMarginLeft + f * w;
        const double y = kMarginTop + h - f * h;
        out += "<text x=\"" + fmt(x) + "\" y=\"" +
               fmt(opt.height - kMarginBottom + 18.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\""
               " font-size=\"11\">" +
               fmt(xr.lo + f * (xr.hi - xr.lo)) + "</text>\n";
        out += "<text x=\"" + fmt(kMarginLeft - 6.0) + "\" y=\"" +
               fmt(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\""
               " font-size=\"11\">" +
               fmt(yr.lo + f * (yr.hi - yr.lo)) + "</text>\n";
    }
    out += "<text x=\"" + fmt(kMarginLeft + w / 2.0) + "\" y=\"" +
           fmt(opt.height - 8.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\""
           " font-size=\"12\">" +
           opt.x_label + "</text>\n";
    if (!opt.y_label.empty())
        out += "<text x=\"14\" y=\"" + fmt(kMarginTop + h / 2.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\""
               " font-size=\"12\" transform=\"rotate(-90 14 " +
               fmt(kMarginTop + h / 2.0) + ")\">" + opt.y_label +
               "</text>\n";
}

struct NamedTrack {
    std::string label;
    std::vector<double> values;
};

std::vector<NamedTrack> flatten(const TimeSeries& series) {
    std::vector<NamedTrack> tracks;
    for (const auto& ch : series.channels) {
        NamedTrack re{ch.label, {}};
        re.values.reserve(ch.values.size());
        for (auto v : ch.values) re.values.push_back(v.real());
        if (ch.complex_valued) {
            re.label += "_re";
            NamedTrack im{ch.label + "_im", {}};
            im.values.reserve(ch.values.size());
            for (auto v : ch.values) im.values.push_back(v.imag());
            tracks.push_back(std::move(re));
            tracks.push_back(std::move(im));
        } else {
            tracks.push_back(std::move(re));
        }
    }
    return tracks;
}

}  // namespace

std::string line_plot_svg(const TimeSeries& series, const PlotOptions& opt) {
    if (series.times.empty())
        throw std::invalid_argument("line_plot_svg: empty time grid");
    const auto tracks = flatten(series);

    Range xr{series.times.front(), series.times.front()};
    for (double t : series.times) xr.widen(t);
    Range yr{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    yr.lo = tracks.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    yr.hi = tracks.empty() ? 1.0 : -std::numeric_limits<double>::infinity();
    for (const auto& tr : tracks)
        for (double v : tr.values) {
            if (!std::isfinite(v)) continue;
            yr.lo = std::min(yr.lo, v);
            yr.hi = std::max(yr.hi, v);
        }
    if (!std::isfinite(yr.lo)) {
        yr.lo = 0.0;
        yr.hi = 1.0;
    }
    xr.pad();
    yr.pad();

    std::string out;
    open_svg(out, opt);
    draw_frame(out, opt, xr, yr);
    const double w = opt.width - kMarginLeft - kMarginRight;
    const double h = opt.height - kMarginTop - kMarginBottom;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
        const char* color = kPalette[k % kPaletteSize];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            const double v = tracks[k].values[i];
            if (!std::isfinite(v)) continue;
            out += fmt(kMarginLeft + xr.frac(series.times[i]) * w) + "," +
                   fmt(kMarginTop + h - yr.frac(v) * h) + " ";
        }
        out += "\"/>\n";
        // legend swatch + label, stacked top right inside the frame
        const double ly = kMarginTop + 14.0 + 15.0 * double(k);
        out += "<line x1=\"" + fmt(kMarginLeft + w - 110.0) + "\" y1=\"" +
               fmt(ly - 4.0) + "\" x2=\"" + fmt(kMarginLeft + w - 92.0) +
               "\" y2=\"" + fmt(ly - 4.0) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"2\"/>\n<text x=\"" +
               fmt(kMarginLeft + w - 88.0) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" +
               tracks[k].label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

namespace {

std::string heat_color(double f) {
    // two-segment map: deep blue -> pale yellow -> brick red
    f = std::clamp(f, 0.0, 1.0);
    auto lerp = [](int a, int b, double t) {
        return static_cast<int>(std::lround(a + (b - a) * t));
    };
    int r, g, b;
    if (f < 0.5) {
        const double t = 2.0 * f;
        r = lerp(0x0b, 0xf2, t);
        g = lerp(0x3d, 0xef, t);
        b = lerp(0x91, 0x8d, t);
    } else {
        const double t = 2.0 * f - 1.0;
        r = lerp(0xf2, 0xb5, t);
        g = lerp(0xef, 0x1f, t);
        b = lerp(0x8d, 0x1f, t);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string heatmap_svg(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const Eigen::MatrixXd& values,
                        const PlotOptions& opt) {
    if (xs.empty() || ys.empty())
        throw std::invalid_argument("heatmap_svg: empty axes");
    if (values.rows() != static_cast<Eigen::Index>(ys.size()) ||
        values.cols() != static_cast<Eigen::Index>(xs.size()))
        throw std::invalid_argument("heatmap_svg: grid shape mismatch");

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Eigen::Index r = 0; r < values.rows(); ++r)
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            const double v = values(r, c);
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (!(hi > lo)) hi = lo + 1.0;

    std::string out;
    open_svg(out, opt);
    const double barw = 46.0;  // room for the color bar on the right
    const double w = opt.width - kMarginLeft - kMarginRight - barw;
    const double h = opt.height - kMarginTop - kMarginBottom;
    const double cw = w / double(xs.size());
    const double chh = h / double(ys.size());
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            const double v = values(Eigen::Index(iy), Eigen::Index(ix));
            const double f = (v - lo) / (hi - lo);
            out += "<rect x=\"" + fmt(kMarginLeft + ix * cw) + "\" y=\"" +
                   fmt(kMarginTop + h - (iy + 1) * chh) + "\" width=\"" +
                   fmt(cw + 0.5) + "\" height=\"" + fmt(chh + 0.5) +
                   "\" fill=\"" +
                   (std::isfinite(v) ? heat_color(f) : std::string("#dddddd")) +
                   "\"/>\n";
        }
    }
    Range xr{xs.front(), xs.back()};
    Range yr{ys.front(), ys.back()};
    if (!(xr.hi > xr.lo)) xr.hi = xr.lo + 1.0;
    if (!(yr.hi > yr.lo)) yr.hi = yr.lo + 1.0;
    PlotOptions frame_opt = opt;
    frame_opt.width = static_cast<int>(opt.width - barw);
    draw_frame(out, frame_opt, xr, yr);
    // color bar
    const double bx = opt.width - kMarginRight - barw + 14.0;
    const int strips = 48;
    for (int k = 0; k < strips; ++k) {
        const double f = (k + 0.5) / strips;
        out += "<rect x=\"" + fmt(bx) + "\" y=\"" +
               fmt(kMarginTop + h - (k + 1) * h / strips) + "\" width=\"14\""
               " height=\"" +
               fmt(h / strips + 0.5) + "\" fill=\"" + heat_color(f) +
               "\"/>\n";
    }
    out += "<text x=\"" + fmt(bx + 18.0) + "\" y=\"" + fmt(kMarginTop + h) +
           "\" font-family=\"sans-serif\" font-size=\"10\">" + fmt(lo) +
           "</text>\n";
    out += "<text x=\"" + fmt(bx + 18.0) + "\" y=\"" + fmt(kMarginTop + 8.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\">" + fmt(hi) +
           "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace superrad
