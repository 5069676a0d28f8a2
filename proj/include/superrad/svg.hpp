#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "superrad/timeseries.hpp"

namespace superrad {

struct PlotOptions {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    int width = 720;
    int height = 440;
};

/// Static line plot, one polyline per channel (complex channels appear as
/// <label>_re and <label>_im).  Pure function of its inputs: no timestamps,
/// no randomness, fixed palette, so identical data gives identical bytes.
std::string line_plot_svg(const TimeSeries& series, const PlotOptions& opt);

/// Static heatmap of values(iy, ix) on the grid xs[ix] x ys[iy] (row 0 drawn
/// at the bottom), with a color bar; same determinism contract.
std::string heatmap_svg(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const Eigen::MatrixXd& values, const PlotOptions& opt);

}  // namespace superrad
