#ifndef FRAMEFIT_TOOLS_SVG_HPP
#define FRAMEFIT_TOOLS_SVG_HPP

#include <string>
#include <vector>

namespace framefit::cli
{

struct Series
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

struct PlotOptions
{
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    /// Dashed horizontal reference lines.
    std::vector<double> hlines;
};

void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& options);

/// `values` is row-major with x outer: values[i * ys.size() + j] at (xs[i], ys[j]).
/// Colours map log10 of the values when `log_values` is set.
void write_heatmap(const std::string& path, const std::vector<double>& xs,
                   const std::vector<double>& ys, const std::vector<double>& values,
                   const PlotOptions& options, bool log_values);

/// Scattered points coloured by value, for 2-D domains.
void write_scatter_map(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const std::vector<double>& values,
                       const PlotOptions& options);

} // namespace framefit::cli

#endif
