#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace framefit::cli
{

namespace
{

constexpr double width   = 640;
constexpr double height  = 440;
constexpr double left    = 70;
constexpr double right   = 150;
constexpr double top     = 40;
constexpr double bottom  = 50;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Axis
{
    double lo = 0.0;
    double hi = 1.0;
    bool log  = false;

    double map(double v) const
    {
        const double t = log ? std::log10(v) : v;
        return (t - lo) / (hi - lo);
    }

    bool usable(double v) const
    {
        return std::isfinite(v) && (!log || v > 0.0);
    }
};

Axis fit_axis(const std::vector<const std::vector<double>*>& data, bool log,
              const std::vector<double>& extra = {})
{
    Axis a;
    a.log     = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double v) {
        if (!a.usable(v))
        {
            return;
        }
        const double t = log ? std::log10(v) : v;
        lo             = std::min(lo, t);
        hi             = std::max(hi, t);
    };
    for (const auto* d : data)
    {
        for (double v : *d)
        {
            take(v);
        }
    }
    for (double v : extra)
    {
        take(v);
    }
    if (!std::isfinite(lo))
    {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12)
    {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.04 * (hi - lo);
    a.lo             = lo - pad;
    a.hi             = hi + pad;
    return a;
}

std::string color_scale(double t)
{
    t = std::clamp(t, 0.0, 1.0);
    const int r = int(255 * std::clamp(1.5 - std::abs(4 * t - 3), 0.0, 1.0));
    const int g = int(255 * std::clamp(1.5 - std::abs(4 * t - 2), 0.0, 1.0));
    const int b = int(255 * std::clamp(1.5 - std::abs(4 * t - 1), 0.0, 1.0));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

class Canvas
{
public:
    explicit Canvas(const std::string& path) : out_(path)
    {
        if (!out_)
        {
            throw std::runtime_error("cannot write " + path);
        }
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
             << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    ~Canvas()
    {
        out_ << "</svg>\n";
    }

    double px(double t) const
    {
        return left + t * (width - left - right);
    }

    double py(double t) const
    {
        return height - bottom - t * (height - top - bottom);
    }

    void frame(const Axis& ax, const Axis& ay, const PlotOptions& o, bool ticks = true)
    {
        out_ << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\""
             << width - left - right << "\" height=\"" << height - top - bottom
             << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; ticks && i <= 4; ++i)
        {
            const double t  = i / 4.0;
            const double vx = ax.lo + t * (ax.hi - ax.lo);
            const double vy = ay.lo + t * (ay.hi - ay.lo);
            out_ << "<text x=\"" << px(t) << "\" y=\"" << height - bottom + 16
                 << "\" text-anchor=\"middle\">" << (ax.log ? "1e" + num(vx) : num(vx))
                 << "</text>\n";
            out_ << "<text x=\"" << left - 6 << "\" y=\"" << py(t) + 4
                 << "\" text-anchor=\"end\">" << (ay.log ? "1e" + num(vy) : num(vy))
                 << "</text>\n";
        }
        out_ << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">"
             << escape(o.title) << "</text>\n";
        out_ << "<text x=\"" << px(0.5) << "\" y=\"" << height - 10
             << "\" text-anchor=\"middle\">" << escape(o.xlabel) << "</text>\n";
        out_ << "<text x=\"15\" y=\"" << py(0.5) << "\" transform=\"rotate(-90 15 " << py(0.5)
             << ")\" text-anchor=\"middle\">" << escape(o.ylabel) << "</text>\n";
    }

    std::ofstream& stream()
    {
        return out_;
    }

private:
    std::ofstream out_;
};

} // namespace

void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& options)
{
    std::vector<const std::vector<double>*> xs;
    std::vector<const std::vector<double>*> ys;
    for (const auto& s : series)
    {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    const Axis ax = fit_axis(xs, options.logx);
    const Axis ay = fit_axis(ys, options.logy, options.hlines);
    Canvas c(path);
    c.frame(ax, ay, options);
    auto& out = c.stream();
    for (double h : options.hlines)
    {
        if (!ay.usable(h))
        {
            continue;
        }
        out << "<line x1=\"" << c.px(0) << "\" x2=\"" << c.px(1) << "\" y1=\"" << c.py(ay.map(h))
            << "\" y2=\"" << c.py(ay.map(h))
            << "\" stroke=\"black\" stroke-dasharray=\"5,4\"/>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k)
    {
        const auto& s     = series[k];
        const char* color = palette[k % 8];
        std::string poly;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i]))
            {
                continue;
            }
            const double x = c.px(ax.map(s.x[i]));
            const double y = c.py(ay.map(s.y[i]));
            if (s.markers)
            {
                out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"" << color
                    << "\"/>\n";
            }
            else
            {
                poly += num(x) + "," + num(y) + " ";
            }
        }
        if (!poly.empty())
        {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
                << poly << "\"/>\n";
        }
        const double ly = top + 16 + 18 * double(k);
        out << "<rect x=\"" << width - right + 10 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << width - right + 28 << "\" y=\"" << ly << "\">" << escape(s.label)
            << "</text>\n";
    }
}

void write_heatmap(const std::string& path, const std::vector<double>& xs,
                   const std::vector<double>& ys, const std::vector<double>& values,
                   const PlotOptions& options, bool log_values)
{
    if (values.size() != xs.size() * ys.size() || xs.empty() || ys.empty())
    {
        throw std::invalid_argument("write_heatmap: value count does not match the axes");
    }
    auto key = [&](double v) { return log_values ? std::log10(v) : v; };
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values)
    {
        const double t = key(v);
        if (std::isfinite(t))
        {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!(hi > lo))
    {
        hi = lo + 1.0;
    }
    Axis ax{-0.5, double(xs.size()) - 0.5, false};
    Axis ay{-0.5, double(ys.size()) - 0.5, false};
    Canvas c(path);
    auto& out      = c.stream();
    const double w = (c.px(1) - c.px(0)) / double(xs.size());
    const double h = (c.py(0) - c.py(1)) / double(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        for (std::size_t j = 0; j < ys.size(); ++j)
        {
            const double t = key(values[i * ys.size() + j]);
            const std::string fill =
                std::isfinite(t) ? color_scale((t - lo) / (hi - lo)) : std::string("#cccccc");
            out << "<rect x=\"" << c.px(ax.map(double(i) - 0.5)) << "\" y=\""
                << c.py(ay.map(double(j) + 0.5)) << "\" width=\"" << w << "\" height=\"" << h
                << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    c.frame(ax, ay, options, false);
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        out << "<text x=\"" << c.px(ax.map(double(i))) << "\" y=\"" << height - bottom + 30
            << "\" text-anchor=\"middle\" font-size=\"9\">" << num(xs[i]) << "</text>\n";
    }
    for (std::size_t j = 0; j < ys.size(); ++j)
    {
        out << "<text x=\"" << left - 30 << "\" y=\"" << c.py(ay.map(double(j))) + 3
            << "\" text-anchor=\"end\" font-size=\"9\">" << num(ys[j]) << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k)
    {
        const double t = k / 4.0;
        out << "<rect x=\"" << width - right + 10 << "\" y=\"" << top + 20 * k
            << "\" width=\"14\" height=\"14\" fill=\"" << color_scale(t) << "\"/>\n"
            << "<text x=\"" << width - right + 30 << "\" y=\"" << top + 20 * k + 11 << "\">"
            << (log_values ? "1e" : "") << num(lo + t * (hi - lo)) << "</text>\n";
    }
}

void write_scatter_map(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const std::vector<double>& values,
                       const PlotOptions& options)
{
    const Axis ax = fit_axis({&x}, false);
    const Axis ay = fit_axis({&y}, false);
    double lo     = std::numeric_limits<double>::infinity();
    double hi     = -lo;
    for (double v : values)
    {
        if (std::isfinite(v))
        {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi > lo))
    {
        hi = lo + 1.0;
    }
    Canvas c(path);
    c.frame(ax, ay, options);
    auto& out = c.stream();
    for (std::size_t i = 0; i < x.size() && i < y.size() && i < values.size(); ++i)
    {
        out << "<circle cx=\"" << c.px(ax.map(x[i])) << "\" cy=\"" << c.py(ay.map(y[i]))
            << "\" r=\"2\" fill=\"" << color_scale((values[i] - lo) / (hi - lo)) << "\"/>\n";
    }
    for (int k = 0; k <= 4; ++k)
    {
        const double t = k / 4.0;
        out << "<rect x=\"" << width - right + 10 << "\" y=\"" << top + 20 * k
            << "\" width=\"14\" height=\"14\" fill=\"" << color_scale(t) << "\"/>\n"
            << "<text x=\"" << width - right + 30 << "\" y=\"" << top + 20 * k + 11 << "\">"
            << num(lo + t * (hi - lo)) << "</text>\n";
    }
}

} // namespace framefit::cli
