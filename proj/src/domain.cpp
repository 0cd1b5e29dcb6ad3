#include <framefit/domain.hpp>

#include <cmath>
#include <sstream>

namespace framefit
{

namespace
{

void check_box(const Point& lower, const Point& upper)
{
    if (lower.size() == 0 || lower.size() != upper.size())
    {
        throw InvalidArgument("domain: bounds must have equal, positive dimension");
    }
    for (Index i = 0; i < lower.size(); ++i)
    {
        if (!(lower(i) < upper(i)) || !std::isfinite(lower(i)) ||
            !std::isfinite(upper(i)))
        {
            throw InvalidArgument("domain: lower bound must be below upper bound");
        }
    }
}

// Visit the midpoints of an n^d grid on [lower, upper].
template <typename F>
void for_each_midpoint(const Point& lower, const Point& upper, Index n, F&& visit)
{
    const Index d = lower.size();
    Index count   = 1;
    for (Index i = 0; i < d; ++i)
    {
        count *= n;
    }
    Point x(d);
    for (Index flat = 0; flat < count; ++flat)
    {
        Index rem = flat;
        for (Index i = d - 1; i >= 0; --i)
        {
            const Index j = rem % n;
            rem /= n;
            x(i) = lower(i) + (upper(i) - lower(i)) * (double(j) + 0.5) / double(n);
        }
        visit(x);
    }
}

} // namespace

Domain::Domain() : lower_(make_point(0.0)), upper_(make_point(1.0)), measure_(1.0), label_("interval[0,1]")
{
}

Domain Domain::interval(double a, double b)
{
    Domain d;
    d.kind_  = Kind::interval;
    d.lower_ = make_point(a);
    d.upper_ = make_point(b);
    check_box(d.lower_, d.upper_);
    d.measure_ = b - a;
    std::ostringstream os;
    os << "interval[" << a << "," << b << "]";
    d.label_ = os.str();
    return d;
}

Domain Domain::box(const Point& lower, const Point& upper)
{
    check_box(lower, upper);
    Domain d;
    d.kind_    = lower.size() == 1 ? Kind::interval : Kind::box;
    d.lower_   = lower;
    d.upper_   = upper;
    d.measure_ = d.box_measure();
    std::ostringstream os;
    os << "box";
    for (Index i = 0; i < lower.size(); ++i)
    {
        os << "[" << lower(i) << "," << upper(i) << "]";
    }
    d.label_ = os.str();
    return d;
}

Domain Domain::masked(const Point& lower, const Point& upper, Indicator indicator,
                      Index resolution)
{
    check_box(lower, upper);
    if (!indicator)
    {
        throw InvalidArgument("domain: masked domain needs an indicator");
    }
    if (resolution < 1)
    {
        throw InvalidArgument("domain: reference resolution must be positive");
    }
    Domain d;
    d.kind_      = Kind::masked;
    d.lower_     = lower;
    d.upper_     = upper;
    d.indicator_ = std::make_shared<const Indicator>(std::move(indicator));

    Index inside = 0;
    Index total  = 0;
    for_each_midpoint(lower, upper, resolution, [&](const Point& x) {
        ++total;
        if ((*d.indicator_)(x))
        {
            ++inside;
        }
    });
    if (inside == 0)
    {
        throw InvalidArgument("domain: mask is empty on the reference grid");
    }
    d.measure_ = d.box_measure() * double(inside) / double(total);
    d.label_   = "masked";
    return d;
}

Domain Domain::disk(double cx, double cy, double radius)
{
    return disk(cx, cy, radius, make_point(cx - radius, cy - radius),
                make_point(cx + radius, cy + radius));
}

Domain Domain::disk(double cx, double cy, double radius, const Point& lower,
                    const Point& upper, Index resolution)
{
    if (!(radius > 0.0))
    {
        throw InvalidArgument("domain: disk radius must be positive");
    }
    const double r2 = radius * radius;
    Domain d        = masked(
        lower, upper,
        [cx, cy, r2](const Point& x) {
            const double dx = x(0) - cx;
            const double dy = x(1) - cy;
            return dx * dx + dy * dy <= r2;
        },
        resolution);
    std::ostringstream os;
    os << "disk(" << cx << "," << cy << ";" << radius << ")";
    d.label_ = os.str();
    return d;
}

double Domain::box_measure() const noexcept
{
    double v = 1.0;
    for (Index i = 0; i < lower_.size(); ++i)
    {
        v *= upper_(i) - lower_(i);
    }
    return v;
}

bool Domain::in_bounding_box(const Point& x) const
{
    if (x.size() != lower_.size())
    {
        return false;
    }
    for (Index i = 0; i < x.size(); ++i)
    {
        if (x(i) < lower_(i) || x(i) > upper_(i))
        {
            return false;
        }
    }
    return true;
}

bool Domain::contains(const Point& x) const
{
    if (!in_bounding_box(x))
    {
        return false;
    }
    return kind_ != Kind::masked || (*indicator_)(x);
}

std::string Domain::describe() const
{
    return label_;
}

} // namespace framefit
