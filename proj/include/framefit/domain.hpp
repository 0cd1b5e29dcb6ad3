///
/// \file domain.hpp
///
/// Approximation domains: intervals, boxes and masked subsets of a box.
///
#ifndef FRAMEFIT_DOMAIN_HPP
#define FRAMEFIT_DOMAIN_HPP

#include <functional>
#include <memory>
#include <string>

#include <framefit/types.hpp>

namespace framefit
{

/// A bounded domain \f$\Omega\f$ together with its bounding box and measure.
///
/// Intervals and boxes carry their exact measure. For a masked domain the
/// measure is estimated once, at construction, as the fraction of a uniform
/// reference grid on the bounding box that lies inside the mask.
class Domain
{
public:
    enum class Kind
    {
        interval,
        box,
        masked
    };

    using Indicator = std::function<bool(const Point&)>;

    /// The unit interval; placeholder for value-initialized aggregates.
    Domain();

    static Domain interval(double a, double b);
    static Domain box(const Point& lower, const Point& upper);
    /// \param resolution  reference grid points per dimension for |Omega|
    static Domain masked(const Point& lower, const Point& upper,
                         Indicator indicator, Index resolution = 512);
    /// Closed disk of the given radius, masked inside the box
    /// [cx - r, cx + r] x [cy - r, cy + r] unless a larger box is given.
    static Domain disk(double cx, double cy, double radius);
    static Domain disk(double cx, double cy, double radius, const Point& lower,
                       const Point& upper, Index resolution = 512);

    Kind kind() const noexcept
    {
        return kind_;
    }

    Index dim() const noexcept
    {
        return lower_.size();
    }

    const Point& lower() const noexcept
    {
        return lower_;
    }

    const Point& upper() const noexcept
    {
        return upper_;
    }

    double measure() const noexcept
    {
        return measure_;
    }

    double box_measure() const noexcept;

    bool contains(const Point& x) const;
    bool in_bounding_box(const Point& x) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::interval;
    Point lower_;
    Point upper_;
    std::shared_ptr<const Indicator> indicator_;
    double measure_ = 0.0;
    std::string label_;
};

} // namespace framefit

#endif /* FRAMEFIT_DOMAIN_HPP */
