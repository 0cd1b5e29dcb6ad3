#include <framefit/sampling.hpp>

#include <algorithm>
#include <ostream>
#include <random>

namespace framefit
{

namespace
{

// Grid points beyond which masked refinement gives up.
constexpr double max_grid_points = 1e8;

Index ipow(Index base, Index exp)
{
    Index r = 1;
    for (Index i = 0; i < exp; ++i)
    {
        r *= base;
    }
    return r;
}

// Midpoints of an n^d grid on the bounding box, filtered by the domain.
Eigen::MatrixXd grid_points(const Domain& domain, Index n, bool filter)
{
    const Index d     = domain.dim();
    const Index count = ipow(n, d);
    Eigen::MatrixXd pts(d, filter ? std::min<Index>(count, 1 << 16) : count);
    Index kept = 0;
    Point x(d);
    for (Index flat = 0; flat < count; ++flat)
    {
        Index rem = flat;
        for (Index i = d - 1; i >= 0; --i)
        {
            const Index j = rem % n;
            rem /= n;
            x(i) = domain.lower()(i) +
                   (domain.upper()(i) - domain.lower()(i)) * (double(j) + 0.5) / double(n);
        }
        if (filter && !domain.contains(x))
        {
            continue;
        }
        if (kept == pts.cols())
        {
            pts.conservativeResize(Eigen::NoChange, std::min(count, 2 * pts.cols()));
        }
        pts.col(kept++) = x;
    }
    pts.conservativeResize(Eigen::NoChange, kept);
    return pts;
}

} // namespace

OversamplingRule::OversamplingRule(double gamma) : gamma_(gamma)
{
    if (!(gamma > 1.0) || !std::isfinite(gamma))
    {
        throw InvalidArgument("oversampling: gamma must be a finite value > 1");
    }
}

Index OversamplingRule::samples(Index n) const
{
    if (n < 1)
    {
        throw InvalidArgument("oversampling: N must be positive");
    }
    const Index m = Index(std::ceil(gamma_ * double(n) - 1e-12));
    return std::max(m, n + 1);
}

Eigen::MatrixXd random_points(const Domain& domain, Index count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Index d = domain.dim();
    Eigen::MatrixXd pts(d, count);
    Point x(d);
    const Index max_attempts = std::max<Index>(1000, 10000 * count);
    Index attempts           = 0;
    for (Index m = 0; m < count;)
    {
        if (++attempts > max_attempts)
        {
            throw InvalidArgument("random_points: rejection sampling found no point in " +
                                  domain.describe());
        }
        for (Index i = 0; i < d; ++i)
        {
            x(i) = domain.lower()(i) + (domain.upper()(i) - domain.lower()(i)) * unit(rng);
        }
        if (domain.contains(x))
        {
            pts.col(m++) = x;
        }
    }
    return pts;
}

SamplingScheme generate_scheme(const Domain& domain, Index m, SamplingKind kind,
                               std::uint64_t seed)
{
    if (m < 1)
    {
        throw InvalidArgument("generate_scheme: M must be positive");
    }
    SamplingScheme scheme;
    scheme.domain = domain;
    const Index d = domain.dim();

    if (kind == SamplingKind::random_uniform)
    {
        scheme.points = random_points(domain, m, seed);
    }
    else if (domain.kind() == Domain::Kind::interval)
    {
        scheme.points = grid_points(domain, m, false);
    }
    else if (domain.kind() == Domain::Kind::box)
    {
        Index n = Index(std::ceil(std::pow(double(m), 1.0 / double(d)) - 1e-9));
        while (ipow(n, d) < m)
        {
            ++n;
        }
        scheme.points = grid_points(domain, n, false);
    }
    else
    {
        const double fraction = domain.measure() / domain.box_measure();
        Index n = std::max<Index>(
            1, Index(std::ceil(std::pow(double(m) / fraction, 1.0 / double(d)))));
        for (;;)
        {
            if (std::pow(double(n), double(d)) > max_grid_points)
            {
                throw InvalidArgument("generate_scheme: mask of " + domain.describe() +
                                      " holds fewer than " + std::to_string(m) +
                                      " grid points after refinement");
            }
            scheme.points = grid_points(domain, n, true);
            if (scheme.points.cols() >= m)
            {
                break;
            }
            n += std::max<Index>(1, n / 16);
        }
    }

    const Index actual = scheme.points.cols();
    scheme.weights =
        Eigen::VectorXd::Constant(actual, std::sqrt(domain.measure() / double(actual)));
    return scheme;
}

void write_scheme_csv(std::ostream& os, const SamplingScheme& scheme)
{
    const Index d = scheme.points.rows();
    for (Index i = 0; i < d; ++i)
    {
        os << "x" << i << ",";
    }
    os << "weight\n";
    os.precision(17);
    for (Index m = 0; m < scheme.size(); ++m)
    {
        for (Index i = 0; i < d; ++i)
        {
            os << scheme.points(i, m) << ",";
        }
        os << scheme.weights(m) << "\n";
    }
}

} // namespace framefit
