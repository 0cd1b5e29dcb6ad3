///
/// \file diagnostics.hpp
///
/// Error metrics, convergence sweeps, parameter grids and timing tables.
///
#ifndef FRAMEFIT_DIAGNOSTICS_HPP
#define FRAMEFIT_DIAGNOSTICS_HPP

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <framefit/adaptive.hpp>

namespace framefit
{

/// Maximum of \f$|f(x) - g(x)|\f$ over the equispaced interior grid of about
/// `grid_size` points that generate_scheme builds on the domain.
template <typename Approx>
double uniform_error(const Function& f, const Approx& approx, const Domain& domain,
                     Index grid_size)
{
    if (grid_size < 2)
    {
        throw InvalidArgument("uniform_error: grid size must be at least 2");
    }
    const SamplingScheme grid = generate_scheme(domain, grid_size);
    double err = 0.0;
    for (Index m = 0; m < grid.size(); ++m)
    {
        const Point x  = grid.point(m);
        const double e = std::abs(f(x) - Complex(approx(x)));
        if (!std::isfinite(e))
        {
            throw NumericalError("uniform_error: non-finite value");
        }
        err = std::max(err, e);
    }
    return err;
}

/// Riemann estimate of \f$\|f - g\|_{L^2(\Omega)}\f$ on an equispaced grid of
/// about `fine_m` points.
template <typename Approx>
double h_norm_error(const Function& f, const Approx& approx, const Domain& domain,
                    Index fine_m)
{
    if (fine_m < 1)
    {
        throw InvalidArgument("h_norm_error: need at least one point");
    }
    const SamplingScheme grid = generate_scheme(domain, fine_m);
    double sum = 0.0;
    for (Index m = 0; m < grid.size(); ++m)
    {
        const Point x  = grid.point(m);
        const double e = grid.weights(m) * std::abs(f(x) - Complex(approx(x)));
        sum += e * e;
    }
    if (!std::isfinite(sum))
    {
        throw NumericalError("h_norm_error: non-finite value");
    }
    return std::sqrt(sum);
}

struct ConvergenceRecord
{
    Index n                 = 0;
    double residual_norm    = 0.0;
    double coefficient_norm = 0.0;
    double h_norm_error     = 0.0;
    double uniform_error    = 0.0;
    double b_norm           = 0.0;
    double epsilon          = 0.0;
};

struct SweepOptions
{
    /// Error grids hold this many times the fit's sample count.
    Index fine_factor = 16;
    ThresholdMode mode = ThresholdMode::absolute;
};

/// One record per total in `totals`, which must be strictly increasing and
/// reachable in the schedule.
template <typename Scalar>
std::vector<ConvergenceRecord> convergence_sweep(FitEngine<Scalar>& engine,
                                                 const TruncationSchedule& schedule,
                                                 const std::vector<Index>& totals,
                                                 double epsilon,
                                                 const SweepOptions& options = {});

enum class GridKind
{
    epsilon_delta, ///< axis1 = epsilon, axis2 = delta
    sigma_delta    ///< axis1 = noise level sigma, axis2 = delta, epsilon = delta / 100
};

struct GridCell
{
    double axis1 = 0.0;
    double axis2 = 0.0;
    Index n_opt  = 0; ///< Nmax when the search did not converge
    bool converged          = false;
    double coefficient_norm = 0.0;
    double residual_norm    = 0.0;
};

struct ParameterGrid
{
    GridKind kind = GridKind::epsilon_delta;
    std::vector<double> axis1;
    std::vector<double> axis2;
    /// Row-major, axis1 outer.
    std::vector<GridCell> cells;

    const GridCell& at(std::size_t i, std::size_t j) const
    {
        return cells.at(i * axis2.size() + j);
    }
};

using FunctionFamily = std::function<Function(double)>;

/// Setup shared by the cells of a grid or the rows of a timing table.
struct FamilySetup
{
    FunctionFamily family;
    Dictionary dictionary;
    Domain domain;
    AssemblyOptions assembly;
    GrowthPolicy policy = GrowthPolicy::flat_unit_step;
    /// Template for Q, seed, Nmax and mu; delta' follows delta.
    StoppingCriterion criterion;
    std::size_t cache_bytes = std::size_t(1) << 30;
};

/// Bisection search per cell. For epsilon_delta grids the family is evaluated
/// at `family_parameter`; for sigma_delta grids at each sigma.
template <typename Scalar>
ParameterGrid parameter_grid_run(const FamilySetup& setup, GridKind kind,
                                 const std::vector<double>& axis1,
                                 const std::vector<double>& axis2,
                                 double family_parameter = 0.0);

/// `count` values from 10^lo to 10^hi, evenly spaced in the exponent.
std::vector<double> log_axis(double lo, double hi, Index count);

struct TimingRow
{
    double parameter = 0.0;
    Index n_incremental = 0;
    Index n_bisection   = 0;
    double t_bisection  = 0.0; ///< median seconds
    double t_single     = 0.0; ///< median seconds of one fit at N_bis
    double ratio        = 0.0;
};

struct TimingOptions
{
    Index repeats = 7;
    bool run_incremental = true;
};

/// Per parameter: N of both strategies and the median time of a bisection
/// run over the time of a single fit at its N. Each repeat uses a fresh
/// engine and seed `criterion.seed + r`; one warm-up run is discarded.
template <typename Scalar>
std::vector<TimingRow> timing_comparison(const FamilySetup& setup,
                                         const std::vector<double>& parameters,
                                         const TimingOptions& options = {});

void write_sweep_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records);
void write_grid_csv(std::ostream& os, const ParameterGrid& grid, bool coefficient_value);
void write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

} // namespace framefit

#endif /* FRAMEFIT_DIAGNOSTICS_HPP */
