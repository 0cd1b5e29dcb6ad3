///
/// \file search.hpp
///
/// Searches over a truncation schedule for the smallest accepted step. The
/// acceptance test is a callback, so the same code drives frame fits and
/// synthetic criteria.
///
#ifndef FRAMEFIT_SEARCH_HPP
#define FRAMEFIT_SEARCH_HPP

#include <optional>

#include <framefit/truncation.hpp>

namespace framefit
{

struct StepVerdict
{
    bool accepted = false;
    /// \f$\|b_N\|\f$ of the step; the bisection phase compares against the
    /// value of the first accepted doubling step.
    double b_norm = 0.0;
};

enum class SearchPhase
{
    incremental,
    doubling,
    bisection
};

struct SearchOutcome
{
    std::optional<Index> accepted_step;
    Index last_evaluated_step = 0;
    Index evaluations         = 0;
    /// Bracket width (steps) at the start of the bisection phase.
    Index bisection_iterations = 0;
};

/// Last step whose total does not exceed `nmax`, or 0 if none.
inline Index last_step_within(const TruncationSchedule& schedule, Index nmax)
{
    if (nmax < schedule.total_at(1))
    {
        return 0;
    }
    return schedule.nearest_step(std::min(nmax, schedule.max_total()), Direction::down);
}

/// Visit steps 1, 2, ... and stop at the first accepted one.
///
/// `evaluate(step, phase, reference_b_norm)` returns a StepVerdict; the
/// reference norm is empty here.
template <typename Evaluate>
SearchOutcome incremental_search(const TruncationSchedule& schedule, Index nmax,
                                 Evaluate&& evaluate)
{
    SearchOutcome out;
    const Index last = last_step_within(schedule, nmax);
    for (Index step = 1; step <= last; ++step)
    {
        const StepVerdict v = evaluate(step, SearchPhase::incremental, std::optional<double>{});
        ++out.evaluations;
        out.last_evaluated_step = step;
        if (v.accepted)
        {
            out.accepted_step = step;
            break;
        }
    }
    return out;
}

/// Doubling of the total size until acceptance, then bisection between the
/// last failing and the first passing step.
///
/// The bracket keeps `lo` failing and `hi` passing; midpoints are the largest
/// reachable totals not above (N_lo + N_hi) / 2, moved up to the next step
/// when they coincide with `lo`. The bisection phase passes the norm of the
/// first accepted doubling step as reference.
template <typename Evaluate>
SearchOutcome bisection_search(const TruncationSchedule& schedule, Index nmax,
                               Evaluate&& evaluate)
{
    SearchOutcome out;
    const Index last = last_step_within(schedule, nmax);
    if (last == 0)
    {
        return out;
    }

    Index step = 1;
    std::optional<Index> failing;
    StepVerdict verdict;
    for (;;)
    {
        verdict = evaluate(step, SearchPhase::doubling, std::optional<double>{});
        ++out.evaluations;
        out.last_evaluated_step = step;
        if (verdict.accepted)
        {
            break;
        }
        if (step == last)
        {
            return out;
        }
        failing            = step;
        const Index target = 2 * schedule.total_at(step);
        Index next         = last;
        if (target <= schedule.total_at(last))
        {
            next = schedule.nearest_step(target, Direction::up);
        }
        step = std::max(next, step + 1);
    }

    const double reference = verdict.b_norm;
    Index hi               = step;
    if (failing)
    {
        Index lo = *failing;
        while (hi - lo > 1)
        {
            const Index mid_total =
                (schedule.total_at(lo) + schedule.total_at(hi)) / 2;
            Index mid = schedule.nearest_step(mid_total, Direction::down);
            if (mid <= lo)
            {
                mid = lo + 1;
            }
            const StepVerdict v = evaluate(mid, SearchPhase::bisection, reference);
            ++out.evaluations;
            ++out.bisection_iterations;
            out.last_evaluated_step = mid;
            if (v.accepted)
            {
                hi = mid;
            }
            else
            {
                lo = mid;
            }
        }
    }
    out.accepted_step = hi;
    return out;
}

} // namespace framefit

#endif /* FRAMEFIT_SEARCH_HPP */
