#include <framefit/adaptive.hpp>

#include <ostream>

namespace framefit
{

StoppingCriterion StoppingCriterion::from_delta(double delta)
{
    StoppingCriterion c;
    c.delta       = delta;
    c.delta_prime = delta;
    c.epsilon     = delta / 100.0;
    return c;
}

void StoppingCriterion::validate() const
{
    if (!(delta > 0.0 && delta < 1.0))
    {
        throw InvalidArgument("criterion: delta must lie in (0, 1)");
    }
    if (!(delta_prime > 0.0 && delta_prime < 1.0))
    {
        throw InvalidArgument("criterion: delta' must lie in (0, 1)");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    {
        throw InvalidArgument("criterion: epsilon must be positive");
    }
    if (q < 0)
    {
        throw InvalidArgument("criterion: Q must be non-negative");
    }
    if (nmax < 1)
    {
        throw InvalidArgument("criterion: Nmax must be at least 1");
    }
    if (mu && !(*mu > 0.0))
    {
        throw InvalidArgument("criterion: mu must be positive");
    }
}

template <typename Scalar>
CriterionOutcome check_criterion(const RegularizedSolution<Scalar>& solution,
                                 double reference_b_norm, const Function& f,
                                 const Approximant<Scalar>& approximant,
                                 const Eigen::MatrixXd& test_points,
                                 const StoppingCriterion& criterion)
{
    CriterionOutcome out;
    out.residual_norm    = solution.residual_norm;
    out.reference_b_norm = reference_b_norm;
    out.residual_pass    = solution.residual_norm <= criterion.delta * reference_b_norm;
    if (out.residual_pass)
    {
        out.points_checked = true;
        out.points_pass    = true;
        const double bound = criterion.delta_prime * reference_b_norm;
        for (Index i = 0; i < test_points.cols(); ++i)
        {
            const Point t     = test_points.col(i);
            const Complex fv  = f(t);
            const Complex fnv = approximant(t);
            const double err  = std::abs(fv - fnv);
            if (!std::isfinite(err))
            {
                throw NumericalError("criterion: non-finite value at a test point");
            }
            out.max_point_error = std::max(out.max_point_error, err);
            if (err > bound)
            {
                out.points_pass = false;
                break;
            }
        }
    }
    out.accepted = out.residual_pass && out.points_pass;
    if (criterion.mu && out.accepted)
    {
        out.coefficient_pass =
            solution.coefficient_norm <= *criterion.mu * reference_b_norm;
        out.accepted = *out.coefficient_pass;
    }
    return out;
}

template <typename Scalar>
CriterionOutcome check_criterion(const LeastSquaresSystem<Scalar>& system,
                                 const RegularizedSolution<Scalar>& solution,
                                 const Function& f,
                                 const Approximant<Scalar>& approximant,
                                 const StoppingCriterion& criterion)
{
    const Eigen::MatrixXd points =
        random_points(system.scheme.domain, criterion.q, criterion.seed);
    return check_criterion<Scalar>(solution, system.rhs.norm(), f, approximant, points,
                                   criterion);
}

// FitEngine

template <typename Scalar>
FitEngine<Scalar>::FitEngine(FitProblem problem, std::size_t cache_bytes)
    : problem_(std::move(problem)), cache_bytes_(cache_bytes)
{
    if constexpr (!is_complex_v<Scalar>)
    {
        if (!problem_.dictionary.is_real() || !problem_.function.is_real())
        {
            throw InvalidArgument("FitEngine: real arithmetic needs a real dictionary "
                                  "and a real function");
        }
    }
    if (problem_.dictionary.dim() != problem_.domain.dim())
    {
        throw InvalidArgument("FitEngine: dictionary and domain differ in dimension");
    }
}

template <typename Scalar>
LeastSquaresSystem<Scalar> FitEngine<Scalar>::assemble(const TruncationDescriptor& desc) const
{
    return assemble_system<Scalar>(problem_.dictionary, desc, problem_.function,
                                   problem_.domain, problem_.assembly);
}

template <typename Scalar>
typename FitEngine<Scalar>::Fit FitEngine<Scalar>::fit(const TruncationDescriptor& desc,
                                                       double epsilon, ThresholdMode mode)
{
    const std::string key = desc.to_string();
    std::shared_ptr<const PreparedSystem<Scalar>> prepared;
    if (auto it = index_.find(key); it != index_.end())
    {
        lru_.splice(lru_.begin(), lru_, it->second);
        prepared = it->second->prepared;
    }
    else
    {
        LeastSquaresSystem<Scalar> sys = assemble(desc);
        prepared = std::make_shared<const PreparedSystem<Scalar>>(std::move(sys.matrix),
                                                                  std::move(sys.rhs));
        ++factorizations_;
        const std::size_t bytes =
            sizeof(Scalar) * std::size_t(prepared->matrix().size() +
                                         prepared->matrix().cols() * prepared->matrix().cols());
        if (bytes <= cache_bytes_)
        {
            lru_.push_front(Entry{key, prepared, bytes});
            index_[key] = lru_.begin();
            used_bytes_ += bytes;
            while (used_bytes_ > cache_bytes_)
            {
                used_bytes_ -= lru_.back().bytes;
                index_.erase(lru_.back().key);
                lru_.pop_back();
            }
        }
    }
    Fit out;
    out.solution = prepared->solve(epsilon, mode);
    out.b_norm   = prepared->rhs().norm();
    return out;
}

// Adaptive strategies

namespace
{

template <typename Scalar>
AdaptiveResult<Scalar> run_search(FitEngine<Scalar>& engine,
                                  const TruncationSchedule& schedule,
                                  const StoppingCriterion& criterion, Strategy strategy)
{
    criterion.validate();
    const FitProblem& problem = engine.problem();
    AdaptiveResult<Scalar> result;
    if (criterion.q == 0)
    {
        result.warnings.push_back(
            "Q = 0: the random point check is disabled and cannot catch unresolved "
            "features between sample points");
    }
    const Eigen::MatrixXd test_points =
        random_points(problem.domain, criterion.q, criterion.seed);

    std::map<Index, std::pair<RegularizedSolution<Scalar>, double>> solved;

    auto evaluate = [&](Index step, SearchPhase phase,
                        std::optional<double> reference) -> StepVerdict {
        const TruncationDescriptor desc = schedule.at(step);
        auto fit = engine.fit(desc, criterion.epsilon);
        Approximant<Scalar> approx{problem.dictionary, desc, fit.solution.coefficients};
        const double ref = reference.value_or(fit.b_norm);
        const CriterionOutcome outcome = check_criterion<Scalar>(
            fit.solution, ref, problem.function, approx, test_points, criterion);
        result.trace.push_back(TraceEntry{desc, phase, fit.solution.residual_norm,
                                          fit.solution.coefficient_norm, fit.b_norm,
                                          outcome});
        solved[step] = {fit.solution, fit.b_norm};
        return StepVerdict{outcome.accepted, fit.b_norm};
    };

    const SearchOutcome search =
        strategy == Strategy::incremental
            ? incremental_search(schedule, criterion.nmax, evaluate)
            : bisection_search(schedule, criterion.nmax, evaluate);

    if (search.last_evaluated_step == 0)
    {
        throw InvalidArgument("adaptive: Nmax is below the first truncation of the schedule");
    }
    const Index final_step =
        search.accepted_step ? *search.accepted_step : search.last_evaluated_step;
    if (search.accepted_step)
    {
        result.accepted   = schedule.at(final_step);
        result.terminated = Termination::converged;
    }
    else
    {
        result.terminated = Termination::hit_nmax;
    }
    const Index step_used = search.accepted_step ? final_step : solved.rbegin()->first;
    result.solution       = solved.at(step_used).first;
    result.approximant    = Approximant<Scalar>{problem.dictionary, schedule.at(step_used),
                                             result.solution.coefficients};
    result.reference_b_norm = solved.at(step_used).second;
    if (strategy == Strategy::bisection)
    {
        for (const auto& t : result.trace)
        {
            if (t.phase == SearchPhase::doubling && t.outcome.accepted)
            {
                result.reference_b_norm = t.b_norm;
            }
        }
    }
    return result;
}

} // namespace

template <typename Scalar>
AdaptiveResult<Scalar> adapt_incremental(FitEngine<Scalar>& engine,
                                         const TruncationSchedule& schedule,
                                         const StoppingCriterion& criterion)
{
    return run_search(engine, schedule, criterion, Strategy::incremental);
}

template <typename Scalar>
AdaptiveResult<Scalar> adapt_bisection(FitEngine<Scalar>& engine,
                                       const TruncationSchedule& schedule,
                                       const StoppingCriterion& criterion)
{
    return run_search(engine, schedule, criterion, Strategy::bisection);
}

template <typename Scalar>
AdaptiveResult<Scalar> optimal_n(FitEngine<Scalar>& engine,
                                 const TruncationSchedule& schedule,
                                 const StoppingCriterion& criterion, Strategy strategy)
{
    return run_search(engine, schedule, criterion, strategy);
}

std::string to_string(Termination t)
{
    return t == Termination::converged ? "converged" : "hitNmax";
}

std::string to_string(Strategy s)
{
    return s == Strategy::incremental ? "incremental" : "bisection";
}

std::string to_string(SearchPhase p)
{
    switch (p)
    {
    case SearchPhase::incremental:
        return "incremental";
    case SearchPhase::doubling:
        return "doubling";
    case SearchPhase::bisection:
        return "bisection";
    }
    return "unknown";
}

void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace)
{
    os << "phase,N,descriptor,residual,coefnorm,bnorm,residual_pass,points_pass,accepted\n";
    os.precision(17);
    for (const auto& t : trace)
    {
        os << to_string(t.phase) << "," << t.descriptor.total() << ",\""
           << t.descriptor.to_string() << "\"," << t.residual_norm << ","
           << t.coefficient_norm << "," << t.b_norm << "," << t.outcome.residual_pass
           << "," << t.outcome.points_pass << "," << t.outcome.accepted << "\n";
    }
}

#define FRAMEFIT_INSTANTIATE(S)                                                             \
    template class FitEngine<S>;                                                            \
    template CriterionOutcome check_criterion<S>(const RegularizedSolution<S>&, double,     \
                                                 const Function&, const Approximant<S>&,    \
                                                 const Eigen::MatrixXd&,                    \
                                                 const StoppingCriterion&);                 \
    template CriterionOutcome check_criterion<S>(                                           \
        const LeastSquaresSystem<S>&, const RegularizedSolution<S>&, const Function&,       \
        const Approximant<S>&, const StoppingCriterion&);                                   \
    template AdaptiveResult<S> adapt_incremental<S>(FitEngine<S>&,                          \
                                                    const TruncationSchedule&,              \
                                                    const StoppingCriterion&);              \
    template AdaptiveResult<S> adapt_bisection<S>(FitEngine<S>&, const TruncationSchedule&, \
                                                  const StoppingCriterion&);                \
    template AdaptiveResult<S> optimal_n<S>(FitEngine<S>&, const TruncationSchedule&,       \
                                            const StoppingCriterion&, Strategy);

FRAMEFIT_INSTANTIATE(double)
FRAMEFIT_INSTANTIATE(Complex)

#undef FRAMEFIT_INSTANTIATE

} // namespace framefit
