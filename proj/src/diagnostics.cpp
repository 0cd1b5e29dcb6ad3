#include <framefit/diagnostics.hpp>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>

namespace framefit
{

template <typename Scalar>
std::vector<ConvergenceRecord> convergence_sweep(FitEngine<Scalar>& engine,
                                                 const TruncationSchedule& schedule,
                                                 const std::vector<Index>& totals,
                                                 double epsilon, const SweepOptions& options)
{
    if (options.fine_factor < 1)
    {
        throw InvalidArgument("convergence_sweep: fine factor must be positive");
    }
    const FitProblem& problem = engine.problem();
    std::vector<ConvergenceRecord> out;
    Index previous = 0;
    for (const Index n : totals)
    {
        if (n <= previous)
        {
            throw InvalidArgument("convergence_sweep: totals must be strictly increasing");
        }
        previous = n;
        const TruncationDescriptor desc = schedule.nearest_reachable(n, Direction::down);
        if (desc.total() != n)
        {
            throw InvalidArgument("convergence_sweep: N = " + std::to_string(n) +
                                  " is not reachable in the schedule");
        }
        const auto fit = engine.fit(desc, epsilon, options.mode);
        const Approximant<Scalar> approx{problem.dictionary, desc, fit.solution.coefficients};
        const Index fine_m = options.fine_factor * problem.assembly.rule.samples(n);

        ConvergenceRecord r;
        r.n                = n;
        r.residual_norm    = fit.solution.residual_norm;
        r.coefficient_norm = fit.solution.coefficient_norm;
        r.b_norm           = fit.b_norm;
        r.epsilon          = epsilon;
        r.h_norm_error     = h_norm_error(problem.function, approx, problem.domain, fine_m);
        r.uniform_error    = uniform_error(problem.function, approx, problem.domain, fine_m);
        out.push_back(r);
    }
    return out;
}

namespace
{

Index accepted_total(const std::optional<TruncationDescriptor>& d, Index nmax)
{
    return d ? d->total() : nmax;
}

} // namespace

template <typename Scalar>
ParameterGrid parameter_grid_run(const FamilySetup& setup, GridKind kind,
                                 const std::vector<double>& axis1,
                                 const std::vector<double>& axis2, double family_parameter)
{
    if (!setup.family)
    {
        throw InvalidArgument("parameter_grid_run: no function family");
    }
    ParameterGrid grid;
    grid.kind  = kind;
    grid.axis1 = axis1;
    grid.axis2 = axis2;
    const TruncationSchedule schedule(setup.dictionary, setup.policy);

    std::optional<FitEngine<Scalar>> shared;
    if (kind == GridKind::epsilon_delta)
    {
        shared.emplace(FitProblem{setup.family(family_parameter), setup.dictionary,
                                  setup.domain, setup.assembly},
                       setup.cache_bytes);
    }

    for (const double a1 : axis1)
    {
        std::optional<FitEngine<Scalar>> local;
        if (kind == GridKind::sigma_delta)
        {
            local.emplace(FitProblem{setup.family(a1), setup.dictionary, setup.domain,
                                     setup.assembly},
                          setup.cache_bytes);
        }
        FitEngine<Scalar>& engine = shared ? *shared : *local;
        for (const double a2 : axis2)
        {
            StoppingCriterion c = setup.criterion;
            c.delta             = a2;
            c.delta_prime       = a2;
            c.epsilon           = kind == GridKind::epsilon_delta ? a1 : a2 / 100.0;
            const AdaptiveResult<Scalar> res = adapt_bisection(engine, schedule, c);

            GridCell cell;
            cell.axis1            = a1;
            cell.axis2            = a2;
            cell.converged        = res.terminated == Termination::converged;
            cell.n_opt            = accepted_total(res.accepted, c.nmax);
            cell.coefficient_norm = res.solution.coefficient_norm;
            cell.residual_norm    = res.solution.residual_norm;
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

std::vector<double> log_axis(double lo, double hi, Index count)
{
    if (count < 1)
    {
        throw InvalidArgument("log_axis: count must be positive");
    }
    std::vector<double> out;
    for (Index i = 0; i < count; ++i)
    {
        const double t = count == 1 ? 0.0 : double(i) / double(count - 1);
        out.push_back(std::pow(10.0, lo + t * (hi - lo)));
    }
    return out;
}

namespace
{

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename F>
double seconds(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

template <typename Scalar>
std::vector<TimingRow> timing_comparison(const FamilySetup& setup,
                                         const std::vector<double>& parameters,
                                         const TimingOptions& options)
{
    if (options.repeats < 1)
    {
        throw InvalidArgument("timing_comparison: need at least one repeat");
    }
    const TruncationSchedule schedule(setup.dictionary, setup.policy);
    std::vector<TimingRow> rows;
    for (const double p : parameters)
    {
        const FitProblem problem{setup.family(p), setup.dictionary, setup.domain,
                                 setup.assembly};
        TimingRow row;
        row.parameter = p;
        if (options.run_incremental)
        {
            FitEngine<Scalar> engine(problem);
            row.n_incremental = accepted_total(
                adapt_incremental(engine, schedule, setup.criterion).accepted,
                setup.criterion.nmax);
        }

        std::vector<double> t_bis;
        std::vector<double> t_one;
        for (Index r = -1; r < options.repeats; ++r)
        {
            StoppingCriterion c = setup.criterion;
            c.seed += std::uint64_t(std::max<Index>(r, 0));
            std::optional<TruncationDescriptor> accepted;
            const double tb = seconds([&] {
                FitEngine<Scalar> engine(problem);
                accepted = adapt_bisection(engine, schedule, c).accepted;
            });
            const TruncationDescriptor desc =
                accepted ? *accepted : schedule.nearest_reachable(c.nmax, Direction::down);
            const double ts = seconds([&] {
                FitEngine<Scalar> engine(problem);
                (void)engine.fit(desc, c.epsilon);
            });
            if (r < 0)
            {
                row.n_bisection = accepted_total(accepted, c.nmax);
                continue;
            }
            t_bis.push_back(tb);
            t_one.push_back(ts);
        }
        row.t_bisection = median(t_bis);
        row.t_single    = median(t_one);
        row.ratio       = row.t_bisection / row.t_single;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records)
{
    os << "N,residual,coefnorm,h_error,uniform_error\n";
    os.precision(17);
    for (const auto& r : records)
    {
        os << r.n << "," << r.residual_norm << "," << r.coefficient_norm << ","
           << r.h_norm_error << "," << r.uniform_error << "\n";
    }
}

void write_grid_csv(std::ostream& os, const ParameterGrid& grid, bool coefficient_value)
{
    os << "axis1,axis2,N_opt,value\n";
    os.precision(17);
    for (const auto& c : grid.cells)
    {
        os << c.axis1 << "," << c.axis2 << "," << c.n_opt << ","
           << (coefficient_value ? c.coefficient_norm : c.residual_norm) << "\n";
    }
}

void write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows)
{
    os << "p,N_inc,N_bis,ratio\n";
    os.precision(17);
    for (const auto& r : rows)
    {
        os << r.parameter << "," << r.n_incremental << "," << r.n_bisection << "," << r.ratio
           << "\n";
    }
}

namespace
{

std::vector<double> ranks(const std::vector<double>& v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size())
    {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]])
        {
            ++j;
        }
        const double avg = 0.5 * double(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
        {
            r[order[k]] = avg;
        }
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
    {
        throw InvalidArgument("spearman: need two equally long samples of size >= 2");
    }
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n  = double(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i)
    {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
    {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

#define FRAMEFIT_INSTANTIATE(S)                                                           \
    template std::vector<ConvergenceRecord> convergence_sweep<S>(                         \
        FitEngine<S>&, const TruncationSchedule&, const std::vector<Index>&, double,      \
        const SweepOptions&);                                                             \
    template ParameterGrid parameter_grid_run<S>(const FamilySetup&, GridKind,            \
                                                 const std::vector<double>&,              \
                                                 const std::vector<double>&, double);     \
    template std::vector<TimingRow> timing_comparison<S>(                                 \
        const FamilySetup&, const std::vector<double>&, const TimingOptions&);

FRAMEFIT_INSTANTIATE(double)
FRAMEFIT_INSTANTIATE(Complex)

#undef FRAMEFIT_INSTANTIATE

} // namespace framefit
