#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "experiment.hpp"
#include "svg.hpp"

namespace framefit::cli
{

namespace fs = std::filesystem;

namespace
{

struct Context
{
    fs::path dir;
    bool plot = false;
    std::ostream& out;
    std::ostream& err;
    std::string prefix;

    std::string path(const std::string& name) const
    {
        return (dir / (prefix + name)).string();
    }

    Context with_prefix(const std::string& p) const
    {
        Context c{dir, plot, out, err, p};
        return c;
    }
};

std::ofstream open_file(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
    {
        throw std::runtime_error("cannot write " + path);
    }
    return f;
}

std::string fmt(double x)
{
    std::ostringstream ss;
    ss.precision(6);
    ss << x;
    return ss.str();
}

template <typename S>
TruncationDescriptor exact_descriptor(const Config& c, const Experiment& ex, Index n)
{
    const TruncationSchedule schedule(ex.dictionary, ex.policy);
    if (n < schedule.total_at(1))
    {
        c.fail("truncation.N", "must be at least " + std::to_string(schedule.total_at(1)));
    }
    const TruncationDescriptor desc = schedule.nearest_reachable(n, Direction::down);
    if (desc.total() != n)
    {
        const TruncationDescriptor up = schedule.nearest_reachable(n, Direction::up);
        c.fail("truncation.N", std::to_string(n) + " is not reachable by the " +
                                   to_string(ex.policy) + " schedule; nearest are " +
                                   std::to_string(desc.total()) + " and " +
                                   std::to_string(up.total()));
    }
    return desc;
}

template <typename S>
void write_approximation(const Context& ctx, const Experiment& ex, const Approximant<S>& approx,
                         Index grid_size, const std::string& title)
{
    const SamplingScheme grid = generate_scheme(ex.domain, grid_size);
    const Index d             = grid.points.rows();
    auto f                    = open_file(ctx.path("approximation.csv"));
    f.precision(17);
    const char* names[] = {"x", "y", "z"};
    for (Index i = 0; i < d; ++i)
    {
        f << names[i] << ",";
    }
    f << "f_real,f_imag,fN_real,fN_imag,abs_error\n";
    std::vector<double> xs, ys, fr, fnr, logerr;
    for (Index m = 0; m < grid.size(); ++m)
    {
        const Point x     = grid.point(m);
        const Complex fv  = ex.function(x);
        const Complex fnv = approx(x);
        const double e    = std::abs(fv - fnv);
        for (Index i = 0; i < d; ++i)
        {
            f << x(i) << ",";
        }
        f << fv.real() << "," << fv.imag() << "," << fnv.real() << "," << fnv.imag() << "," << e
          << "\n";
        xs.push_back(x(0));
        if (d > 1)
        {
            ys.push_back(x(1));
        }
        fr.push_back(fv.real());
        fnr.push_back(fnv.real());
        logerr.push_back(std::log10(std::max(e, 1e-17)));
    }
    if (!ctx.plot)
    {
        return;
    }
    if (d == 1)
    {
        write_line_plot(ctx.path("approximation.svg"),
                        {{"f", xs, fr, false}, {"f_N", xs, fnr, false}},
                        {title, "x", "real part", false, false, {}});
    }
    else if (d == 2)
    {
        write_scatter_map(ctx.path("error.svg"), xs, ys, logerr,
                          {title + ": log10 error", "x", "y", false, false, {}});
    }
}

template <typename S>
void write_coefficients(const Context& ctx, const Vector<S>& c)
{
    auto f = open_file(ctx.path("coefficients.csv"));
    write_coefficients_csv(f, c);
}

// approximate

template <typename S>
int approximate_impl(const Config& c, const Experiment& ex, const Context& ctx)
{
    const Index n = c.get_index("truncation.N");
    const TruncationDescriptor desc = exact_descriptor<S>(c, ex, n);
    const LeastSquaresSystem<S> sys =
        assemble_system<S>(ex.dictionary, desc, ex.function, ex.domain, ex.assembly);
    const double eps         = ex.criterion.epsilon;
    const std::string weight = c.get_string("solver.weight");

    RegularizedSolution<S> sol;
    if (weight == "none")
    {
        sol = tsvd_solve<S>(sys, eps, ex.threshold);
    }
    else if (weight == "cubic_floor")
    {
        sol = weighted_solve<S>(sys, cubic_floor_weight(n), eps, ex.threshold);
    }
    else if (weight == "algebraic")
    {
        sol = weighted_solve<S>(sys, algebraic_weight(n, c.get_double("solver.alpha")), eps,
                                ex.threshold);
    }
    else if (weight == "incremental")
    {
        if (!desc.children().empty())
        {
            c.fail("solver.weight", "incremental weighting needs a flat truncation");
        }
        sol = incremental_weighted_solve<S>(sys.matrix, sys.rhs, eps).solution;
    }
    else
    {
        c.fail("solver.weight", "expected none, cubic_floor, algebraic or incremental");
    }

    const Approximant<S> approx{ex.dictionary, desc, sol.coefficients};
    const Index grid     = c.get_index("error.grid");
    const double uniform = uniform_error(ex.function, approx, ex.domain, grid);
    const double h = h_norm_error(ex.function, approx, ex.domain, 16 * sys.scheme.size());

    write_coefficients(ctx, sol.coefficients);
    write_approximation(ctx, ex, approx, grid, ex.function.name() + ", N = " + std::to_string(n));
    if (ctx.plot)
    {
        std::vector<double> k, mag;
        for (Index i = 0; i < sol.coefficients.size(); ++i)
        {
            k.push_back(double(i));
            mag.push_back(std::abs(Complex(sol.coefficients(i))));
        }
        write_line_plot(ctx.path("coefficients.svg"), {{"|c_k|", k, mag, true}},
                        {"coefficients", "k", "|c_k|", false, true, {}});
    }
    ctx.out << "N=" << n << " residual=" << fmt(sol.residual_norm)
            << " coefnorm=" << fmt(sol.coefficient_norm) << " uniform_error=" << fmt(uniform)
            << " h_error=" << fmt(h) << " rank=" << sol.retained_rank << "\n";
    return exit_ok;
}

// adapt

template <typename S>
AdaptiveResult<S> adapt_run(const Config& c, const Experiment& ex, const Context& ctx)
{
    FitEngine<S> engine(ex.problem());
    const TruncationSchedule schedule(ex.dictionary, ex.policy);
    AdaptiveResult<S> res = optimal_n(engine, schedule, ex.criterion, ex.strategy);
    for (const auto& w : res.warnings)
    {
        ctx.err << "warning: " << w << "\n";
    }
    {
        auto f = open_file(ctx.path("trace.csv"));
        write_trace_csv(f, res.trace);
    }
    write_coefficients(ctx, res.solution.coefficients);
    const Index grid = c.get_index("error.grid");
    write_approximation(ctx, ex, res.approximant, grid, ex.function.name());
    if (ctx.plot)
    {
        std::vector<double> n, r, cn;
        for (const auto& t : res.trace)
        {
            n.push_back(double(t.descriptor.total()));
            r.push_back(t.residual_norm / t.b_norm);
            cn.push_back(t.coefficient_norm);
        }
        write_line_plot(ctx.path("trace.svg"),
                        {{"residual / ||b||", n, r, true}, {"||c||", n, cn, true}},
                        {"adaptive search", "N", "", true, true, {ex.criterion.delta}});
    }
    return res;
}

template <typename S>
int adapt_impl(const Config& c, const Experiment& ex, const Context& ctx)
{
    const AdaptiveResult<S> res = adapt_run<S>(c, ex, ctx);
    const Index n_opt = res.accepted ? res.accepted->total() : ex.criterion.nmax;
    const double uniform =
        uniform_error(ex.function, res.approximant, ex.domain, c.get_index("error.grid"));
    ctx.out << "N_opt=" << n_opt << " residual=" << fmt(res.solution.residual_norm)
            << " coefnorm=" << fmt(res.solution.coefficient_norm)
            << " terminated=" << to_string(res.terminated) << "\n";
    ctx.out << "descriptor=" << res.approximant.descriptor.to_string()
            << " evaluations=" << res.trace.size() << " uniform_error=" << fmt(uniform)
            << " strategy=" << to_string(ex.strategy) << "\n";
    return exit_ok;
}

// sweep

template <typename S>
std::vector<std::vector<ConvergenceRecord>> sweep_run(const Config& c, const Experiment& ex,
                                                      const Context& ctx)
{
    const Index mb = c.get_index("cache.megabytes");
    FitEngine<S> engine(ex.problem(), std::size_t(std::max<Index>(mb, 0)) << 20);
    const TruncationSchedule schedule(ex.dictionary, ex.policy);
    const std::vector<Index> ns = c.get_indices("sweep.N");
    SweepOptions opts;
    opts.fine_factor = c.get_index("sweep.fine_factor");
    opts.mode        = ex.threshold;

    std::vector<std::vector<ConvergenceRecord>> all;
    for (const double eps : c.get_doubles("sweep.epsilon"))
    {
        std::vector<ConvergenceRecord> rec;
        try
        {
            rec = convergence_sweep(engine, schedule, ns, eps, opts);
        }
        catch (const InvalidArgument& e)
        {
            c.fail("sweep.N", e.what());
        }
        const std::string tag = "sweep_eps" + format_double(eps);
        {
            auto f = open_file(ctx.path(tag + ".csv"));
            write_sweep_csv(f, rec);
        }
        const auto& last = rec.back();
        ctx.out << "epsilon=" << format_double(eps) << " N=" << last.n
                << " residual=" << fmt(last.residual_norm)
                << " coefnorm=" << fmt(last.coefficient_norm)
                << " h_error=" << fmt(last.h_norm_error)
                << " uniform_error=" << fmt(last.uniform_error) << "\n";
        if (ctx.plot)
        {
            std::vector<double> n, h, r, cn, u;
            for (const auto& x : rec)
            {
                n.push_back(double(x.n));
                h.push_back(x.h_norm_error);
                r.push_back(x.residual_norm);
                cn.push_back(x.coefficient_norm);
                u.push_back(x.uniform_error);
            }
            write_line_plot(ctx.path(tag + ".svg"),
                            {{"H error", n, h, true},
                             {"residual", n, r, true},
                             {"||c||", n, cn, true},
                             {"uniform error", n, u, false}},
                            {"epsilon = " + format_double(eps), "N", "", false, true, {eps}});
        }
        all.push_back(std::move(rec));
    }
    return all;
}

template <typename S>
int sweep_impl(const Config& c, const Experiment& ex, const Context& ctx)
{
    (void)sweep_run<S>(c, ex, ctx);
    return exit_ok;
}

// grid

GridKind grid_kind(const Config& c)
{
    const std::string k = c.get_string("grid.kind");
    if (k == "epsilon_delta")
    {
        return GridKind::epsilon_delta;
    }
    if (k == "sigma_delta")
    {
        return GridKind::sigma_delta;
    }
    c.fail("grid.kind", "expected epsilon_delta or sigma_delta");
}

template <typename S>
ParameterGrid grid_run(const Config& c, const Experiment&)
{
    const GridKind kind = grid_kind(c);
    const std::string key =
        kind == GridKind::sigma_delta ? "function.sigma" : "function.scale";
    const FamilySetup setup = build_family_setup(c, key);
    return parameter_grid_run<S>(setup, kind, c.get_doubles("grid.axis1"),
                                 c.get_doubles("grid.axis2"), c.get_double(key));
}

void write_grid(const Context& ctx, const ParameterGrid& g, const std::string& name,
                bool coefficient_value, bool value_is_n, const std::string& title)
{
    {
        auto f = open_file(ctx.path(name + ".csv"));
        if (value_is_n)
        {
            ParameterGrid copy = g;
            for (auto& cell : copy.cells)
            {
                cell.coefficient_norm = double(cell.n_opt);
            }
            write_grid_csv(f, copy, true);
        }
        else
        {
            write_grid_csv(f, g, coefficient_value);
        }
    }
    if (ctx.plot)
    {
        std::vector<double> v;
        for (const auto& cell : g.cells)
        {
            v.push_back(value_is_n          ? double(cell.n_opt)
                        : coefficient_value ? cell.coefficient_norm
                                            : cell.residual_norm);
        }
        const std::string a1 = g.kind == GridKind::epsilon_delta ? "epsilon" : "sigma";
        write_heatmap(ctx.path(name + ".svg"), g.axis1, g.axis2, v,
                      {title, a1, "delta", false, false, {}}, true);
    }
}

void grid_summary(const Context& ctx, const ParameterGrid& g, const std::string& label)
{
    Index converged = 0;
    for (const auto& cell : g.cells)
    {
        converged += cell.converged ? 1 : 0;
    }
    ctx.out << (label.empty() ? "" : label + " ") << "cells=" << g.cells.size()
            << " converged=" << converged << " hitNmax=" << Index(g.cells.size()) - converged
            << "\n";
}

template <typename S>
int grid_impl(const Config& c, const Experiment& ex, const Context& ctx)
{
    const ParameterGrid g   = grid_run<S>(c, ex);
    const bool coefficients = g.kind == GridKind::epsilon_delta;
    write_grid(ctx, g, "grid", coefficients, false,
               coefficients ? "log10 ||c||" : "log10 residual");
    if (ctx.plot)
    {
        write_grid(ctx, g, "grid_N", coefficients, true, "log10 N");
    }
    grid_summary(ctx, g, "");
    return exit_ok;
}

// timing

template <typename S>
std::vector<TimingRow> timing_run(const Config& c, const Context& ctx, const std::string& name)
{
    const FamilySetup setup = build_family_setup(c, "function.p");
    TimingOptions opts;
    opts.repeats         = c.get_index("timing.repeats");
    opts.run_incremental = c.get_bool("timing.incremental");
    const auto rows      = timing_comparison<S>(setup, c.get_doubles("timing.p"), opts);
    {
        auto f = open_file(ctx.path(name + ".csv"));
        write_timing_csv(f, rows);
    }
    for (const auto& r : rows)
    {
        ctx.out << "p=" << format_double(r.parameter) << " N_inc=" << r.n_incremental
                << " N_bis=" << r.n_bisection << " ratio=" << fmt(r.ratio) << "\n";
    }
    if (ctx.plot)
    {
        std::vector<double> p, diff, ratio, nb;
        for (const auto& r : rows)
        {
            p.push_back(r.parameter);
            diff.push_back(double(r.n_bisection - r.n_incremental));
            ratio.push_back(r.ratio);
            nb.push_back(double(r.n_bisection));
        }
        if (opts.run_incremental)
        {
            write_line_plot(ctx.path(name + "_difference.svg"), {{"N_bis - N_inc", p, diff, true}},
                            {"bisection versus incremental", "p", "", false, false, {}});
        }
        else
        {
            write_line_plot(ctx.path(name + "_N.svg"), {{"N_bis", p, nb, true}},
                            {"optimal N", "p", "", false, false, {}});
        }
        write_line_plot(ctx.path(name + "_ratio.svg"), {{"t_bis / t_N", p, ratio, true}},
                        {"timing ratio", "p", "", false, false, {}});
    }
    return rows;
}

// figures

Config with(const Config& c, std::initializer_list<std::pair<const char*, std::string>> kv)
{
    Config copy = c;
    for (const auto& [k, v] : kv)
    {
        copy.set(k, v, "<figure>", 0);
    }
    return effective_config(copy);
}

template <typename S>
int fig1(const Config& c, const Experiment& ex, const Context& ctx)
{
    const Config series = with(c, {{"dictionary.lower", c.get_string("domain.lower")},
                                   {"dictionary.upper", c.get_string("domain.upper")}});
    ctx.out << "panel=series ";
    approximate_impl<S>(series, build_experiment(series), ctx.with_prefix("fig1_series_"));
    ctx.out << "panel=extension ";
    return approximate_impl<S>(c, ex, ctx.with_prefix("fig1_extension_"));
}

template <typename S>
int fig2_panels(const Config& c, const Context& ctx)
{
    const std::pair<std::string, Config> panels[] = {
        {"basis", with(c, {{"dictionary.lower", c.get_string("domain.lower")},
                           {"dictionary.upper", c.get_string("domain.upper")}})},
        {"extension", c}};
    for (const auto& [name, pc] : panels)
    {
        const Experiment ex = build_experiment(pc);
        for (const Index n : pc.get_indices("figure.N"))
        {
            const Config nc = with(pc, {{"truncation.N", std::to_string(n)}});
            ctx.out << "panel=" << name << " ";
            approximate_impl<S>(nc, ex,
                                ctx.with_prefix("fig2_" + name + "_N" + std::to_string(n) + "_"));
        }
        const Config sc = with(pc, {{"sweep.epsilon", pc.get_string("criterion.epsilon")}});
        ctx.out << "panel=" << name << " ";
        sweep_run<S>(sc, ex, ctx.with_prefix("fig2_" + name + "_"));
    }
    return exit_ok;
}

template <typename S>
int fig3(const Config& c, const Experiment& ex, const Context& ctx)
{
    for (const Index n : c.get_indices("figure.N"))
    {
        const TruncationDescriptor desc = exact_descriptor<S>(c, ex, n);
        if (!desc.children().empty())
        {
            c.fail("dictionary", "the weighting comparison needs a flat truncation");
        }
        const LeastSquaresSystem<S> sys =
            assemble_system<S>(ex.dictionary, desc, ex.function, ex.domain, ex.assembly);
        const double eps = ex.criterion.epsilon;
        const auto plain = tsvd_solve<S>(sys, eps, ex.threshold);
        const auto wsol  = weighted_solve<S>(sys, cubic_floor_weight(n), eps, ex.threshold);
        const auto isol  = incremental_weighted_solve<S>(sys.matrix, sys.rhs, eps);

        const std::string name = "fig3_N" + std::to_string(n);
        auto f                 = open_file(ctx.path(name + ".csv"));
        f.precision(17);
        f << "k,unweighted,weighted,incremental\n";
        std::vector<double> k, a, b, d;
        for (Index i = 0; i < n; ++i)
        {
            k.push_back(double(i));
            a.push_back(std::abs(Complex(plain.coefficients(i))));
            b.push_back(std::abs(Complex(wsol.coefficients(i))));
            d.push_back(std::abs(Complex(isol.solution.coefficients(i))));
            f << i << "," << a.back() << "," << b.back() << "," << d.back() << "\n";
        }
        ctx.out << "N=" << n << " residual_unweighted=" << fmt(plain.residual_norm)
                << " residual_weighted=" << fmt(wsol.residual_norm)
                << " residual_incremental=" << fmt(isol.solution.residual_norm) << "\n";
        if (ctx.plot)
        {
            write_line_plot(ctx.path(name + ".svg"),
                            {{"unweighted", k, a, true},
                             {"weighted", k, b, true},
                             {"incremental", k, d, true}},
                            {"|c_k|, N = " + std::to_string(n), "k", "", false, true, {}});
        }
    }
    return exit_ok;
}

template <typename S>
int fig5(const Config& c, const Experiment& ex, const Context& ctx)
{
    const double scales[] = {1.0, 1e6};
    for (int i = 0; i < 2; ++i)
    {
        const Config sc = with(c, {{"function.scale", format_double(scales[i] *
                                                                     c.get_double("function.scale"))}});
        const ParameterGrid g = grid_run<S>(sc, ex);
        const std::string tag = "fig5_f" + std::to_string(i + 1);
        write_grid(ctx, g, tag + "_N", true, true, "log10 N");
        write_grid(ctx, g, tag + "_coef", true, false, "log10 ||c||");
        grid_summary(ctx, g, "f" + std::to_string(i + 1));
    }
    return exit_ok;
}

template <typename S>
int fig6(const Config& c, const Experiment& ex, const Context& ctx)
{
    const ParameterGrid g = grid_run<S>(c, ex);
    write_grid(ctx, g, "fig6_residual", false, false, "log10 residual");
    write_grid(ctx, g, "fig6_N", false, true, "log10 N");
    grid_summary(ctx, g, "");
    return exit_ok;
}

template <typename S>
int fig8(const Config& c, const Experiment& ex, const Context& ctx)
{
    const Context a = ctx.with_prefix("fig8_");
    ctx.out << "panel=approximant ";
    adapt_impl<S>(c, ex, a);
    timing_run<S>(c, ctx, "fig8_timing");
    return exit_ok;
}

template <typename S>
int figure_impl(const std::string& id, const Config& c, const Experiment& ex, const Context& ctx)
{
    if (id == "fig1")
    {
        return fig1<S>(c, ex, ctx);
    }
    if (id == "fig2")
    {
        return fig2_panels<S>(c, ctx);
    }
    if (id == "fig3")
    {
        return fig3<S>(c, ex, ctx);
    }
    if (id == "fig4")
    {
        sweep_run<S>(c, ex, ctx.with_prefix("fig4_"));
        return exit_ok;
    }
    if (id == "fig5")
    {
        return fig5<S>(c, ex, ctx);
    }
    if (id == "fig6")
    {
        return fig6<S>(c, ex, ctx);
    }
    if (id == "fig7")
    {
        timing_run<S>(c, ctx, "fig7_timing");
        return exit_ok;
    }
    return fig8<S>(c, ex, ctx);
}

void write_metadata(const Context& ctx, const FigurePreset& p, const Config& user,
                    const Config& eff)
{
    auto f = open_file(ctx.path(p.id + "_metadata.txt"));
    f << "figure = " << p.id << "\n";
    f << "description = " << p.description << "\n";
    for (const auto& [k, v] : p.stated)
    {
        f << "stated " << k << " = " << v << (user.has(k) ? "  (overridden)" : "") << "\n";
    }
    for (const auto& [k, v] : p.inferred)
    {
        f << "inferred " << k << " = " << v << (user.has(k) ? "  (overridden)" : "") << "\n";
    }
    f << "\n# effective configuration\n" << eff.serialize();
}

template <typename S>
int dispatch_scalar(const std::string& command, const std::string& figure, const Config& c,
                    const Experiment& ex, const Context& ctx)
{
    if (command == "approximate")
    {
        return approximate_impl<S>(c, ex, ctx);
    }
    if (command == "adapt")
    {
        return adapt_impl<S>(c, ex, ctx);
    }
    if (command == "sweep")
    {
        return sweep_impl<S>(c, ex, ctx);
    }
    if (command == "grid")
    {
        return grid_impl<S>(c, ex, ctx);
    }
    return figure_impl<S>(figure, c, ex, ctx);
}

} // namespace

const std::vector<FigurePreset>& figure_presets()
{
    static const std::vector<FigurePreset> presets = {
        {"fig1",
         "f(x) = x on [-1,1]: Fourier series on [-1,1] against Fourier extension on [-2,2]",
         {{"function", "identity"},
          {"domain", "interval"},
          {"domain.lower", "-1"},
          {"domain.upper", "1"},
          {"dictionary", "fourier"},
          {"dictionary.lower", "-2"},
          {"dictionary.upper", "2"}},
         {{"truncation.N", "41"}, {"criterion.epsilon", "1e-12"}}},
        {"fig2",
         "e^x on [-1,1]: Chebyshev on [-1,1] and on [-2,2], coefficients for N = 20, 40 and "
         "uniform error against N",
         {{"function", "exp"},
          {"domain", "interval"},
          {"domain.lower", "-1"},
          {"domain.upper", "1"},
          {"dictionary", "chebyshev"},
          {"dictionary.lower", "-2"},
          {"dictionary.upper", "2"},
          {"criterion.epsilon", "1e-14"},
          {"figure.N", "20,40"}},
         {{"sweep.N", "1:1:80"}}},
        {"fig3",
         "e^x on [-1,1] with Chebyshev on [-2,2]: unweighted, cubic weight and incremental "
         "weighting",
         {{"function", "exp"},
          {"domain", "interval"},
          {"domain.lower", "-1"},
          {"domain.upper", "1"},
          {"dictionary", "chebyshev"},
          {"dictionary.lower", "-2"},
          {"dictionary.upper", "2"},
          {"criterion.epsilon", "1e-14"},
          {"figure.N", "61,101"}},
         {}},
        {"fig4",
         "exp(cos(8 pi x)) by Fourier extension: H error, residual and coefficient norm "
         "against N",
         {{"function", "exp_cos"},
          {"function.omega", "8pi"},
          {"dictionary", "fourier"},
          {"sweep.epsilon", "1e-12,1e-9,1e-6,1e-3"}},
         {{"domain", "interval"},
          {"domain.lower", "0"},
          {"domain.upper", "0.5"},
          {"dictionary.lower", "0"},
          {"dictionary.upper", "1"},
          {"sweep.N", "2:2:200"}}},
        {"fig5",
         "optimal N and coefficient norm over (epsilon, delta) for f1 = exp(cos(8 pi x)) and "
         "f2 = 1e6 f1",
         {{"function", "exp_cos"},
          {"function.omega", "8pi"},
          {"domain", "interval"},
          {"domain.lower", "0"},
          {"domain.upper", "0.5"},
          {"dictionary", "fourier"},
          {"dictionary.lower", "0"},
          {"dictionary.upper", "1"},
          {"grid.kind", "epsilon_delta"},
          {"criterion.nmax", "4096"},
          {"criterion.q", "3"},
          {"strategy", "bisection"}},
         {{"grid.axis1", "log:-10:-3:8"}, {"grid.axis2", "log:-10:-3:8"}}},
        {"fig6",
         "residual and optimal N over (sigma, delta) for e^x + sigma cos(2000 pi x), "
         "epsilon = delta / 100",
         {{"function", "noisy_exp"},
          {"domain", "interval"},
          {"domain.lower", "0"},
          {"domain.upper", "0.5"},
          {"dictionary", "fourier"},
          {"dictionary.lower", "0"},
          {"dictionary.upper", "1"},
          {"grid.kind", "sigma_delta"},
          {"criterion.q", "3"},
          {"strategy", "bisection"}},
         {{"grid.axis1", "log:-10:-2:9"}, {"grid.axis2", "log:-10:-2:9"}}},
        {"fig7",
         "cos(p x) on [-1,1] with Fourier on [-2,2]: bisection against incremental N and "
         "timing ratio",
         {{"function", "cos"},
          {"domain", "interval"},
          {"domain.lower", "-1"},
          {"domain.upper", "1"},
          {"dictionary", "fourier"},
          {"dictionary.lower", "-2"},
          {"dictionary.upper", "2"},
          {"criterion.delta", "1e-10"},
          {"criterion.epsilon", "1e-12"},
          {"criterion.q", "3"},
          {"timing.repeats", "7"}},
         {{"timing.p", "0:50:500"}}},
        {"fig8",
         "singular 2-D function on the disk of radius 0.9 with the weighted Fourier extension "
         "frame",
         {{"function", "singular_2d"},
          {"function.p", "3"},
          {"domain", "disk"},
          {"domain.center", "0,0"},
          {"domain.radius", "0.9"},
          {"dictionary", "radial_singular"},
          {"dictionary.lower", "-1,-1"},
          {"dictionary.upper", "1,1"},
          {"truncation.policy", "alternate_split"},
          {"criterion.delta", "1e-6"},
          {"criterion.epsilon", "1e-8"},
          {"criterion.q", "3"},
          {"strategy", "bisection"}},
         {{"timing.p", "1:1:4"}, {"timing.incremental", "false"}, {"error.grid", "20000"}}},
    };
    return presets;
}

const FigurePreset& figure_preset(const std::string& id)
{
    for (const auto& p : figure_presets())
    {
        if (p.id == id)
        {
            return p;
        }
    }
    throw ConfigError("figure", 0, "unknown figure '" + id + "' (fig1 to fig8)");
}

Config figure_config(const FigurePreset& preset, const Config& user)
{
    Config c;
    c.inherit_origin(user);
    for (const auto& [k, v] : preset.stated)
    {
        c.set(k, v, "<" + preset.id + ">", 0);
    }
    for (const auto& [k, v] : preset.inferred)
    {
        c.set(k, v, "<" + preset.id + ">", 0);
    }
    for (const auto& [k, e] : user.entries())
    {
        c.set(k, e.value, e.source, e.line);
    }
    return c;
}

int run_command(const std::string& command, const Config& user, const RunOptions& options,
                std::ostream& out, std::ostream& err)
{
    try
    {
        if (command != "approximate" && command != "adapt" && command != "sweep" &&
            command != "grid" && command != "figure")
        {
            throw ConfigError("command", 0, "unknown command '" + command + "'");
        }
        const FigurePreset* preset = nullptr;
        std::string figure         = options.figure_id;
        if (command == "figure")
        {
            if (figure.empty() && user.has("figure.id"))
            {
                figure = user.get_string("figure.id");
            }
            if (figure.empty())
            {
                throw ConfigError("figure", 0, "missing figure id");
            }
            preset = &figure_preset(figure);
        }
        const Config layered = preset ? figure_config(*preset, user) : user;
        Config eff           = effective_config(layered);
        if (preset)
        {
            eff.set("figure.id", figure, "<figure>", 0);
        }
        const Experiment ex = build_experiment(eff);

        out << "# effective configuration\n" << eff.serialize() << "# end\n";
        fs::create_directories(options.out_dir);
        Context ctx{options.out_dir, options.plot, out, err, ""};
        {
            auto f = open_file(ctx.path(preset ? figure + "_config.txt" : "config.txt"));
            f << eff.serialize();
        }
        if (preset)
        {
            write_metadata(ctx, *preset, user, eff);
        }
        return ex.complex ? dispatch_scalar<Complex>(command, figure, eff, ex, ctx)
                          : dispatch_scalar<double>(command, figure, eff, ex, ctx);
    }
    catch (const ConfigError& e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const InvalidArgument& e)
    {
        err << "invalid argument: " << e.what() << "\n";
        return exit_config;
    }
    catch (const NumericalError& e)
    {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace framefit::cli
