#include "experiment.hpp"

#include <set>

namespace framefit::cli
{

namespace
{

Config make_defaults()
{
    Config c;
    const std::pair<const char*, const char*> defaults[] = {
        {"function", "exp"},
        {"function.p", "1"},
        {"function.omega", "8pi"},
        {"function.sigma", "0"},
        {"function.value", "1"},
        {"function.element", "100"},
        {"function.scale", "1"},
        {"domain", "interval"},
        {"domain.lower", "-1"},
        {"domain.upper", "1"},
        {"domain.center", "0,0"},
        {"domain.radius", "0.9"},
        {"dictionary", "fourier"},
        {"dictionary.lower", "-2"},
        {"dictionary.upper", "2"},
        {"truncation.policy", "auto"},
        {"solver.threshold", "absolute"},
        {"solver.weight", "none"},
        {"solver.alpha", "1"},
        {"criterion.delta", "1e-10"},
        {"criterion.epsilon", "1e-12"},
        {"criterion.q", "3"},
        {"criterion.seed", "0"},
        {"criterion.nmax", "4096"},
        {"criterion.mu", "none"},
        {"strategy", "bisection"},
        {"sampling.gamma", "2"},
        {"sampling.kind", "equispaced"},
        {"sampling.seed", "0"},
        {"sweep.N", "1:1:100"},
        {"sweep.epsilon", "1e-12"},
        {"sweep.fine_factor", "16"},
        {"grid.kind", "epsilon_delta"},
        {"grid.axis1", "log:-10:-3:8"},
        {"grid.axis2", "log:-10:-3:8"},
        {"timing.p", "0:50:500"},
        {"timing.repeats", "7"},
        {"timing.incremental", "true"},
        {"error.grid", "2000"},
        {"cache.megabytes", "1024"},
    };
    for (const auto& [k, v] : defaults)
    {
        c.set(k, v);
    }
    return c;
}

const std::set<std::string>& optional_keys()
{
    static const std::set<std::string> keys = {"truncation.N", "criterion.delta_prime",
                                               "figure.id", "figure.N"};
    return keys;
}

Point point_from(const Config& c, const std::string& key)
{
    const std::vector<double> v = c.get_doubles(key);
    if (v.size() < 1 || v.size() > 3)
    {
        c.fail(key, "expected 1 to 3 coordinates");
    }
    Point p(Index(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        p(Index(i)) = v[i];
    }
    return p;
}

template <typename F>
auto checked(const Config& c, const std::string& key, F&& f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const InvalidArgument& e)
    {
        c.fail(key, e.what());
    }
}

Function base_function(const Config& c, const Dictionary& dict)
{
    const std::string name = c.get_string("function");
    if (name == "exp")
    {
        return functions::exponential();
    }
    if (name == "identity")
    {
        return functions::identity();
    }
    if (name == "constant")
    {
        return functions::constant(c.get_double("function.value"));
    }
    if (name == "cos")
    {
        return functions::cosine(c.get_double("function.p"));
    }
    if (name == "exp_cos")
    {
        return functions::exp_cos(c.get_double("function.omega"));
    }
    if (name == "noisy_exp")
    {
        return functions::noisy_exponential(c.get_double("function.sigma"));
    }
    if (name == "singular_2d")
    {
        return functions::singular_2d(c.get_double("function.p"));
    }
    if (name == "exp_plus_element")
    {
        const Index k = c.get_index("function.element");
        if (k < 1)
        {
            c.fail("function.element", "element positions start at 1");
        }
        const auto desc = TruncationDescriptor::flat(k);
        checked(c, "function.element", [&] {
            dict.check(desc);
            return 0;
        });
        const Function phi = Function::complex(
            [dict, desc, k](const Point& x) { return dict.evaluate_element(desc, k - 1, x); },
            "phi_" + std::to_string(k));
        return functions::exponential().plus(phi);
    }
    c.fail("function", "unknown function '" + name +
                           "' (exp, identity, constant, cos, exp_cos, noisy_exp, "
                           "singular_2d, exp_plus_element)");
}

} // namespace

const Config& default_config()
{
    static const Config c = make_defaults();
    return c;
}

bool is_known_key(const std::string& key)
{
    return default_config().has(key) || optional_keys().count(key) > 0;
}

std::string to_string(GrowthPolicy p)
{
    switch (p)
    {
    case GrowthPolicy::flat_unit_step:
        return "flat";
    case GrowthPolicy::alternate_split:
        return "alternate_split";
    case GrowthPolicy::tensor_balanced:
        return "tensor_balanced";
    }
    return "flat";
}

Config effective_config(const Config& user)
{
    Config eff = default_config();
    eff.inherit_origin(user);
    for (const auto& [key, e] : user.entries())
    {
        if (!is_known_key(key))
        {
            throw ConfigError(e.source, e.line, "unknown key '" + key + "'");
        }
        eff.set(key, e.value, e.source, e.line);
    }
    if (!eff.has("criterion.delta_prime"))
    {
        const auto& d = eff.entry("criterion.delta");
        eff.set("criterion.delta_prime", d.value, d.source, d.line);
    }
    if (eff.get_string("truncation.policy") == "auto")
    {
        const std::string dict = eff.get_string("dictionary");
        std::string policy     = "flat";
        if (dict == "radial_singular")
        {
            policy = "alternate_split";
        }
        else if (eff.get_doubles("dictionary.lower").size() > 1)
        {
            policy = "tensor_balanced";
        }
        eff.set("truncation.policy", policy);
    }
    return eff;
}

Function build_function(const Config& c, const Dictionary& dict)
{
    Function f         = base_function(c, dict);
    const double scale = c.get_double("function.scale");
    if (scale != 1.0)
    {
        f = f.scaled(scale);
    }
    return f;
}

FunctionFamily build_family(const Config& c, const Dictionary& dict, const std::string& key)
{
    if (!is_known_key(key) || key.rfind("function.", 0) != 0)
    {
        throw InvalidArgument("build_family: " + key + " is not a function parameter");
    }
    return [c, dict, key](double v) {
        Config copy = c;
        copy.set(key, format_double(v));
        return build_function(copy, dict);
    };
}

Experiment build_experiment(const Config& c)
{
    Experiment ex;

    const std::string dict_kind = c.get_string("dictionary");
    const Point lo              = point_from(c, "dictionary.lower");
    const Point hi              = point_from(c, "dictionary.upper");
    if (lo.size() != hi.size())
    {
        c.fail("dictionary.upper", "dimension differs from dictionary.lower");
    }
    ex.dictionary = checked(c, "dictionary", [&] {
        if (dict_kind == "fourier")
        {
            return lo.size() == 1 ? Dictionary::fourier(lo(0), hi(0)) : Dictionary::fourier(lo, hi);
        }
        if (dict_kind == "chebyshev")
        {
            if (lo.size() == 1)
            {
                return Dictionary::chebyshev(lo(0), hi(0));
            }
            std::vector<Dictionary> factors;
            for (Index i = 0; i < lo.size(); ++i)
            {
                factors.push_back(Dictionary::chebyshev(lo(i), hi(i)));
            }
            return Dictionary::tensor_product(factors);
        }
        if (dict_kind == "radial_singular")
        {
            return radial_singular_frame(lo, hi);
        }
        c.fail("dictionary", "unknown dictionary '" + dict_kind +
                                 "' (fourier, chebyshev, radial_singular)");
    });

    const std::string dom_kind = c.get_string("domain");
    ex.domain                  = checked(c, "domain", [&] {
        if (dom_kind == "interval")
        {
            const Point a = point_from(c, "domain.lower");
            const Point b = point_from(c, "domain.upper");
            if (a.size() != 1 || b.size() != 1)
            {
                c.fail("domain.lower", "an interval has one coordinate");
            }
            return Domain::interval(a(0), b(0));
        }
        if (dom_kind == "box")
        {
            return Domain::box(point_from(c, "domain.lower"), point_from(c, "domain.upper"));
        }
        if (dom_kind == "disk")
        {
            const Point centre = point_from(c, "domain.center");
            if (centre.size() != 2)
            {
                c.fail("domain.center", "a disk centre has two coordinates");
            }
            return Domain::disk(centre(0), centre(1), c.get_double("domain.radius"));
        }
        c.fail("domain", "unknown domain '" + dom_kind + "' (interval, box, disk)");
    });
    if (ex.domain.dim() != ex.dictionary.dim())
    {
        c.fail("domain", "dimension " + std::to_string(ex.domain.dim()) +
                             " differs from the dictionary dimension " +
                             std::to_string(ex.dictionary.dim()));
    }

    const std::string policy = c.get_string("truncation.policy");
    if (policy == "flat")
    {
        ex.policy = GrowthPolicy::flat_unit_step;
    }
    else if (policy == "alternate_split")
    {
        ex.policy = GrowthPolicy::alternate_split;
    }
    else if (policy == "tensor_balanced")
    {
        ex.policy = GrowthPolicy::tensor_balanced;
    }
    else
    {
        c.fail("truncation.policy", "unknown policy '" + policy +
                                        "' (auto, flat, alternate_split, tensor_balanced)");
    }
    checked(c, "truncation.policy", [&] {
        (void)TruncationSchedule(ex.dictionary, ex.policy);
        return 0;
    });

    ex.function = build_function(c, ex.dictionary);
    ex.complex  = !(ex.dictionary.is_real() && ex.function.is_real());

    StoppingCriterion& cr = ex.criterion;
    cr.delta              = c.get_double("criterion.delta");
    cr.delta_prime        = c.get_double("criterion.delta_prime");
    cr.epsilon            = c.get_double("criterion.epsilon");
    cr.q                  = c.get_index("criterion.q");
    cr.seed               = std::uint64_t(c.get_index("criterion.seed"));
    cr.nmax               = c.get_index("criterion.nmax");
    if (c.get_string("criterion.mu") != "none")
    {
        cr.mu = c.get_double("criterion.mu");
    }
    checked(c, "criterion.delta", [&] {
        cr.validate();
        return 0;
    });

    const std::string strategy = c.get_string("strategy");
    if (strategy == "incremental")
    {
        ex.strategy = Strategy::incremental;
    }
    else if (strategy == "bisection")
    {
        ex.strategy = Strategy::bisection;
    }
    else
    {
        c.fail("strategy", "expected incremental or bisection");
    }

    const double gamma = c.get_double("sampling.gamma");
    ex.assembly.rule   = checked(c, "sampling.gamma", [&] { return OversamplingRule(gamma); });
    const std::string kind = c.get_string("sampling.kind");
    if (kind == "equispaced")
    {
        ex.assembly.kind = SamplingKind::equispaced;
    }
    else if (kind == "random")
    {
        ex.assembly.kind = SamplingKind::random_uniform;
    }
    else
    {
        c.fail("sampling.kind", "expected equispaced or random");
    }
    ex.assembly.seed = std::uint64_t(c.get_index("sampling.seed"));

    const std::string threshold = c.get_string("solver.threshold");
    if (threshold == "absolute")
    {
        ex.threshold = ThresholdMode::absolute;
    }
    else if (threshold == "relative")
    {
        ex.threshold = ThresholdMode::relative;
    }
    else
    {
        c.fail("solver.threshold", "expected absolute or relative");
    }
    return ex;
}

FamilySetup build_family_setup(const Config& c, const std::string& key)
{
    const Experiment ex = build_experiment(c);
    FamilySetup s;
    s.family      = build_family(c, ex.dictionary, key);
    s.dictionary  = ex.dictionary;
    s.domain      = ex.domain;
    s.assembly    = ex.assembly;
    s.policy      = ex.policy;
    s.criterion   = ex.criterion;
    const Index mb = c.get_index("cache.megabytes");
    if (mb < 0)
    {
        c.fail("cache.megabytes", "must be non-negative");
    }
    s.cache_bytes = std::size_t(mb) << 20;
    return s;
}

} // namespace framefit::cli
