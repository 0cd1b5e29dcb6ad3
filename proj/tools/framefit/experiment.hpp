#ifndef FRAMEFIT_TOOLS_EXPERIMENT_HPP
#define FRAMEFIT_TOOLS_EXPERIMENT_HPP

#include <string>
#include <vector>

#include <framefit/config.hpp>
#include <framefit/diagnostics.hpp>

namespace framefit::cli
{

/// Every recognised key with its default value. Keys without a default
/// (truncation.N, figure.id) are recognised but absent.
const Config& default_config();
bool is_known_key(const std::string& key);

/// Defaults overlaid with `user`. Unknown keys are rejected at their line.
/// `criterion.delta_prime = delta` and `truncation.policy = auto` are
/// resolved, so the result serializes to explicit values.
Config effective_config(const Config& user);

struct Experiment
{
    Function function;
    Domain domain;
    Dictionary dictionary;
    GrowthPolicy policy = GrowthPolicy::flat_unit_step;
    StoppingCriterion criterion;
    Strategy strategy = Strategy::bisection;
    AssemblyOptions assembly;
    ThresholdMode threshold = ThresholdMode::absolute;
    /// Complex arithmetic unless dictionary and function are real.
    bool complex = true;

    FitProblem problem() const
    {
        return FitProblem{function, dictionary, domain, assembly};
    }
};

/// Throws ConfigError at the offending key.
Experiment build_experiment(const Config& effective);

Function build_function(const Config& effective, const Dictionary& dictionary);

/// Family over one numeric function key (`function.p`, `function.sigma`, ...).
FunctionFamily build_family(const Config& effective, const Dictionary& dictionary,
                            const std::string& key);

FamilySetup build_family_setup(const Config& effective, const std::string& key);

std::string to_string(GrowthPolicy p);

} // namespace framefit::cli

#endif
