#ifndef FRAMEFIT_TOOLS_COMMANDS_HPP
#define FRAMEFIT_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <framefit/config.hpp>

namespace framefit::cli
{

enum ExitCode : int
{
    exit_ok        = 0,
    exit_failure   = 1,
    exit_config    = 2,
    exit_numerical = 3
};

struct RunOptions
{
    std::string out_dir = ".";
    bool plot           = false;
    /// Only for the figure command.
    std::string figure_id;
};

/// Runs approximate, adapt, sweep, grid or figure with the user's settings
/// (config file entries followed by overrides). Never throws; errors are
/// reported on `err` and mapped to exit codes.
int run_command(const std::string& command, const Config& user, const RunOptions& options,
                std::ostream& out, std::ostream& err);

struct FigurePreset
{
    std::string id;
    std::string description;
    /// Parameters the figure fixes.
    std::vector<std::pair<std::string, std::string>> stated;
    /// Parameters the figure leaves open, chosen here.
    std::vector<std::pair<std::string, std::string>> inferred;
};

const std::vector<FigurePreset>& figure_presets();

/// Throws ConfigError for unknown ids.
const FigurePreset& figure_preset(const std::string& id);

/// Preset values overlaid with the user's settings, before defaults.
Config figure_config(const FigurePreset& preset, const Config& user);

} // namespace framefit::cli

#endif
