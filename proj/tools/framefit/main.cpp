#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace framefit;
    CLI::App app{"Adaptive frame approximation with regularized least squares"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    cli::RunOptions options;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--set", overrides, "override a key, key=value (repeatable)");
        sub->add_option("--out", options.out_dir, "output directory")->capture_default_str();
        sub->add_flag("--plot", options.plot, "also write SVG plots");
    };

    add_common(app.add_subcommand("approximate", "fit at a fixed truncation truncation.N"));
    add_common(app.add_subcommand("adapt", "select N adaptively"));
    add_common(app.add_subcommand("sweep", "errors, residual and coefficient norm against N"));
    add_common(app.add_subcommand("grid", "adaptive runs over a parameter grid"));
    CLI::App* figure = app.add_subcommand("figure", "reproduce a figure preset");
    add_common(figure);
    figure->add_option("id", options.figure_id, "fig1 to fig8")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::exit_config;
    }

    Config user;
    try
    {
        if (!config_path.empty())
        {
            user = Config::load(config_path);
        }
        for (const auto& o : overrides)
        {
            user.apply_override(o);
        }
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::exit_config;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return cli::run_command(command, user, options, std::cout, std::cerr);
}
