#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "experiment.hpp"
#include "support.hpp"

using namespace framefit;
namespace fs = std::filesystem;

namespace
{

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("framefit_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

Run run(const std::string& command, const Config& user, const fs::path& dir,
        const std::string& figure = "")
{
    cli::RunOptions opts;
    opts.out_dir   = dir.string();
    opts.figure_id = figure;
    std::ostringstream out, err;
    Run r;
    r.code = cli::run_command(command, user, opts, out, err);
    r.out  = out.str();
    r.err  = err.str();
    return r;
}

/// Value of `key=` in the first output line containing it.
std::string field(const std::string& text, const std::string& key)
{
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
    {
        if (line.rfind("#", 0) == 0 || line.find(" = ") != std::string::npos)
        {
            continue;
        }
        std::istringstream words(line);
        std::string w;
        while (words >> w)
        {
            if (w.rfind(key + "=", 0) == 0)
            {
                return w.substr(key.size() + 1);
            }
        }
    }
    FAIL("no field " << key << " in output:\n" << text);
    return {};
}

double number(const std::string& text, const std::string& key)
{
    return std::stod(field(text, key));
}

std::string effective_block(const std::string& out)
{
    const auto begin = out.find("# effective configuration\n");
    const auto end   = out.find("# end\n");
    REQUIRE(begin != std::string::npos);
    REQUIRE(end != std::string::npos);
    const auto start = begin + std::string("# effective configuration\n").size();
    return out.substr(start, end - start);
}

std::string read_file(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int shell(const std::string& args)
{
    const char* bin = std::getenv("FRAMEFIT_BIN");
    REQUIRE(bin != nullptr);
    const int status = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Config constant_fit()
{
    return Config::parse("function = constant\n"
                         "dictionary = fourier\n"
                         "dictionary.lower = -2\n"
                         "dictionary.upper = 2\n"
                         "domain.lower = -2\n"
                         "domain.upper = 2\n"
                         "truncation.N = 1\n",
                         "constant.cfg");
}

} // namespace

TEST_CASE("config parsing")
{
    const Config c = Config::parse("# header\n"
                                   "\n"
                                   "  a.b = 1   # trailing\n"
                                   "name=fourier\n"
                                   "a.b = 2\n",
                                   "x.cfg");
    CHECK(c.get_string("name") == "fourier");
    CHECK(c.get_double("a.b") == 2.0);
    CHECK(c.entry("a.b").line == 5);
    CHECK(c.entry("a.b").source == "x.cfg");

    try
    {
        Config::parse("a = 1\nnot an assignment\n", "y.cfg");
        FAIL("expected a parse error");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.source() == "y.cfg");
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(Config::parse(" = 3\n"), ConfigError);

    try
    {
        c.get_index("name");
        FAIL("expected a type error");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(c.entry("missing"), ConfigError);

    Config o;
    o.apply_override("criterion.delta=1e-8");
    CHECK(o.get_double("criterion.delta") == 1e-8);
    CHECK_THROWS_AS(o.apply_override("nonsense"), ConfigError);
}

TEST_CASE("numbers and lists")
{
    CHECK(parse_double("pi") == std::numbers::pi);
    CHECK(*parse_double("8pi") == doctest::Approx(8.0 * std::numbers::pi));
    CHECK(parse_double("-2.5") == -2.5);
    CHECK(parse_double("1e-3") == 1e-3);
    CHECK_FALSE(parse_double("abc").has_value());
    CHECK_FALSE(parse_double("").has_value());
    CHECK_FALSE(parse_double("1.0x").has_value());

    CHECK(parse_double_list("1,2,3") == std::vector<double>{1, 2, 3});
    CHECK(parse_double_list("0:50:200") == std::vector<double>{0, 50, 100, 150, 200});
    const auto logs = parse_double_list("log:-2:0:3");
    REQUIRE(logs.has_value());
    REQUIRE(logs->size() == 3);
    CHECK((*logs)[0] == doctest::Approx(0.01));
    CHECK((*logs)[2] == doctest::Approx(1.0));
    CHECK_FALSE(parse_double_list("1:0:5").has_value());

    testing::Gen g(11);
    for (int i = 0; i < 500; ++i)
    {
        const double x = std::ldexp(g.uniform(-1.0, 1.0), int(g.integer(-300, 300)));
        CHECK(parse_double(format_double(x)) == x);
    }
}

TEST_CASE("serialize and parse round trip on random configs")
{
    testing::Gen g(5);
    const std::string alphabet = "abcdefghij_0123456789";
    for (int trial = 0; trial < 100; ++trial)
    {
        Config c;
        const int n = int(g.integer(0, 12));
        for (int i = 0; i < n; ++i)
        {
            std::string key(1, char('a' + g.integer(0, 25)));
            const int parts = int(g.integer(0, 2));
            for (int p = 0; p < parts; ++p)
            {
                key += '.';
                key += char('a' + g.integer(0, 25));
                for (Index k = g.integer(0, 5); k > 0; --k)
                {
                    key += alphabet[std::size_t(g.integer(0, Index(alphabet.size()) - 1))];
                }
            }
            std::string value;
            switch (g.integer(0, 2))
            {
            case 0:
                value = format_double(std::ldexp(g.uniform(-1.0, 1.0), int(g.integer(-50, 50))));
                break;
            case 1:
                value = "log:-3:" + std::to_string(g.integer(0, 4)) + ":5";
                break;
            default:
                value = "w" + std::to_string(g.integer(0, 1000)) + " x,y";
                break;
            }
            c.set(key, value);
        }
        const std::string once  = c.serialize();
        const Config back       = Config::parse(once);
        const std::string twice = back.serialize();
        CHECK(once == twice);
        REQUIRE(back.entries().size() == c.entries().size());
        for (const auto& [k, e] : c.entries())
        {
            CHECK(back.get_string(k) == e.value);
        }
    }
}

TEST_CASE("effective configuration")
{
    const Config eff = cli::effective_config(constant_fit());
    CHECK(eff.get_double("criterion.delta_prime") == eff.get_double("criterion.delta"));
    CHECK(eff.get_string("truncation.policy") == "flat");
    CHECK(cli::effective_config(Config::parse(eff.serialize())).serialize() == eff.serialize());

    Config disk = constant_fit();
    disk.set("domain", "disk");
    disk.set("dictionary.lower", "-1,-1");
    disk.set("dictionary.upper", "1,1");
    CHECK(cli::effective_config(disk).get_string("truncation.policy") == "tensor_balanced");

    try
    {
        cli::effective_config(Config::parse("function = constant\nfoo.bar = 1\n", "c.cfg"));
        FAIL("expected an unknown key error");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.source() == "c.cfg");
        CHECK(e.line() == 2);
    }
    CHECK(cli::is_known_key("criterion.q"));
    CHECK_FALSE(cli::is_known_key("criterion.qq"));
}

TEST_CASE("approximate a single constant mode")
{
    const fs::path dir = scratch("approximate");
    const Run r        = run("approximate", constant_fit(), dir);
    REQUIRE(r.code == cli::exit_ok);
    CHECK(number(r.out, "uniform_error") <= 1e-12);
    CHECK(number(r.out, "rank") == 1);
    CHECK(fs::exists(dir / "coefficients.csv"));
    CHECK(fs::exists(dir / "approximation.csv"));
    CHECK(read_file(dir / "coefficients.csv").rfind("index,real,imag,abs\n", 0) == 0);
    CHECK(read_file(dir / "config.txt") == effective_block(r.out));
}

TEST_CASE("printed configuration reproduces the run")
{
    Config user = constant_fit();
    user.set("function", "exp_cos");
    user.set("function.omega", "5");
    user.set("domain.lower", "-1");
    user.set("domain.upper", "1");
    user.set("truncation.N", "30");
    const Run first  = run("approximate", user, scratch("repro_a"));
    const Run second = run("approximate", Config::parse(effective_block(first.out)), scratch("repro_b"));
    REQUIRE(first.code == cli::exit_ok);
    REQUIRE(second.code == cli::exit_ok);
    CHECK(first.out == second.out);
}

TEST_CASE("missing truncation is a config error at the file")
{
    Config c = Config::parse("function = constant\n"
                             "dictionary = fourier\n"
                             "\n",
                             "a.cfg");
    const Run r = run("approximate", c, scratch("missing"));
    CHECK(r.code == cli::exit_config);
    CHECK(r.err.find("a.cfg:") != std::string::npos);
    CHECK(r.err.find("truncation.N") != std::string::npos);
}

TEST_CASE("overflow is a numerical failure")
{
    Config c = constant_fit();
    c.set("function", "exp");
    c.set("function.scale", "1e308");
    const Run r = run("approximate", c, scratch("overflow"));
    CHECK(r.code == cli::exit_numerical);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("adapt reports hitting the maximum as a result")
{
    Config c = Config::parse("function = exp\n"
                             "criterion.delta = 1e-3\n"
                             "criterion.epsilon = 1e-1\n"
                             "criterion.nmax = 64\n");
    const fs::path dir = scratch("nmax");
    const Run r        = run("adapt", c, dir);
    CHECK(r.code == cli::exit_ok);
    CHECK(field(r.out, "terminated") == "hitNmax");
    CHECK(number(r.out, "N_opt") == 64);
    CHECK(read_file(dir / "trace.csv").rfind(
              "phase,N,descriptor,residual,coefnorm,bnorm,residual_pass,points_pass,accepted\n", 0) == 0);
}

TEST_CASE("adapt strategies agree on cos(50x)")
{
    Config c = Config::parse("function = cos\nfunction.p = 50\n");
    const Run bis = run("adapt", c, scratch("bis"));
    c.set("strategy", "incremental");
    const Run inc = run("adapt", c, scratch("inc"));
    REQUIRE(bis.code == cli::exit_ok);
    REQUIRE(inc.code == cli::exit_ok);
    CHECK(field(bis.out, "terminated") == "converged");
    const double gap = number(bis.out, "N_opt") - number(inc.out, "N_opt");
    CHECK(gap >= 0.0);
    CHECK(gap <= 3.0);
    CHECK(number(bis.out, "uniform_error") <= 1e-6);
}

TEST_CASE("sweep and grid outputs")
{
    Config c = Config::parse("function = exp_cos\n"
                             "function.omega = 5\n"
                             "sweep.N = 2:2:20\n"
                             "sweep.epsilon = 1e-6,1e-12\n");
    const fs::path dir = scratch("sweep");
    const Run s        = run("sweep", c, dir);
    REQUIRE(s.code == cli::exit_ok);
    for (const char* name : {"sweep_eps1e-06.csv", "sweep_eps1e-12.csv"})
    {
        const std::string text = read_file(dir / name);
        CHECK(text.rfind("N,residual,coefnorm,h_error,uniform_error\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 11);
    }

    c.set("sweep.N", "5:1:3");
    CHECK(run("sweep", c, scratch("sweep_bad")).code == cli::exit_config);

    Config g = Config::parse("function = exp\n"
                             "grid.axis1 = 1e-12,1e-6\n"
                             "grid.axis2 = 1e-8,1e-4\n"
                             "criterion.nmax = 128\n");
    const fs::path gdir = scratch("grid");
    const Run gr        = run("grid", g, gdir);
    REQUIRE(gr.code == cli::exit_ok);
    CHECK(number(gr.out, "cells") == 4);
}

TEST_CASE("figure presets")
{
    const fs::path dir = scratch("fig1");
    const Run r        = run("figure", Config(), dir, "fig1");
    REQUIRE(r.code == cli::exit_ok);
    std::istringstream is(r.out);
    std::string line, extension;
    while (std::getline(is, line))
    {
        if (line.rfind("panel=extension", 0) == 0)
        {
            extension = line;
        }
    }
    REQUIRE_FALSE(extension.empty());
    CHECK(number(extension, "uniform_error") <= 1e-6);
    CHECK(number(extension, "N") == 41);
    const std::string meta = read_file(dir / "fig1_metadata.txt");
    CHECK(meta.find("inferred truncation.N = 41") != std::string::npos);
    CHECK(fs::exists(dir / "fig1_config.txt"));

    CHECK(run("figure", Config(), scratch("fig0"), "fig0").code == cli::exit_config);
    CHECK(cli::figure_presets().size() == 8);
    for (const auto& p : cli::figure_presets())
    {
        CHECK_NOTHROW(cli::effective_config(cli::figure_config(p, Config())));
    }
}

TEST_CASE("binary exit codes")
{
    CHECK(shell("") == cli::exit_config);
    CHECK(shell("--help") == cli::exit_ok);
    CHECK(shell("approximate --set nonsense") == cli::exit_config);
    CHECK(shell("approximate --config /nonexistent/framefit.cfg") == cli::exit_config);
    CHECK(shell("figure fig99") == cli::exit_config);
    const fs::path dir = scratch("binary");
    CHECK(shell("approximate --out " + dir.string() +
                " --set function=constant --set dictionary.lower=-2 --set dictionary.upper=2"
                " --set domain.lower=-2 --set domain.upper=2 --set truncation.N=1") == cli::exit_ok);
    CHECK(fs::exists(dir / "coefficients.csv"));
}
