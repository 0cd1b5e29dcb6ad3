///
/// \file config.hpp
///
/// Flat key/value configuration with dotted keys.
///
/// Files hold one `key = value` per line; `#` starts a comment. Later
/// assignments override earlier ones, and command-line overrides use the
/// same `key=value` form.
///
#ifndef FRAMEFIT_CONFIG_HPP
#define FRAMEFIT_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <framefit/types.hpp>

namespace framefit
{

/// Configuration error. `line()` is the 1-based line in `source()`, or 0 for
/// values that did not come from a file.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string source, int line, const std::string& message);

    const std::string& source() const noexcept
    {
        return source_;
    }

    int line() const noexcept
    {
        return line_;
    }

private:
    std::string source_;
    int line_;
};

class Config
{
public:
    struct Entry
    {
        std::string value;
        std::string source;
        int line = 0;
    };

    static Config parse(std::string_view text, const std::string& source = "<config>");
    static Config load(const std::string& path);

    /// Apply `key=value`.
    void apply_override(std::string_view assignment);
    void set(const std::string& key, std::string value, std::string source = "<default>",
             int line = 0);
    void erase(const std::string& key);

    bool has(const std::string& key) const;
    const Entry& entry(const std::string& key) const;
    const std::map<std::string, Entry>& entries() const noexcept
    {
        return entries_;
    }

    /// Throws ConfigError naming the key's origin when the key is missing or
    /// its value does not parse.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    Index get_index(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<Index> get_indices(const std::string& key) const;

    /// Error at the origin of `key`.
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

    /// Missing keys are reported at the end of the file this config was
    /// parsed from (or inherited from with inherit_origin).
    void inherit_origin(const Config& other);

    /// One `key = value` line per entry, sorted by key.
    std::string serialize() const;

private:
    std::map<std::string, Entry> entries_;
    std::string origin_ = "<config>";
    int end_line_       = 0;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// Parses a real number; a trailing `pi` multiplies by pi (`8pi`, `pi`,
/// `0.5pi`).
std::optional<double> parse_double(std::string_view text);

/// Comma-separated values, `lo:step:hi` inclusive ranges, or
/// `log:a:b:count` for count values from 10^a to 10^b.
std::optional<std::vector<double>> parse_double_list(std::string_view text);

} // namespace framefit

#endif /* FRAMEFIT_CONFIG_HPP */
