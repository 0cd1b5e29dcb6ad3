#include <framefit/config.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace framefit
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
    {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_key(std::string_view key)
{
    if (key.empty() || key.front() == '.' || key.back() == '.')
    {
        return false;
    }
    for (char c : key)
    {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_'))
        {
            return false;
        }
    }
    return true;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
        {
            break;
        }
        start = pos + 1;
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::string source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message
                                  : source + ": " + message),
      source_(std::move(source)), line_(line)
{
}

Config Config::parse(std::string_view text, const std::string& source)
{
    Config c;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty())
        {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
            {
                throw ConfigError(source, line_no, "expected 'key = value'");
            }
            const std::string_view key = trim(line.substr(0, eq));
            if (!valid_key(key))
            {
                throw ConfigError(source, line_no, "invalid key '" + std::string(key) + "'");
            }
            c.set(std::string(key), std::string(trim(line.substr(eq + 1))), source, line_no);
        }
        if (nl == std::string_view::npos)
        {
            break;
        }
        start = nl + 1;
    }
    c.origin_   = source;
    c.end_line_ = line_no;
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError(path, 0, "cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void Config::apply_override(std::string_view assignment)
{
    const auto eq = assignment.find('=');
    const std::string source = "--set " + std::string(assignment);
    if (eq == std::string_view::npos)
    {
        throw ConfigError(source, 0, "expected key=value");
    }
    const std::string_view key = trim(assignment.substr(0, eq));
    if (!valid_key(key))
    {
        throw ConfigError(source, 0, "invalid key '" + std::string(key) + "'");
    }
    set(std::string(key), std::string(trim(assignment.substr(eq + 1))), "--set", 0);
}

void Config::set(const std::string& key, std::string value, std::string source, int line)
{
    entries_[key] = Entry{std::move(value), std::move(source), line};
}

void Config::erase(const std::string& key)
{
    entries_.erase(key);
}

bool Config::has(const std::string& key) const
{
    return entries_.count(key) > 0;
}

const Config::Entry& Config::entry(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
    {
        throw ConfigError(origin_, end_line_, "missing required key '" + key + "'");
    }
    return it->second;
}

void Config::inherit_origin(const Config& other)
{
    origin_   = other.origin_;
    end_line_ = other.end_line_;
}

void Config::fail(const std::string& key, const std::string& message) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
    {
        throw ConfigError(origin_, end_line_, key + ": " + message);
    }
    throw ConfigError(it->second.source, it->second.line, key + ": " + message);
}

std::string Config::get_string(const std::string& key) const
{
    return entry(key).value;
}

double Config::get_double(const std::string& key) const
{
    const auto v = parse_double(entry(key).value);
    if (!v)
    {
        fail(key, "expected a number, got '" + entry(key).value + "'");
    }
    return *v;
}

Index Config::get_index(const std::string& key) const
{
    const std::string& s = entry(key).value;
    Index v              = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
    {
        fail(key, "expected an integer, got '" + s + "'");
    }
    return v;
}

bool Config::get_bool(const std::string& key) const
{
    const std::string& s = entry(key).value;
    if (s == "true" || s == "1" || s == "yes")
    {
        return true;
    }
    if (s == "false" || s == "0" || s == "no")
    {
        return false;
    }
    fail(key, "expected true or false, got '" + s + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const
{
    const auto v = parse_double_list(entry(key).value);
    if (!v || v->empty())
    {
        fail(key, "expected a list of numbers, got '" + entry(key).value + "'");
    }
    return *v;
}

std::vector<Index> Config::get_indices(const std::string& key) const
{
    std::vector<Index> out;
    for (const double x : get_doubles(key))
    {
        if (x != std::floor(x) || std::abs(x) > 1e15)
        {
            fail(key, "expected integers");
        }
        out.push_back(Index(x));
    }
    return out;
}

std::string Config::serialize() const
{
    std::string out;
    for (const auto& [key, e] : entries_)
    {
        out += key + " = " + e.value + "\n";
    }
    return out;
}

std::string format_double(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text)
{
    text = trim(text);
    double factor = 1.0;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi")
    {
        factor = std::numbers::pi;
        text   = trim(text.substr(0, text.size() - 2));
        if (text.empty() || text == "+")
        {
            return factor;
        }
        if (text == "-")
        {
            return -factor;
        }
    }
    if (!text.empty() && text.front() == '+')
    {
        text.remove_prefix(1);
    }
    double v             = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(v))
    {
        return std::nullopt;
    }
    return v * factor;
}

std::optional<std::vector<double>> parse_double_list(std::string_view text)
{
    text = trim(text);
    std::vector<double> out;
    if (text.substr(0, 4) == "log:")
    {
        const auto parts = split(text.substr(4), ':');
        if (parts.size() != 3)
        {
            return std::nullopt;
        }
        const auto a = parse_double(parts[0]);
        const auto b = parse_double(parts[1]);
        const auto n = parse_double(parts[2]);
        if (!a || !b || !n || *n < 1 || *n != std::floor(*n))
        {
            return std::nullopt;
        }
        const Index count = Index(*n);
        for (Index i = 0; i < count; ++i)
        {
            const double t = count == 1 ? 0.0 : double(i) / double(count - 1);
            out.push_back(std::pow(10.0, *a + t * (*b - *a)));
        }
        return out;
    }
    for (const auto item : split(text, ','))
    {
        if (item.find(':') != std::string_view::npos)
        {
            const auto parts = split(item, ':');
            if (parts.size() != 3)
            {
                return std::nullopt;
            }
            const auto lo   = parse_double(parts[0]);
            const auto step = parse_double(parts[1]);
            const auto hi   = parse_double(parts[2]);
            if (!lo || !step || !hi || !(*step > 0.0) || (*hi - *lo) / *step > 1e7)
            {
                return std::nullopt;
            }
            const Index count = Index(std::floor((*hi - *lo) / *step + 1e-9)) + 1;
            for (Index i = 0; i < count; ++i)
            {
                out.push_back(*lo + double(i) * *step);
            }
            continue;
        }
        const auto v = parse_double(item);
        if (!v)
        {
            return std::nullopt;
        }
        out.push_back(*v);
    }
    return out;
}

} // namespace framefit
