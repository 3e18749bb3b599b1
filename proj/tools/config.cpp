#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

namespace twobath::cli {

std::vector<double> TimeGrid::points() const
{
    std::vector<double> t(steps + 1);
    const double dt = (t_end - t_start) / static_cast<double>(steps);
    for (std::size_t i = 0; i <= steps; ++i) t[i] = t_start + static_cast<double>(i) * dt;
    t[steps] = t_end;
    return t;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    double x = 0.0;
    const char* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || ptr != end || !std::isfinite(x))
        throw ConfigError("config: " + key + ": not a finite number: '" + v + "'");
    return x;
}

std::size_t to_count(const std::string& key, const std::string& v)
{
    std::size_t x = 0;
    const char* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("config: " + key + ": not a non-negative integer: '" + v + "'");
    return x;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in)
{
    ScenarioConfig c;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto num = [](double& dst) -> Setter {
        return [&dst](const std::string& k, const std::string& v) { dst = to_double(k, v); };
    };
    auto count = [](std::size_t& dst) -> Setter {
        return [&dst](const std::string& k, const std::string& v) { dst = to_count(k, v); };
    };
    double a1r = 0, a1i = 0, a2r = 0, a2i = 0;
    const std::map<std::string, Setter> setters = {
        {"system.omega", num(c.system.omega)},
        {"system.lambda", num(c.system.lambda)},
        {"bath1.temperature", num(c.bath1.temperature)},
        {"bath1.J0", num(c.bath1.J0)},
        {"bath1.omega_min", num(c.bath1.omega_min)},
        {"bath1.omega_max", num(c.bath1.omega_max)},
        {"bath2.temperature", num(c.bath2.temperature)},
        {"bath2.J0", num(c.bath2.J0)},
        {"bath2.omega_min", num(c.bath2.omega_min)},
        {"bath2.omega_max", num(c.bath2.omega_max)},
        {"discretization.K", count(c.K)},
        {"time.t_start", num(c.time.t_start)},
        {"time.t_end", num(c.time.t_end)},
        {"time.steps", count(c.time.steps)},
        {"initial.alpha1_re", num(a1r)},
        {"initial.alpha1_im", num(a1i)},
        {"initial.alpha2_re", num(a2r)},
        {"initial.alpha2_im", num(a2i)},
        {"output.path", [&c](const std::string&, const std::string& v) { c.output_path = v; }},
    };

    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError("config: line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        it->second(key, value);
    }

    std::string missing;
    for (const auto& [key, setter] : setters)
        if (key != "output.path" && !seen.count(key)) missing += (missing.empty() ? "" : ", ") + key;
    if (!missing.empty()) throw ConfigError("config: missing keys: " + missing);

    c.initial = InitialAmplitudes{cplx{a1r, a1i}, cplx{a2r, a2i}};
    if (c.time.steps < 1) throw ConfigError("config: time.steps must be >= 1");
    if (!(c.time.t_start >= 0.0)) throw ConfigError("config: time.t_start must be >= 0");
    if (!(c.time.t_end > c.time.t_start)) throw ConfigError("config: time.t_end must exceed time.t_start");
    if (c.K < 1 || c.K > max_bath_modes)
        throw ConfigError("config: discretization.K must be in [1, " + std::to_string(max_bath_modes) + "]");
    return c;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

}  // namespace twobath::cli
