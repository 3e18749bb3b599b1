// commands.hpp: Subcommands of the twobath tool. Each writes its full output
// to a stream; run() maps failures to exit codes:
//   0 success, 2 config/usage error, 3 numerical failure, 4 precondition violation.

#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "twobath/core.hpp"

namespace twobath::cli {

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { exact, ww };

// "coord:min:max:n", n >= 2 and min < max.
struct GridAxis {
    std::string coord;
    double min{0.0};
    double max{0.0};
    std::size_t n{2};

    std::vector<double> values() const;
};

GridAxis parse_grid(const std::string& spec);
// "coord=value"
std::pair<std::string, double> parse_fix(const std::string& spec);

// Validated scenario with both baths discretized on the shared grid.
struct Scenario {
    ScenarioConfig config;
    std::vector<std::string> warnings;
    DiscretizedBath bath1;
    DiscretizedBath bath2;
};

// Throws PreconditionError listing every violation.
Scenario prepare(const ScenarioConfig& config);

// 17 significant digits, '.' decimal, no locale. Throws NumericalError on NaN/inf.
std::string format_number(double x);

void cmd_evolve(const Scenario& s, Engine engine, std::ostream& out);
nlohmann::ordered_json cmd_equilibrium(const Scenario& s, bool sweep, Engine engine);
void cmd_wigner(const Scenario& s, const GridAxis& a, const GridAxis& b,
                const std::map<std::string, double>& fixed, std::ostream& out);

struct KernelOptions {
    bool numeric{false};  // add the numeric inverse-transform columns
    bool gibbs{false};    // add the Gibbs comparison; requires equal temperatures
};
void cmd_kernel(const Scenario& s, const std::vector<GridAxis>& axes,
                const std::map<std::string, double>& fixed, const KernelOptions& opt,
                std::ostream& out);
void cmd_compare_ww(const Scenario& s, std::ostream& out);

// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twobath::cli
