// config.hpp: Scenario files for the twobath command-line tool
//
// Format: one "section.key = value" per line, '#' starts a comment, blank
// lines ignored. Every key below is mandatory except output.path.
//
//   system.omega  system.lambda
//   bath1.temperature  bath1.J0  bath1.omega_min  bath1.omega_max   (same for bath2)
//   discretization.K
//   time.t_start  time.t_end  time.steps          (steps = number of intervals)
//   initial.alpha1_re  initial.alpha1_im  initial.alpha2_re  initial.alpha2_im
//   output.path                                   (optional)

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twobath/core.hpp"

namespace twobath::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    double t_start{0.0};
    double t_end{1.0};
    std::size_t steps{1};

    // steps + 1 points, endpoints included.
    std::vector<double> points() const;
};

struct ScenarioConfig {
    SystemParams system;
    BathSpec bath1;
    BathSpec bath2;
    std::size_t K{0};
    TimeGrid time;
    InitialAmplitudes initial;
    std::optional<std::string> output_path;
};

inline constexpr std::size_t max_bath_modes = 8000;

// Throws ConfigError on syntax errors, unknown, duplicate or missing keys,
// unparsable numbers and violated grid invariants (steps >= 1,
// t_end > t_start >= 0, 1 <= K <= max_bath_modes). Physical preconditions are
// left to validate_scenario.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

}  // namespace twobath::cli
