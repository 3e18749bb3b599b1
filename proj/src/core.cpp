#include "twobath/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twobath {

double SystemParams::normal_mode_frequency(int mode) const
{
    if (mode == 1) return omega1();
    if (mode == 2) return omega2();
    throw std::invalid_argument("normal mode index must be 1 or 2");
}

SystemParams make_system(double omega, double lambda)
{
    if (!std::isfinite(omega) || !(omega > 0.0))
        throw std::invalid_argument("omega must be positive");
    if (!std::isfinite(lambda) || !(std::abs(lambda) < omega))
        throw std::invalid_argument("|lambda| must be smaller than omega");
    return SystemParams{omega, lambda};
}

bool DiscretizedBath::same_grid(const DiscretizedBath& other) const
{
    return frequencies.size() == other.frequencies.size() && frequencies == other.frequencies &&
           couplings == other.couplings;
}

double PropagatorSet::unitarity_defect(std::size_t i) const
{
    return 1.0 - std::norm(u.at(i)) - v.at(i).squaredNorm();
}

namespace {

std::string fmt_num(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void check_bath(const char* name, const BathSpec& b, const SystemParams& p,
                ScenarioValidation& out)
{
    const std::string tag = std::string(name) + ": ";
    if (!std::isfinite(b.temperature) || b.temperature < 0.0)
        out.errors.push_back(tag + "temperature must be >= 0");
    if (!std::isfinite(b.J0) || b.J0 < 0.0) out.errors.push_back(tag + "J0 must be >= 0");
    if (!std::isfinite(b.omega_min) || !std::isfinite(b.omega_max) || !(b.omega_min > 0.0) ||
        !(b.omega_min < b.omega_max)) {
        out.errors.push_back(tag + "support must satisfy 0 < omega_min < omega_max");
        return;
    }
    for (int mode : {1, 2}) {
        const double Om = p.normal_mode_frequency(mode);
        if (!(Om > 0.0)) continue;  // already reported
        if (!b.contains(Om)) {
            out.errors.push_back(tag + "Omega" + std::to_string(mode) + " = " + fmt_num(Om) +
                                 " outside bath support (" + fmt_num(b.omega_min) + ", " +
                                 fmt_num(b.omega_max) + ")");
            continue;
        }
        const double kappa = std::numbers::pi * b.spectral_density(Om);
        if (kappa / Om > 0.1)
            out.warnings.push_back(tag + "kappa/Omega" + std::to_string(mode) + " = " +
                                   fmt_num(kappa / Om) +
                                   " > 0.1; weak-coupling approximation strained");
    }
}

}  // namespace

ScenarioValidation validate_scenario(const SystemParams& params, const BathSpec& bath1,
                                     const BathSpec& bath2)
{
    ScenarioValidation out;
    if (!std::isfinite(params.omega) || !(params.omega > 0.0))
        out.errors.push_back("omega = " + fmt_num(params.omega) + " must be > 0");
    if (!std::isfinite(params.lambda)) out.errors.push_back("lambda must be finite");
    for (int mode : {1, 2}) {
        const double Om = params.normal_mode_frequency(mode);
        if (!(Om > 0.0))
            out.errors.push_back("Omega" + std::to_string(mode) + " = " + fmt_num(Om) +
                                 " <= 0 (need |lambda| < omega)");
    }
    check_bath("bath1", bath1, params, out);
    check_bath("bath2", bath2, params, out);
    return out;
}

std::vector<std::string> require_valid(const SystemParams& params, const BathSpec& bath1,
                                       const BathSpec& bath2)
{
    auto v = validate_scenario(params, bath1, bath2);
    if (!v.ok()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : v.errors) msg += " [" + e + "]";
        throw ScenarioError(msg, v.errors);
    }
    return v.warnings;
}

}  // namespace twobath
