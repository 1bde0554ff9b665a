#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Exit codes used by the CLI. Library code throws the typed exceptions
// below; the CLI maps them to these codes.
enum class ExitCode : int {
    Ok = 0,
    ConfigError = 2,
    RegimeError = 3,
    ToleranceFailure = 4,
    ExplosionGuard = 5,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wrong criticality regime for the requested operation, or a theorem
// hypothesis (e.g. kappa < theta) fails.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested accuracy cannot be met (deficit too large, horizon too short...).
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExplosionError : std::runtime_error {
    ExplosionError(const std::string& msg, double t_blowup, std::size_t count)
        : std::runtime_error(msg), time_of_blowup(t_blowup), events_reached(count) {}
    double time_of_blowup;
    std::size_t events_reached;
};

// Bug trap: an internal invariant failed (e.g. thinning bound violated).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace hawkes
