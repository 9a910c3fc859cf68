#pragma once

#include <stdexcept>

namespace nullstate {

// Invalid parameter values (series pole, index out of range, bad coefficients).
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the supported domain.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An iteration or ladder failed to stabilize; message carries diagnostics.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An interval could not be assigned a fusion channel.
struct classification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-difference step too large for the configuration.
struct step_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace nullstate
