#pragma once

#include <stdexcept>
#include <string>

namespace crl {

// Modulus is not an odd prime >= 3.
struct modulus_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument is required to be a unit mod q.
struct unit_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameters are mutually inconsistent (resonator support >= q, index not a
// divisor of q-1, oversized brute-force problem, ...).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested computation exceeds the configured work budget.  The message
// carries the estimate of the required work.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace crl
