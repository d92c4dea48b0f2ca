#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "crl/report.hpp"

namespace crl {

/// Resolved command-line / config-file options.  Zero-ish sentinels mean
/// "not set": parameter defaults then come from the ExperimentParams rules.
struct RunConfig {
    std::string command;         // verify | scan | resonate | lemma5 | bounds
    std::uint64_t q = 0;         // single modulus
    std::uint64_t q_min = 0;     // or an inclusive prime range
    std::uint64_t q_max = 0;
    std::uint64_t index = 0;     // subgroup index K; 0 = all divisors of q-1
    std::uint64_t max_index = 0; // cap for divisor enumeration; 0 = uncapped
    std::int64_t coset = -1;     // coset representative c; -1 = all
    std::uint64_t n_support = 0; // resonator support override
    double x_balance = 0.0;      // AFE balance override
    double delta = -1.0;         // congruence window override
    std::string format = "csv";
    std::string out;             // output path; empty = stdout
    std::string scan_data;       // bounds: scan file supplying measured values
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t budget = 1'000'000;
};

// Overlay values from a JSON config file (same field names as the flags).
void apply_config_json(RunConfig& cfg, const std::string& json_text);

// Dispatch a command.  Returns the process exit status for "completed"
// outcomes (0 = pass, 1 = verification failures); invalid input and budget
// refusals surface as exceptions for the caller to map.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace crl
