#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crl/moments.hpp"

namespace crl {

inline constexpr const char* kReportVersion = "coset-resonance-lab v1";

enum class ReportFormat { csv, json };

ReportFormat format_from_string(const std::string& name);

// Scan rows.  Column order is fixed and versioned; floating-point fields are
// emitted with 17 significant digits so a double round-trips losslessly.
// Records carry Re M2 (the quantity the lower bound uses); parsing therefore
// restores m2 with zero imaginary part.
std::string emit_reports(const std::vector<MomentReport>& rows, ReportFormat format);
std::vector<MomentReport> parse_reports(std::string_view text, ReportFormat format);

struct BoundsRow {
    std::uint64_t q = 0;
    std::uint64_t index = 1;
    BoundProfile profile = BoundProfile::trivial_coset;
    double predicted = 0.0;
    std::optional<double> measured; // absent when no scan data covers the cell
};

std::string emit_bounds(const std::vector<BoundsRow>& rows, ReportFormat format);

const char* to_string(BoundProfile profile);

} // namespace crl
