#pragma once

#include <string>
#include <vector>

namespace prion {

enum class VerifyLevel { quick, full };

/// One named check: a measured value against its bound. `logged_only`
/// marks diagnostics that are recorded but carry no pass/fail weight.
struct VerifyCheck {
    std::string name;
    bool pass = false;
    bool logged_only = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string note;
    double seconds = 0.0;
};

struct VerificationReport {
    VerifyLevel level = VerifyLevel::quick;
    std::vector<VerifyCheck> checks;
    bool overall_pass = false;
    double seconds = 0.0;
};

/// Runs the whole verification battery at the given level. quick uses
/// coarser refinement pairs and fewer random repetitions; the stated
/// tolerances are identical at both levels. Never throws: any escaped
/// exception becomes a failed check.
VerificationReport verify_suite(VerifyLevel level) noexcept;

/// One `[PASS]/[FAIL]` line per check.
std::string report_lines(const VerificationReport& report);

/// JSON form with stable key order.
std::string report_json(const VerificationReport& report);

} // namespace prion
