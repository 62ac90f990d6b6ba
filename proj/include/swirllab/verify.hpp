#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace swirl {

struct CheckResult {
    std::string check;
    std::string field;
    double worst_error = 0;
    double tolerance = 0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    bool mutate = false; // flips one Christoffel sign
    int points = 20;     // chart points per frame
};

struct VerificationReport {
    std::vector<CheckResult> rows;
    bool all_pass() const;
};

struct CheckSpec {
    std::string check;
    std::string field;
    double tolerance;
};

// The (check, field) matrix in report order.
std::vector<CheckSpec> verification_matrix();

VerificationReport run_verification_suite(const VerifyOptions& opt = {});

void write_report_text(std::ostream& os, const VerificationReport& r);
void write_report_csv(std::ostream& os, const VerificationReport& r);

} // namespace swirl
