#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace schroder_lab {

// One line of a verification report. `expected` and `computed` are numbers
// or exact "p/q" strings; `tolerance` is 0 for exact comparisons.
struct CheckResult {
    std::string check;
    nlohmann::json expected;
    nlohmann::json computed;
    double tolerance = 0;
    bool pass = false;
};

class VerificationReport {
public:
    void add(CheckResult c) { checks_.push_back(std::move(c)); }
    void add(std::string check, nlohmann::json expected, nlohmann::json computed, double tolerance, bool pass);
    // Numeric check: pass iff |computed - expected| <= tolerance.
    void add_close(std::string check, double expected, double computed, double tolerance);
    void append(const VerificationReport& other);

    const std::vector<CheckResult>& checks() const { return checks_; }
    std::size_t total() const { return checks_.size(); }
    std::size_t passed() const;
    bool all_passed() const { return passed() == total(); }

    nlohmann::json to_json() const;

private:
    std::vector<CheckResult> checks_;
};

// 17 significant digits, as used in every CSV and JSON output.
std::string format_real(double x);

}  // namespace schroder_lab
