#include "schroder_lab/report.hpp"

#include <cmath>
#include <cstdio>

namespace schroder_lab {

void VerificationReport::add(std::string check, nlohmann::json expected, nlohmann::json computed, double tolerance,
                             bool pass)
{
    checks_.push_back(CheckResult{std::move(check), std::move(expected), std::move(computed), tolerance, pass});
}

void VerificationReport::add_close(std::string check, double expected, double computed, double tolerance)
{
    const bool pass = std::isfinite(computed) && std::fabs(computed - expected) <= tolerance;
    add(std::move(check), expected, computed, tolerance, pass);
}

void VerificationReport::append(const VerificationReport& other)
{
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

std::size_t VerificationReport::passed() const
{
    std::size_t n = 0;
    for (const auto& c : checks_) {
        n += c.pass ? 1 : 0;
    }
    return n;
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks_) {
        list.push_back({{"check", c.check},
                        {"expected", c.expected},
                        {"computed", c.computed},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    return {{"checks", list}, {"summary", {{"total", total()}, {"passed", passed()}}}};
}

std::string format_real(double x)
{
    if (x == 0) {
        x = 0;  // no "-0"
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace schroder_lab
