#pragma once

#include "schroder_lab/parallel.hpp"
#include "schroder_lab/report.hpp"

#include <string>
#include <vector>

namespace schroder_lab {

// Check groups, in run order.
const std::vector<std::string>& verification_groups();

// Runs the named group; check names are prefixed "<group>: ". Throws
// std::invalid_argument for an unknown group.
VerificationReport run_verification_group(const std::string& group, Exec exec = Exec::Parallel);

// Runs every group, or only those listed in `only`.
VerificationReport run_verification(const std::vector<std::string>& only = {}, Exec exec = Exec::Parallel);

}  // namespace schroder_lab
