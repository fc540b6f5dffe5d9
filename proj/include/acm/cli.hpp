#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "acm/report.hpp"

namespace acm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name).
/// Commands: validate | classify | verify | audit | list.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON array of reports, doubles with 17 significant digits.
std::string reports_to_json(const std::vector<CheckReport>& reports);
/// Aligned text table, residuals with 3 significant digits.
std::string reports_to_text(const std::vector<CheckReport>& reports);

}  // namespace acm::cli
