#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "axistat/classifier.hpp"

namespace axistat::cli {

enum ExitCode : int { kOk = 0, kError = 1, kInconclusive = 2 };

/// Entry point shared by the executable and the tests. argv[0] is the program
/// name. Diagnostics go to `err`, data written to stdout goes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

nlohmann::json report_json(const BehaviorReport& report);

/// alpha_k = from + k step for every k with alpha_k <= to (within rounding),
/// with alpha = 0 dropped.
std::vector<double> sweep_alphas(double from, double to, double step);

}  // namespace axistat::cli
