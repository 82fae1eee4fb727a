#pragma once

#include "minproj/catalog.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace minproj::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kBudgetExceeded = 3 };

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The paper-suite command over an explicit case list.
int run_paper_suite(const std::vector<catalog::NamedCase>& cases, bool table, std::ostream& out,
                    std::ostream& err);

}  // namespace minproj::cli
