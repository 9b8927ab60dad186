#pragma once

// Command-line dispatcher. Artifacts go to `out` (or --out), diagnostics and
// timings to `err`, so artifacts are byte-stable across runs.

#include <ostream>
#include <string>
#include <vector>

namespace minuscy {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minuscy
