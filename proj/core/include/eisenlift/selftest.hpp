#pragma once

#include <string>
#include <vector>

namespace eisenlift {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;  // one line; failure diagnostics or a short summary
};

/// Runs the module invariant suite (fixed deterministic seeds). Checks are
/// independent; with parallel = true they fan out across threads, but the
/// result order is fixed either way.
std::vector<CheckResult> run_selftest(bool parallel);

}  // namespace eisenlift
