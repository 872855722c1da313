#pragma once

#include <string>
#include <vector>

namespace smpcert {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in reference examples: published matrices, tables,
/// thresholds, certificates and command lines.
std::vector<SelftestResult> run_selftest();

}  // namespace smpcert
