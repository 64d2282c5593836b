#pragma once

#include <string>
#include <vector>

namespace ranklab::selftest {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Names of every registered desk-scale identity/oracle check.
std::vector<std::string> check_names();

// Runs one named check; Error if the name is unknown.
CheckResult run_check(const std::string& name);

// Runs every check whose name contains `filter` (all when empty).
std::vector<CheckResult> run_all(const std::string& filter = "");

// Consistency audit of a codebook file; fails on duplicate codewords or
// distribution inconsistencies.
CheckResult check_code_file(const std::string& path, bool is_cdc);

}  // namespace ranklab::selftest
