#pragma once

#include <string>
#include <vector>

namespace sturmspec::verify {

struct Params {
    double V = 1.0;       // dry-tmp coupling
    int k = 10;           // dry-tmp level
    long long L = 5;      // dry-tmp label range
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const Params& p = {});
std::vector<SuiteResult> run_all(const Params& p = {});

} // namespace sturmspec::verify
