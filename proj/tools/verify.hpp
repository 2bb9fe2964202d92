#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace buckling::cli {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass;
    std::int64_t cases;
    std::int64_t failures;
    std::string detail;  // first failing case, or a summary value
};

inline const std::vector<std::string> kSuites = {"bessel", "brackets", "nodal", "oracle"};

// Runs one suite ("bessel", "brackets", "nodal", "oracle") or "all".
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace buckling::cli
