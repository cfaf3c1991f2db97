#pragma once

// The thirteen acceptance criteria, each reduced to one pass/fail line.

#include <string>
#include <vector>

namespace potts::acceptance {

struct Options {
    /// Directory holding requests.txt and the expected <name>.json outputs.
    std::string golden_dir;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance(const Options& opts);
/// "[PASS] 3 title: detail"
std::string format_line(const CriterionResult& r);

/// One golden request: name, expected exit code, argument vector.
struct GoldenRequest {
    std::string name;
    int exit_code = 0;
    std::vector<std::string> args;
};

/// Lines "name exit arg arg ..."; blank lines and lines starting with '#' are skipped.
std::vector<GoldenRequest> read_requests(const std::string& path);

}  // namespace potts::acceptance
