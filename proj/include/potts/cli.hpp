#pragma once

// Command-line front end. run() is the whole program minus process I/O, so
// tests and the golden battery call it in-process.

#include <cstdint>
#include <string>
#include <vector>

namespace potts::cli {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed;

struct Result {
    /// 0 success, 1 domain error, 2 malformed input.
    int exit_code = 0;
    std::string out;
};

/// args excludes the program name.
Result run(const std::vector<std::string>& args);

}  // namespace potts::cli
