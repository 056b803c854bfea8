#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gra::check {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    std::string first_failure;
};

// Randomized invariant checks over `count` generated inputs per suite.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t count);

}  // namespace gra::check
