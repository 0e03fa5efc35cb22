#pragma once

#include "submax/set_function.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace submax {

/// Outcome of one randomized property suite.
struct PropertyReport {
    std::string name;
    std::string summary;
    int trials = 0;
    int passed = 0;
    std::vector<std::string> failures; // first few, human readable

    bool ok() const noexcept { return passed == trials; }
};

/// p1 .. p8, in order.
const std::vector<std::string>& property_names();

/// One-line description of a suite.
std::string_view property_summary(std::string_view name);

/// Runs `trials` seeded trials on ground sets of size n (2 <= n <= 12).
/// Throws DomainError for an unknown name or a bad size.
PropertyReport run_property(std::string_view name, int n, int trials, std::uint64_t seed);

/// Random submodular test function: cut, coverage and entropy in turn by
/// `which` modulo 3.
SetFunction random_submodular(int which, int n, std::uint64_t seed);

} // namespace submax
