#pragma once

// Structural and numerical checks over every module for one n. Used by the
// `verify` command; each check reports how many cases it examined.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bordism {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::size_t cases = 0;
    std::string detail;
};

struct VerifyOptions {
    std::size_t random_polynomials = 1000;
    std::size_t max_monomials = 8;
    std::uint64_t seed = 20240611;
};

/// Every check for this n. n <= 4 runs exhaustively; n = 5 runs the counting
/// and homology checks only (kernel bases and pages are out of budget there).
std::vector<CheckResult> run_invariants(int n, const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace bordism
