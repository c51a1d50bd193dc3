#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algdyn/config.hpp"

namespace algdyn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

struct AcceptanceRun {
    std::vector<CriterionResult> results;
    json payload;  // deterministic results document
    bool all_passed = false;
};

// Seed all stochastic checks run under by default; pinned so reruns are
// reproducible bit for bit.
inline constexpr std::uint64_t kAcceptanceSeed = 20260819ull;

// Runs checks 1-8 once per (thread count, repetition) pair in {1,1,4,4} and
// derives check 9 by byte-comparing the four serialized payloads. The
// reported per-check results come from the first run.
AcceptanceRun run_acceptance(std::uint64_t seed = kAcceptanceSeed);

}  // namespace algdyn
