#pragma once
// End-to-end checks of the classification, one entry per criterion (1..12).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace stg {

struct AcceptanceOptions {
    uint64_t seed = 42;      // base seed for the Monte Carlo criterion
    long samples = 100000;   // samples per Monte Carlo triple
    int max_n = 100;         // cyclic-bound search range
    size_t order_cap = 20000;
    bool enforce_time = true;  // fail criteria that exceed their time budget
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;       // short human-readable summary
    nlohmann::json facts;     // deterministic values for manifests
    double seconds = 0;
    double budget = 0;        // 0 = none
};

// Runs the criteria in order; on_result is called as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace stg
