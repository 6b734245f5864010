#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adasolve/decimal.hpp"
#include "adasolve/model.hpp"

namespace adasolve {

struct DifficultyBucket {
    int steps = 0;
    bool open_ended = false;  // "steps or more"
    std::size_t n = 0;
    std::size_t correct = 0;
    Decimal accuracy_percent;
    /// Per solver index: percent of the bucket whose chosen round used it.
    std::vector<Decimal> usage_percent;
};

struct DifficultyBreakdown {
    std::vector<DifficultyBucket> buckets;  // ascending steps, empty buckets omitted
    std::size_t missing_steps = 0;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string render_table() const;
};

/// Traces are matched to problems by id. Problems with expected_steps >=
/// top_bucket share one bucket.
DifficultyBreakdown difficulty_breakdown(const std::vector<SolveTrace>& traces, const std::vector<Problem>& problems,
                                         std::size_t n_solvers, int top_bucket = 5);

struct MethodGroup {
    bool a_correct = false;
    bool b_correct = false;
    std::size_t problems = 0;
    std::size_t adaptive_correct = 0;
    std::size_t used_a = 0;
    std::size_t used_b = 0;

    [[nodiscard]] std::string name() const;
    /// Zero for an empty group.
    [[nodiscard]] Decimal adaptive_percent() const;
};

/// Groups in order A✓B✓, A✓B✗, A✗B✓, A✗B✗. The adaptive strategy is
/// expected to be [A, B]; chosen round solver 0 counts as A usage,
/// anything later as B. Throws ValidationError on id mismatch.
std::array<MethodGroup, 4> cross_method_analysis(const std::vector<SolveTrace>& traces_a,
                                                 const std::vector<SolveTrace>& traces_b,
                                                 const std::vector<SolveTrace>& traces_adaptive,
                                                 const std::vector<Problem>& problems);

nlohmann::json cross_method_json(const std::array<MethodGroup, 4>& groups);
std::string render_cross_method(const std::array<MethodGroup, 4>& groups);

}  // namespace adasolve
