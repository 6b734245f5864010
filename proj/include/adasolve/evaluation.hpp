#pragma once

#include <span>

#include "adasolve/answer.hpp"
#include "adasolve/decimal.hpp"

namespace adasolve {

struct ConsistencyReport {
    Ratio consistency;
    CanonicalAnswer winner;
    bool meets;
};

/// Share of samples agreeing with the majority answer, as an exact ratio.
Ratio consistency(std::span<const CanonicalAnswer> answers);

/// consistency >= threshold, compared exactly. Threshold must be in (0, 1].
bool meets_criteria(const Ratio& consistency, const Decimal& threshold);

ConsistencyReport evaluate_round(std::span<const CanonicalAnswer> answers, const Decimal& threshold);

}  // namespace adasolve
