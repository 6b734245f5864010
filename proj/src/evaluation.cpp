#include "adasolve/evaluation.hpp"

#include <stdexcept>

#include "adasolve/errors.hpp"

#include "adasolve/extraction.hpp"

namespace adasolve {

Ratio consistency(std::span<const CanonicalAnswer> answers) {
    const auto vote = majority_vote(answers);
    return Ratio{static_cast<std::int64_t>(vote.count), static_cast<std::int64_t>(answers.size())};
}

bool meets_criteria(const Ratio& value, const Decimal& threshold) {
    if (threshold <= Decimal(0) || threshold > Decimal(1)) {
        throw ValidationError("threshold must lie in (0, 1], got " + threshold.to_string());
    }
    return compare(value, threshold) >= 0;
}

ConsistencyReport evaluate_round(std::span<const CanonicalAnswer> answers, const Decimal& threshold) {
    const auto vote = majority_vote(answers);
    const Ratio ratio{static_cast<std::int64_t>(vote.count), static_cast<std::int64_t>(answers.size())};
    return ConsistencyReport{ratio, vote.winner, meets_criteria(ratio, threshold)};
}

}  // namespace adasolve
