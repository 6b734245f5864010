#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "adasolve/errors.hpp"
#include "adasolve/evaluation.hpp"

using namespace adasolve;

namespace {
CanonicalAnswer n(int v) { return CanonicalAnswer::number(v); }
}  // namespace

TEST(Consistency, SpecExamples) {
    EXPECT_EQ(consistency(std::vector{n(32), n(32), n(17)}), (Ratio{2, 3}));
    EXPECT_EQ(consistency(std::vector{n(32), n(32), n(32)}), (Ratio{1, 1}));
    EXPECT_EQ(consistency(std::vector{n(7)}), (Ratio{1, 1}));
    EXPECT_EQ(consistency(std::vector{CanonicalAnswer::unparseable(0)}), (Ratio{1, 1}));
}

TEST(Consistency, AllUnparseableIsOneOverN) {
    const std::vector all{CanonicalAnswer::unparseable(0), CanonicalAnswer::unparseable(1),
                          CanonicalAnswer::unparseable(2)};
    EXPECT_EQ(consistency(all), (Ratio{1, 3}));
    EXPECT_FALSE(meets_criteria(consistency(all), 1));
}

TEST(MeetsCriteria, SpecExamples) {
    EXPECT_FALSE(meets_criteria(Ratio{2, 3}, 1));
    EXPECT_TRUE(meets_criteria(Ratio{1, 1}, 1));
    EXPECT_TRUE(meets_criteria(Ratio{2, 3}, Decimal::from_string("0.6")));
    EXPECT_TRUE(meets_criteria(Ratio{2, 3}, Decimal::from_string("0.666")));
    EXPECT_FALSE(meets_criteria(Ratio{2, 3}, Decimal::from_string("0.667")));
}

TEST(MeetsCriteria, RejectsThresholdOutsideUnitInterval) {
    EXPECT_THROW(meets_criteria(Ratio{1, 1}, 0), ValidationError);
    EXPECT_THROW(meets_criteria(Ratio{1, 1}, Decimal::from_string("1.5")), ValidationError);
}

TEST(EvaluateRound, Report) {
    const auto r = evaluate_round(std::vector{n(4), n(4), n(9)}, Decimal::from_string("0.6"));
    EXPECT_EQ(r.consistency, (Ratio{2, 3}));
    EXPECT_EQ(r.winner.as_number(), Decimal(4));
    EXPECT_TRUE(r.meets);
}

TEST(ConsistencyProperty, PermutationInvariant) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<CanonicalAnswer> answers;
        const std::size_t len = 1 + rng() % 7;
        for (std::size_t i = 0; i < len; ++i) {
            answers.push_back(rng() % 5 == 0 ? CanonicalAnswer::unparseable(i) : n(static_cast<int>(rng() % 3)));
        }
        const auto base = consistency(answers);
        std::shuffle(answers.begin(), answers.end(), rng);
        EXPECT_EQ(consistency(answers), base);
    }
}
