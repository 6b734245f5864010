#include <fstream>
#include <map>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "adasolve/dataset.hpp"
#include "adasolve/extraction.hpp"
#include "test_support.hpp"

using namespace adasolve;

namespace {

CanonicalAnswer found(const ExtractionResult& r) {
    EXPECT_TRUE(std::holds_alternative<CanonicalAnswer>(r));
    return std::holds_alternative<CanonicalAnswer>(r) ? std::get<CanonicalAnswer>(r) : CanonicalAnswer::unparseable(99);
}

std::vector<Choice> choices_a_to_d() { return {{'a', "1"}, {'b', "2"}, {'c', "3"}, {'d', "4"}}; }

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    std::vector<nlohmann::json> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

}  // namespace

TEST(ExtractAnswer, NumberAfterMarker) {
    const auto a = found(extract_answer("she must now be 28 + 4 = 32 years old. The answer is 32.", AnswerKind::number));
    ASSERT_TRUE(a.is_number());
    EXPECT_EQ(a.as_number(), Decimal(32));
}

TEST(ExtractAnswer, OptionAmongChoices) {
    const auto c = choices_a_to_d();
    const auto a = found(extract_answer("Therefore, the answer is (b).", AnswerKind::option, c));
    ASSERT_TRUE(a.is_option());
    EXPECT_EQ(a.as_option(), 'b');
}

TEST(ExtractAnswer, QuotedString) {
    const auto a = found(extract_answer("Concatenating them is \"nk\". The answer is \"nk\".", AnswerKind::string));
    ASSERT_TRUE(a.is_text());
    EXPECT_EQ(a.as_text(), "nk");
}

TEST(ExtractAnswer, NoMarkerNeedsFallback) {
    EXPECT_TRUE(std::holds_alternative<NeedsFallback>(extract_answer("Let me think about this more.", AnswerKind::number)));
}

TEST(ExtractAnswer, LastMarkerWinsCaseInsensitive) {
    const auto a = found(extract_answer("The answer is 6. Then 6 * 2 = 12. THE ANSWER IS 12.", AnswerKind::number));
    EXPECT_EQ(a.as_number(), Decimal(12));
}

TEST(ExtractAnswer, MarkerWithNothingParseableIsUnparseable) {
    const auto a = found(extract_answer("The answer is unclear.", AnswerKind::number, {}, 2));
    ASSERT_TRUE(a.is_unparseable());
    EXPECT_EQ(a.ordinal(), 2u);
    const auto c = choices_a_to_d();
    EXPECT_TRUE(found(extract_answer("the answer is (e).", AnswerKind::option, c)).is_unparseable());
    EXPECT_TRUE(found(extract_answer("the answer is", AnswerKind::string)).is_unparseable());
}

TEST(ExtractAnswer, BareLetterAndUnquotedText) {
    const auto c = choices_a_to_d();
    EXPECT_EQ(found(extract_answer("So the answer is C.", AnswerKind::option, c)).as_option(), 'c');
    EXPECT_EQ(found(extract_answer("So the answer is ye.", AnswerKind::string)).as_text(), "ye");
}

TEST(ExtractAnswer, FallbackReplyExtracts) {
    const auto reply = std::string(kFallbackSuffix) + " 5.";
    EXPECT_EQ(found(extract_answer(reply, AnswerKind::number)).as_number(), Decimal(5));
}

TEST(ExtractAnswer, TotalOnArbitraryBytes) {
    std::mt19937 rng(5);
    const std::string alphabet = "answer is ()$,.-0123456789abcde\"\n \xe2\x80\x9c";
    for (int i = 0; i < 3000; ++i) {
        std::string s;
        const int len = static_cast<int>(rng() % 40);
        for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
        if (rng() % 2) s += " the answer is ";
        for (auto kind : {AnswerKind::number, AnswerKind::option, AnswerKind::string}) {
            EXPECT_NO_THROW({
                const auto first = extract_answer(s, kind);
                const auto second = extract_answer(s, kind);
                ASSERT_EQ(first.index(), second.index());
                if (first.index() == 0) EXPECT_TRUE(identical(std::get<0>(first), std::get<0>(second)));
            });
        }
    }
}

TEST(CanonicalizeNumber, SpecExamples) {
    EXPECT_EQ(canonicalize_number("$3.00"), Decimal(3));
    EXPECT_EQ(canonicalize_number("1,234"), Decimal(1234));
    EXPECT_EQ(canonicalize_number("56 years"), Decimal(56));
    EXPECT_EQ(canonicalize_number("3"), canonicalize_number("3.00"));
    EXPECT_EQ(canonicalize_number("-4.5."), Decimal::from_string("-4.5"));
    EXPECT_EQ(canonicalize_number("12,345,678.9"), Decimal::from_string("12345678.9"));
    EXPECT_FALSE(canonicalize_number("none"));
    EXPECT_FALSE(canonicalize_number(""));
}

TEST(CanonicalizeNumberProperty, Idempotent) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> mant(-99'999'999, 99'999'999);
    const char* prefixes[] = {"", "$", "about ", "-"};
    const char* suffixes[] = {"", ".", " dollars", "%", " years old"};
    for (int i = 0; i < 2000; ++i) {
        const Decimal d(Decimal::Int(mant(rng)), static_cast<unsigned>(rng() % 4));
        const std::string token = std::string(prefixes[rng() % 4]) + d.to_string() + suffixes[rng() % 5];
        const auto once = canonicalize_number(token);
        ASSERT_TRUE(once) << token;
        EXPECT_EQ(canonicalize_number(once->to_string()), once) << token;
    }
}

TEST(FallbackPrompt, Concatenation) {
    EXPECT_EQ(build_fallback_prompt("Q", "R"), "Q\nR\nTherefore, the answer is");
    EXPECT_EQ(build_fallback_prompt("Q", ""), "Q\n\nTherefore, the answer is");
}

TEST(MajorityVote, SpecExamples) {
    const auto n = [](int v) { return CanonicalAnswer::number(v); };
    auto v = majority_vote(std::vector{n(32), n(32), n(17)});
    EXPECT_EQ(v.winner.as_number(), Decimal(32));
    EXPECT_EQ(v.count, 2u);
    EXPECT_FALSE(v.tied);
    v = majority_vote(std::vector{n(32), n(17), n(17)});
    EXPECT_EQ(v.winner.as_number(), Decimal(17));
    EXPECT_EQ(v.count, 2u);
    EXPECT_FALSE(v.tied);
    v = majority_vote(std::vector{n(32), n(17), n(5)});
    EXPECT_EQ(v.winner.as_number(), Decimal(32));
    EXPECT_EQ(v.count, 1u);
    EXPECT_TRUE(v.tied);
}

TEST(MajorityVote, AllPermutationsOfThreeDistinctPickFirst) {
    std::vector<int> vals{32, 17, 5};
    std::sort(vals.begin(), vals.end());
    do {
        std::vector<CanonicalAnswer> answers;
        for (int v : vals) answers.push_back(CanonicalAnswer::number(v));
        const auto vote = majority_vote(answers);
        EXPECT_EQ(vote.winner.as_number(), Decimal(vals[0]));
        EXPECT_TRUE(vote.tied);
    } while (std::next_permutation(vals.begin(), vals.end()));
}

TEST(MajorityVote, UnparseableNeverAggregates) {
    const std::vector answers{CanonicalAnswer::unparseable(0), CanonicalAnswer::unparseable(1),
                              CanonicalAnswer::unparseable(2)};
    const auto v = majority_vote(answers);
    EXPECT_EQ(v.count, 1u);
    EXPECT_TRUE(v.winner.is_unparseable());
    EXPECT_FALSE(agrees(answers[0], answers[0]));
    const std::vector mixed{CanonicalAnswer::unparseable(0), CanonicalAnswer::number(4)};
    EXPECT_TRUE(majority_vote(mixed).winner.is_number());
}

TEST(MajorityVoteProperty, ExhaustiveAgainstBruteForce) {
    // Every sequence of length 1..5 over {x, y, z}: count is the max
    // frequency; winner is the earliest-appearing answer with that count.
    const CanonicalAnswer symbols[] = {CanonicalAnswer::text("x"), CanonicalAnswer::text("y"), CanonicalAnswer::text("z")};
    std::size_t checked = 0;
    for (int len = 1; len <= 5; ++len) {
        int total = 1;
        for (int i = 0; i < len; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<int> seq;
            for (int i = 0, c = code; i < len; ++i, c /= 3) seq.push_back(c % 3);
            int freq[3] = {0, 0, 0};
            for (int s : seq) ++freq[s];
            const int best = *std::max_element(freq, freq + 3);
            int modes = 0;
            for (int f : freq) modes += f == best ? 1 : 0;
            int expected = -1;
            for (int s : seq) {
                if (freq[s] == best) {
                    expected = s;
                    break;
                }
            }
            std::vector<CanonicalAnswer> answers;
            for (int s : seq) answers.push_back(symbols[s]);
            const auto vote = majority_vote(answers);
            EXPECT_EQ(vote.count, static_cast<std::size_t>(best));
            EXPECT_TRUE(identical(vote.winner, symbols[expected]));
            EXPECT_EQ(vote.tied, modes > 1);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 3u + 9u + 27u + 81u + 243u);
}

TEST(ExtractionCorpus, EveryCompletionYieldsItsStatedAnswer) {
    const auto corpus = read_jsonl(fixtures::data_path("extraction_corpus.jsonl"));
    ASSERT_GE(corpus.size(), 20u);
    for (const auto& rec : corpus) {
        const auto kind = parse_answer_kind(rec.at("kind").get<std::string>());
        std::vector<Choice> choices;
        for (char c : rec.value("choices", std::string())) choices.push_back({c, ""});
        const auto got = extract_answer(rec.at("text").get<std::string>(), kind, choices);
        ASSERT_TRUE(std::holds_alternative<CanonicalAnswer>(got)) << rec.at("source");
        const auto expected = canonical_gold(rec.at("expected").get<std::string>(), kind);
        EXPECT_TRUE(identical(std::get<CanonicalAnswer>(got), expected))
            << rec.at("source") << ": got " << std::get<CanonicalAnswer>(got).render();
    }
}

TEST(CountSubquestions, ExemplarCounts) {
    const auto& reg = fixtures::registry();
    const auto kody = [&](std::string_view method) {
        return reg.get(method, DatasetFamily::math).exemplars().at(0).completion;
    };
    EXPECT_EQ(count_subquestions(kody("l2m")), 4u);
    EXPECT_EQ(count_subquestions(kody("l2m_d1")), 2u);
    const auto d3 = reg.get("l2m_d3", DatasetFamily::math).exemplars();
    const auto sandy = std::find_if(d3.begin(), d3.end(), [](const Exemplar& e) {
        return e.question.find("Sandy") != std::string::npos;
    });
    ASSERT_NE(sandy, d3.end());
    EXPECT_EQ(count_subquestions(sandy->completion), 10u);
}

TEST(CountSubquestions, NoHeaderIsZero) {
    EXPECT_EQ(count_subquestions("1. First 2. Second"), 0u);
    EXPECT_EQ(count_subquestions(""), 0u);
}

TEST(CountSubquestions, SyntheticCorpusMatchesConstructedCounts) {
    const auto corpus = read_jsonl(fixtures::data_path("subquestion_corpus.jsonl"));
    ASSERT_EQ(corpus.size(), 50u);
    for (const auto& rec : corpus) {
        EXPECT_EQ(count_subquestions(rec.at("text").get<std::string>()), rec.at("expected").get<std::size_t>())
            << rec.at("text");
    }
}
