#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "adasolve/dataset.hpp"
#include "adasolve/extraction.hpp"
#include "adasolve/prompts.hpp"
#include "test_support.hpp"

using namespace adasolve;
namespace fs = std::filesystem;

namespace {

const PromptRegistry& reg() { return fixtures::registry(); }

std::string content(const MessageSequence& m) {
    EXPECT_EQ(m.size(), 1u);
    EXPECT_EQ(m.at(0).role, "user");
    return m.at(0).content;
}

AnswerKind kind_for(DatasetFamily f) {
    switch (f) {
        case DatasetFamily::math: return AnswerKind::number;
        case DatasetFamily::symbolic: return AnswerKind::string;
        default: return AnswerKind::option;
    }
}

fs::path copy_prompts() {
    const auto dir = fs::temp_directory_path() / ("adasolve_prompts_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                  "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::copy(ADASOLVE_DEFAULT_PROMPT_DIR, dir, fs::copy_options::recursive);
    return dir;
}

}  // namespace

TEST(RenderPrompt, ZeroShotMath) {
    EXPECT_EQ(content(reg().render_prompt(MethodId::zerocot, DatasetFamily::math, "How many?")),
              "Q: How many?\nA: Let's think step by step.");
}

TEST(RenderPrompt, DecompositionEndsWithHeader) {
    const auto text = content(reg().render_prompt(MethodId::l2m_d3, DatasetFamily::math, "How many?"));
    EXPECT_TRUE(text.ends_with("Q: How many?\nA: Let’s break down this problem:"));
    EXPECT_EQ(reg().get("l2m_d3", DatasetFamily::math).exemplars().size(), 4u);
}

TEST(RenderPrompt, InjectiveInQuestion) {
    std::set<std::string> seen;
    for (int i = 0; i < 50; ++i) {
        seen.insert(content(reg().render_prompt(MethodId::cot, DatasetFamily::math, "Q" + std::to_string(i))));
    }
    EXPECT_EQ(seen.size(), 50u);
}

TEST(RenderPrompt, ChoicesFollowDatasetLayout) {
    const std::vector<Choice> c{{'a', "1"}, {'b', "2"}};
    EXPECT_TRUE(content(reg().render_prompt(MethodId::cot, DatasetFamily::math_choices, "Pick?", c))
                    .ends_with("Q: Pick?\nAnswer Choices: (a) 1 (b) 2\nA:"));
    EXPECT_TRUE(content(reg().render_prompt(MethodId::cot, DatasetFamily::commonsense, "Where?", c))
                    .ends_with("Q: Where? Answer Choices: (a) 1 (b) 2\nA:"));
}

TEST(RenderPrompt, ChoicesRequiredExactlyForChoiceFamilies) {
    const std::vector<Choice> c{{'a', "1"}};
    EXPECT_THROW(reg().render_prompt(MethodId::cot, DatasetFamily::math, "Q", c), ValidationError);
    EXPECT_THROW(reg().render_prompt(MethodId::cot, DatasetFamily::commonsense, "Q"), ValidationError);
}

TEST(RenderPrompt, UnknownPairListsAvailable) {
    try {
        (void)reg().render_prompt(MethodId::l2m, DatasetFamily::symbolic, "Q");
        FAIL() << "expected RegistryError";
    } catch (const RegistryError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("l2m/symbolic"), std::string::npos) << what;
        EXPECT_NE(what.find("cot/math"), std::string::npos) << what;
    }
}

TEST(RenderPhpPrompt, HintFormats) {
    const auto one = content(reg().render_php_prompt("How old?", std::vector{CanonicalAnswer::number(32)},
                                                     DatasetFamily::math));
    EXPECT_TRUE(one.ends_with("Q: How old? (Hint: The answer is near to 32).\nA:")) << one;
    const auto two = content(reg().render_php_prompt(
        "How much?", std::vector{CanonicalAnswer::number(2), CanonicalAnswer::number(5)}, DatasetFamily::math));
    EXPECT_TRUE(two.ends_with("Q: How much? (Hint: The answer is near to 2, 5).\nA:")) << two;
    // Same layout as the exemplars shipped in the PHP block.
    EXPECT_NE(two.find("How much did she spend on 2 bags of candy? (Hint: The answer is near to 2, 5)."),
              std::string::npos);
}

TEST(RenderPhpPrompt, NoHintsIsPlainCot) {
    EXPECT_EQ(reg().render_php_prompt("How old?", {}, DatasetFamily::math),
              reg().render_prompt(MethodId::cot, DatasetFamily::math, "How old?"));
}

TEST(RenderPhpPrompt, HintBeforeChoices) {
    const std::vector<Choice> c{{'a', "1"}, {'b', "2"}};
    const auto text = content(reg().render_php_prompt("Pick?", std::vector{CanonicalAnswer::option('b')},
                                                      DatasetFamily::math_choices, c));
    EXPECT_TRUE(text.ends_with("Q: Pick? (Hint: The answer is near to (b)).\nAnswer Choices: (a) 1 (b) 2\nA:")) << text;
}

TEST(Registry, ExemplarsExtractToTheirStatedAnswers) {
    std::size_t checked = 0;
    for (const auto* t : reg().templates()) {
        const auto exemplars = t->exemplars();
        ASSERT_EQ(exemplars.size(), t->exemplar_answers.size()) << t->method;
        for (std::size_t i = 0; i < exemplars.size(); ++i) {
            const auto kind = kind_for(t->family);
            const auto got = extract_answer(exemplars[i].completion, kind);
            ASSERT_TRUE(std::holds_alternative<CanonicalAnswer>(got)) << t->method << " #" << i;
            EXPECT_TRUE(identical(std::get<CanonicalAnswer>(got), canonical_gold(t->exemplar_answers[i], kind)))
                << t->method << "/" << to_string(t->family) << " #" << i;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 56u);
}

TEST(Registry, ExemplarsTeachTheExpectedMarker) {
    for (const auto* t : reg().templates()) {
        for (const auto& e : t->exemplars()) {
            EXPECT_NE(e.completion.find(t->expected_marker.substr(0, t->expected_marker.find(" (x)"))), std::string::npos)
                << t->method << "/" << to_string(t->family);
        }
    }
}

TEST(Registry, GranularityVariantsShareInstructionLine) {
    for (auto family : {DatasetFamily::math, DatasetFamily::math_choices}) {
        const auto& d1 = reg().get("l2m_d1", family);
        const auto& d2 = reg().get("l2m_d2", family);
        const auto& d3 = reg().get("l2m_d3", family);
        EXPECT_EQ(d1.instruction_line(), d2.instruction_line());
        EXPECT_EQ(d2.instruction_line(), d3.instruction_line());
        EXPECT_EQ(d1.instruction_line(), "A: Let’s break down this problem:");
        EXPECT_NE(d1.body, d2.body);
        EXPECT_NE(d2.body, d3.body);
        // Only the exemplar blocks differ; the trailing question block is shared.
        const auto tail = [](const std::string& body) { return body.substr(body.rfind("\n\nQ: {question}")); };
        EXPECT_EQ(tail(d1.body), tail(d3.body));
    }
}

TEST(Registry, TemplateBytesMatchSnapshot) {
    std::ifstream in(fixtures::data_path("prompt_snapshot.txt"));
    std::size_t lines = 0;
    for (std::string file, digest; in >> file >> digest; ++lines) {
        std::ifstream f(fs::path(ADASOLVE_DEFAULT_PROMPT_DIR) / file, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        EXPECT_EQ(sha256_hex(ss.str()), digest) << file;
    }
    EXPECT_EQ(lines, reg().templates().size());
}

TEST(Registry, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Registry, TamperedTemplateFailsChecksum) {
    const auto dir = copy_prompts();
    std::ofstream(dir / "cot" / "math.txt", std::ios::app) << "tampered";
    EXPECT_THROW(PromptRegistry::load(dir), RegistryError);
    fs::remove_all(dir);
}

TEST(Registry, MissingPlaceholderRejected) {
    const auto dir = copy_prompts();
    const std::string body = "Q: no placeholder\nA:\n";
    std::ofstream(dir / "zerocot" / "math.txt", std::ios::trunc) << body;
    std::ifstream mf(dir / "manifest.json");
    auto manifest = nlohmann::json::parse(mf);
    for (auto& t : manifest["templates"]) {
        if (t["file"] == "zerocot/math.txt") t["sha256"] = sha256_hex(body);
    }
    std::ofstream(dir / "manifest.json", std::ios::trunc) << manifest.dump();
    EXPECT_THROW(PromptRegistry::load(dir), RegistryError);
    fs::remove_all(dir);
}

TEST(Registry, PlanAndSolveBindsByFamily) {
    for (auto family : {DatasetFamily::math, DatasetFamily::math_choices, DatasetFamily::commonsense,
                        DatasetFamily::symbolic}) {
        EXPECT_TRUE(reg().contains("ps", family)) << to_string(family);
        EXPECT_TRUE(reg().contains("zerocot", family));
        EXPECT_TRUE(reg().contains("cot", family));
    }
    EXPECT_NE(reg().get("ps", DatasetFamily::commonsense).body, reg().get("ps", DatasetFamily::symbolic).body);
}
