#include "ragbench/error.hpp"
#include "ragbench/generation/answer_parser.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ragbench;
using namespace ragbench::generation;

namespace {

const std::vector<std::string> kAbcd{"A", "B", "C", "D"};

} // namespace

TEST(ParseAnswer, StrictJson) {
    const auto a = parse_answer(R"j({"step_by_step_thinking":"...","answer_choice":"B"})j", kAbcd);
    EXPECT_EQ(a.choice, "B");
    EXPECT_EQ(a.rationale, "...");
    EXPECT_EQ(a.path, ParsePath::strict_json);
}

TEST(ParseAnswer, JsonInText) {
    const auto a = parse_answer(R"j(Sure! {"answer_choice": "C"} hope that helps)j", kAbcd);
    EXPECT_EQ(a.choice, "C");
    EXPECT_EQ(a.path, ParsePath::json_in_text);
}

TEST(ParseAnswer, Failed) {
    const std::vector<std::string> ab{"A", "B"};
    const auto a = parse_answer("the answer is unclear", ab);
    EXPECT_FALSE(a.choice);
    EXPECT_EQ(a.path, ParsePath::failed);
}

TEST(ParseAnswer, LetterDecorations) {
    EXPECT_EQ(parse_answer(R"j({"answer_choice": "(D)"})j", kAbcd).choice, "D");
    EXPECT_EQ(parse_answer(R"j({"answer_choice": "A. Inhaled corticosteroid"})j", kAbcd).choice, "A");
    EXPECT_FALSE(parse_answer(R"j({"answer_choice": "Beta blocker"})j", kAbcd).choice);
}

TEST(ParseAnswer, SkipsObjectsWithoutAnswer) {
    const auto a = parse_answer(R"j(notes {"x": 1} then {"answer_choice": "D", "step_by_step_thinking": "t"})j", kAbcd);
    EXPECT_EQ(a.choice, "D");
    EXPECT_EQ(a.path, ParsePath::json_in_text);
    EXPECT_EQ(a.rationale, "t");
}

TEST(ParseAnswer, BracesInsideStrings) {
    const auto a = parse_answer(R"j(x {"step_by_step_thinking": "a } b {", "answer_choice": "B"} y)j", kAbcd);
    EXPECT_EQ(a.choice, "B");
    EXPECT_EQ(a.path, ParsePath::json_in_text);
}

TEST(ParseAnswer, RegexFallbacks) {
    const auto broken = parse_answer(R"j({"step_by_step_thinking": "unterminated, "answer_choice": "C")j", kAbcd);
    EXPECT_EQ(broken.choice, "C");
    EXPECT_EQ(broken.path, ParsePath::letter_regex);
    const auto plain = parse_answer("Reasoning...\nAnswer: (B)j", kAbcd);
    EXPECT_EQ(plain.choice, "B");
    EXPECT_EQ(plain.path, ParsePath::letter_regex);
}

TEST(ParseAnswer, InvalidLettersRejected) {
    EXPECT_FALSE(parse_answer(R"j({"answer_choice": "E"})j", kAbcd).choice);
    EXPECT_FALSE(parse_answer("Answer: E", kAbcd).choice);
    EXPECT_FALSE(parse_answer(R"j({"answer_choice": ""})j", kAbcd).choice);
}

TEST(ParseAnswer, PathNames) {
    for (auto p : {ParsePath::strict_json, ParsePath::json_in_text, ParsePath::letter_regex, ParsePath::failed}) {
        EXPECT_EQ(parse_path_from_name(parse_path_name(p)), p);
    }
    EXPECT_THROW(parse_path_from_name("guess"), UserError);
}

// Totality: arbitrary input never throws, and any choice is a valid letter.
TEST(ParseAnswerProperty, TotalOverRandomInput) {
    std::mt19937_64 rng(11);
    const std::string alphabet = R"j({}[]":, \ABCDEFXaz\n)j" "answer_choice" "Answer:";
    std::uniform_int_distribution<std::size_t> len(0, 300), pick(0, alphabet.size() - 1), byte(0, 255);
    for (int trial = 0; trial < 3000; ++trial) {
        std::string s;
        for (std::size_t i = 0, n = len(rng); i < n; ++i) {
            s += trial % 3 == 0 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
        }
        const auto a = parse_answer(s, kAbcd);
        if (a.choice) {
            ASSERT_NE(std::find(kAbcd.begin(), kAbcd.end(), *a.choice), kAbcd.end()) << s;
            ASSERT_NE(a.path, ParsePath::failed);
        } else {
            ASSERT_EQ(a.path, ParsePath::failed);
        }
    }
}
