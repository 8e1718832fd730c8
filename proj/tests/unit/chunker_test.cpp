#include "ragbench/corpus/chunker.hpp"
#include "ragbench/utf8.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ragbench::corpus;
namespace utf8 = ragbench::utf8;

TEST(ChunkRecursive, ShortTextIsOneChunk) {
    EXPECT_EQ(chunk_recursive("short paragraph", 1000), (std::vector<std::string>{"short paragraph"}));
}

TEST(ChunkRecursive, EmptyInputGivesNoChunks) {
    EXPECT_TRUE(chunk_recursive("", 10).empty());
    const auto split = split_recursive("", 10);
    EXPECT_EQ(split.reassemble(), "");
}

TEST(ChunkRecursive, SplitsOnBlankLineFirst) {
    EXPECT_EQ(chunk_recursive("aaaa\n\nbbbb", 6), (std::vector<std::string>{"aaaa", "bbbb"}));
}

TEST(ChunkRecursive, HardCutArithmetic) {
    const auto chunks = chunk_recursive(std::string(2500, 'x'), 1000);
    ASSERT_EQ(chunks.size(), 3u);
    EXPECT_EQ(chunks[0].size(), 1000u);
    EXPECT_EQ(chunks[1].size(), 1000u);
    EXPECT_EQ(chunks[2].size(), 500u);
}

TEST(ChunkRecursive, PrefersNewlineOverSentence) {
    const auto chunks = chunk_recursive("One. Two.\nThree. Four.", 12);
    EXPECT_EQ(chunks, (std::vector<std::string>{"One. Two.", "Three. Four."}));
}

TEST(ChunkRecursive, FallsBackToSentenceThenWhitespace) {
    EXPECT_EQ(chunk_recursive("Alpha beta. Gamma delta.", 12), (std::vector<std::string>{"Alpha beta.", "Gamma delta."}));
    EXPECT_EQ(chunk_recursive("alpha beta gamma", 11), (std::vector<std::string>{"alpha beta", "gamma"}));
}

TEST(ChunkRecursive, MergesSmallPiecesGreedily) {
    EXPECT_EQ(chunk_recursive("a\n\nb\n\nc\n\nd", 4), (std::vector<std::string>{"a\n\nb", "c\n\nd"}));
}

TEST(ChunkRecursive, CountsCharactersNotBytes) {
    // 6 characters, 12 bytes
    const std::string s = "\xc3\xa9\xc3\xa9\xc3\xa9\xc3\xa9\xc3\xa9\xc3\xa9";
    const auto chunks = chunk_recursive(s, 3);
    ASSERT_EQ(chunks.size(), 2u);
    EXPECT_EQ(utf8::length(chunks[0]), 3u);
    EXPECT_EQ(chunks[0] + chunks[1], s);
}

TEST(ChunkRecursive, ZeroLimitIsRejected) { EXPECT_THROW(chunk_recursive("x", 0), std::invalid_argument); }

// Reassembly and bound over random texts built from every separator class.
TEST(ChunkRecursiveProperty, ReassemblesAndRespectsBound) {
    std::mt19937_64 rng(11);
    const std::vector<std::string> parts = {"word", "x", "longerword", " ", "  ", "\n", "\n\n", ". ", "! ", "? ",
                                            "\xc3\xa9", "\xe2\x80\x94", "\t", "end."};
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1), len(0, 120), lim(1, 40);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        for (std::size_t i = 0, n = len(rng); i < n; ++i) text += parts[pick(rng)];
        const std::size_t m = lim(rng);
        const auto split = split_recursive(text, m);
        ASSERT_EQ(split.gaps.size(), split.chunks.size() + 1);
        ASSERT_EQ(split.reassemble(), text) << "limit " << m;
        for (const auto& c : split.chunks) {
            ASSERT_FALSE(c.empty());
            ASSERT_LE(utf8::length(c), m);
            ASSERT_NE(c.find_first_not_of(" \t\n\r"), std::string::npos);
        }
        for (const auto& g : split.gaps) ASSERT_EQ(g.find_first_not_of(" \t\n\r"), std::string::npos);
    }
}

TEST(ChunkHierarchical, SplicesHeadingPath) {
    Document doc{"d1", "statpearls", "Asthma", SectionTree{{"Treatment", {"Use inhaled steroids."}, {}}}};
    const auto snippets = chunk_hierarchical(doc);
    ASSERT_EQ(snippets.size(), 1u);
    EXPECT_EQ(snippets[0].title, "Asthma -- Treatment");
    EXPECT_EQ(snippets[0].id, "statpearls:d1:0");
    EXPECT_EQ(snippets[0].content, "Use inhaled steroids.");
}

TEST(ChunkHierarchical, NestedSectionsInOrder) {
    Section b{"B", {"pb"}, {}};
    Section a{"A", {"pa"}, {b}};
    Document doc{"d", "s", "T", SectionTree{a}};
    const auto snippets = chunk_hierarchical(doc);
    ASSERT_EQ(snippets.size(), 2u);
    EXPECT_EQ(snippets[0].title, "T -- A");
    EXPECT_EQ(snippets[1].title, "T -- A -- B");
    EXPECT_EQ(snippets[1].id, "s:d:1");
}

TEST(ChunkHierarchical, EmptySectionsContributeNothing) {
    Document doc{"d", "s", "T", SectionTree{{"Empty", {}, {}}}};
    EXPECT_TRUE(chunk_hierarchical(doc).empty());
    Document flat{"d", "s", "T", std::string("text")};
    EXPECT_TRUE(chunk_hierarchical(flat).empty());
}
