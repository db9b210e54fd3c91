#include "chaintree/format.hpp"
#include "chaintree/oracle.hpp"
#include "chaintree/prufer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace chaintree {
namespace {

const char* kWorkedDiagram =
    R"({"profile":[3,3,3,3,3,3],"parents":[{"elem":"a","attach":"e2"},{"elem":"b","attach":"a1"},)"
    R"({"elem":"c","attach":"b2"},{"elem":"d","attach":"0"},{"elem":"e","attach":"0"},{"elem":"f","attach":"b1"}]})";

TEST(Encode, WorkedExample) {
  EXPECT_EQ(render_sequence(encode(parse_diagram(kWorkedDiagram))), "b2,0,b1,a1,e2");
}

TEST(Decode, WorkedExample) {
  const auto d = decode(parse_sequence("b2,0,b1,a1,e2", ChainProfile::regular(3, 6)));
  EXPECT_EQ(render_diagram(d), kWorkedDiagram);
}

TEST(Encode, SingleElement) {
  const RootedDiagram d{ChainProfile({4}), {AttachPoint::root()}};
  EXPECT_TRUE(encode(d).tokens.empty());
}

TEST(Encode, TwoElements) {
  const RootedDiagram d{ChainProfile::regular(2, 2), {AttachPoint::root(), AttachPoint::slot(1, 1)}};
  EXPECT_EQ(render_sequence(encode(d)), "a1");
}

TEST(Encode, RejectsInvalid) {
  const RootedDiagram d{ChainProfile::regular(3, 2), {AttachPoint::slot(2, 1), AttachPoint::slot(1, 1)}};
  EXPECT_THROW(encode(d), InvariantError);
}

TEST(Decode, Empty) {
  const auto d = decode(parse_sequence("", ChainProfile({3})));
  ASSERT_EQ(d.parents.size(), 1u);
  EXPECT_TRUE(d.parents[0].is_root());
}

TEST(Decode, RootOnly) {
  for (int q = 1; q <= 4; ++q) {
    const auto d = decode(parse_sequence("0", ChainProfile::regular(q, 2)));
    EXPECT_TRUE(d.parent(1).is_root());
    EXPECT_TRUE(d.parent(2).is_root());
  }
}

TEST(Decode, RejectsBadTokens) {
  const auto p = ChainProfile::regular(3, 3);
  EXPECT_THROW(decode(PruferSequence{p, {AttachPoint::slot(4, 1), AttachPoint::root()}}), ParseError);
  EXPECT_THROW(decode(PruferSequence{p, {AttachPoint::slot(1, 3), AttachPoint::root()}}), ParseError);
  EXPECT_THROW(decode(PruferSequence{p, {AttachPoint::root()}}), ParseError);
}

std::vector<std::string> words(const ChainProfile& p) {
  std::vector<std::string> out;
  for (const auto& s : enumerate_sequences(p)) out.push_back(render_sequence(s));
  return out;
}

TEST(EnumerateSequences, Examples) {
  EXPECT_EQ(words(ChainProfile::regular(2, 2)), (std::vector<std::string>{"0", "a1", "b1"}));
  EXPECT_EQ(words(ChainProfile::regular(3, 1)), (std::vector<std::string>{""}));
  EXPECT_EQ(words(ChainProfile::regular(3, 3)).size(), 49u);
  EXPECT_EQ(enumerate_sequences(ChainProfile::regular(3, 3)).size(), 49u);
}

TEST(EnumerateSequences, Budget) {
  EXPECT_THROW(enumerate_sequences(ChainProfile::regular(3, 3), 48), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_sequences(ChainProfile::regular(3, 3), 49));
  EXPECT_THROW(enumerate_sequences(ChainProfile::regular(50, 40)), BudgetExceeded);
}

TEST(EnumerateSequences, Lexicographic) {
  std::vector<std::vector<AttachPoint>> seen;
  for (const auto& s : enumerate_sequences(ChainProfile({1, 2, 3}))) seen.push_back(s.tokens);
  EXPECT_EQ(seen.size(), 16u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(std::set(seen.begin(), seen.end()).size(), seen.size());
}

// Both roundtrips, exhaustively, on small profiles.
TEST(Codec, ExhaustiveBijection) {
  const std::vector<ChainProfile> profiles{ChainProfile::regular(2, 4), ChainProfile::regular(3, 4),
                                           ChainProfile({1, 2, 3}), ChainProfile({4, 1, 1, 2}),
                                           ChainProfile({1, 1, 1}), ChainProfile({2, 5})};
  for (const auto& p : profiles) {
    std::set<std::vector<AttachPoint>> images;
    for (const auto& s : enumerate_sequences(p)) {
      const auto d = decode(s);
      ASSERT_FALSE(validate_diagram(d)) << render_sequence(s);
      ASSERT_EQ(encode(d), s);
      images.insert(d.parents);
    }
    std::size_t diagrams = 0;
    enumerate_rooted(p, {}, [&](const RootedDiagram& d) {
      ASSERT_EQ(decode(encode(d)), d);
      ++diagrams;
    });
    EXPECT_EQ(images.size(), diagrams);
  }
}

// Random tree: insert elements in a random order, each attaching to the
// root or to a slot of an already-inserted element.
RootedDiagram random_diagram(std::mt19937& rng, const ChainProfile& profile) {
  const int k = profile.k();
  std::vector<Color> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  RootedDiagram d{profile, std::vector<AttachPoint>(static_cast<std::size_t>(k))};
  std::vector<AttachPoint> available{AttachPoint::root()};
  for (Color c : order) {
    d.parents[static_cast<std::size_t>(c - 1)] =
        available[std::uniform_int_distribution<std::size_t>(0, available.size() - 1)(rng)];
    for (int s = 1; s <= profile.slot_count(c); ++s) available.push_back(AttachPoint::slot(c, s));
  }
  return d;
}

TEST(Codec, RandomLargeDiagrams) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> lengths(std::uniform_int_distribution<int>(1, 60)(rng));
    for (auto& q : lengths) q = std::uniform_int_distribution<int>(1, 6)(rng);
    const ChainProfile profile(lengths);
    const auto d = random_diagram(rng, profile);
    ASSERT_FALSE(validate_diagram(d));
    const auto s = encode(d);
    ASSERT_EQ(static_cast<int>(s.tokens.size()), profile.k() - 1);
    ASSERT_EQ(decode(s), d);
    ASSERT_EQ(parse_sequence(render_sequence(s), profile), s);

    // a slot owner never appears more often than it has children
    std::vector<int> children(static_cast<std::size_t>(profile.k()) + 1, 0), mentions(children);
    for (const auto& p : d.parents) ++children[static_cast<std::size_t>(p.element)];
    for (const auto& t : s.tokens) ++mentions[static_cast<std::size_t>(t.element)];
    for (Color c = 1; c <= profile.k(); ++c) EXPECT_LE(mentions[static_cast<std::size_t>(c)], children[static_cast<std::size_t>(c)]);
  }
}

TEST(Codec, RandomSequencesDecodeToTrees) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> lengths(std::uniform_int_distribution<int>(1, 40)(rng));
    for (auto& q : lengths) q = std::uniform_int_distribution<int>(1, 5)(rng);
    const ChainProfile profile(lengths);
    const auto letters = alphabet(profile);
    PruferSequence s{profile, {}};
    for (int i = 0; i < profile.k() - 1; ++i) {
      s.tokens.push_back(letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)]);
    }
    const auto d = decode(s);
    ASSERT_FALSE(validate_diagram(d));
    ASSERT_EQ(encode(d), s);
  }
}

}  // namespace
}  // namespace chaintree
