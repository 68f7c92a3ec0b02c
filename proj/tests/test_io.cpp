#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "urysohn/generator.hpp"
#include "urysohn/io.hpp"

using namespace urysohn;
using testing_support::error_kind_of;

TEST(SpaceFormat, ParsesIntegersFractionsAndComments) {
  const auto m = io::parse_space(
      "# a path\n"
      "3\n"
      "\n"
      "a b c\n"
      "0 1/2 1\n"
      "# middle row\n"
      "1/2 0 2/4\n"
      "1 1/2 0\n");
  EXPECT_EQ(m.labels(), (std::vector<Label>{"a", "b", "c"}));
  EXPECT_EQ(m.dist("a", "b"), Rational(1, 2));
  EXPECT_EQ(m.dist("a", "c"), Rational(1));
}

TEST(SpaceFormat, SerializesEveryEntryAsFraction) {
  const auto m = testing_support::path3();
  EXPECT_EQ(io::serialize_space(m), "3\na b c\n0/1 1/1 2/1\n1/1 0/1 1/1\n2/1 1/1 0/1\n");
}

TEST(SpaceFormat, EmptySpace) {
  EXPECT_EQ(io::serialize_space(FiniteMetricSpace()), "0\n");
  EXPECT_EQ(io::parse_space("0\n").size(), 0u);
}

TEST(SpaceFormat, RejectsAxiomViolations) {
  try {
    (void)io::parse_space("3\na b c\n0 1 3\n1 0 1\n3 1 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TriangleViolation);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"a", "c", "b"}));
  }
  EXPECT_EQ(error_kind_of([] { (void)io::parse_space("2\na b\n0 1\n2 0\n"); }), ErrorKind::SymmetryViolation);
}

TEST(SpaceFormat, RejectsMalformedText) {
  for (const char* bad : {"", "x\n", "2 3\n", "2\na\n0 1\n1 0\n", "2\na b\n0 1\n", "2\na b\n0 1\n1\n",
                          "2\na b\n0 one\n1 0\n", "2\na b\n0 1.0\n1 0\n", "1\na\n0\nextra\n", "-1\n"}) {
    EXPECT_EQ(error_kind_of([&] { (void)io::parse_space(std::string(bad)); }), ErrorKind::MalformedInput) << bad;
  }
  EXPECT_EQ(error_kind_of([] { (void)io::parse_space("2\na a\n0 1\n1 0\n"); }), ErrorKind::DuplicateLabel);
}

TEST(SpaceFormat, MissingFile) {
  EXPECT_EQ(error_kind_of([] { (void)io::read_space_file("/nonexistent/space.txt"); }), ErrorKind::MalformedInput);
}

TEST(SpaceFormatProperty, ParseOfSerializeIsIdentity) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = random_space(1 + rng.below(10), {1 + static_cast<std::int64_t>(rng.below(6)), 8}, rng.next());
    const auto text = io::serialize_space(m);
    const auto back = io::parse_space(text);
    ASSERT_EQ(back, m);
    ASSERT_EQ(io::serialize_space(back), text);
  }
}

TEST(LineFormats, LabelValues) {
  std::istringstream in("# f\na 1/2\n\nb 3\n");
  const auto v = io::parse_label_values(in);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].first, "a");
  EXPECT_EQ(v[0].second, Rational(1, 2));
  EXPECT_EQ(v[1].second, Rational(3));
  std::istringstream bad("a 1 2\n");
  EXPECT_EQ(error_kind_of([&] { (void)io::parse_label_values(bad); }), ErrorKind::MalformedInput);
  std::istringstream bad_value("a x\n");
  EXPECT_EQ(error_kind_of([&] { (void)io::parse_label_values(bad_value); }), ErrorKind::MalformedInput);
}

TEST(LineFormats, LabelPairsAndLists) {
  std::istringstream pairs("a x\n# skip\nb y\n");
  const auto p = io::parse_label_pairs(pairs);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1], (std::pair<Label, Label>{"b", "y"}));
  std::istringstream bad("a\n");
  EXPECT_EQ(error_kind_of([&] { (void)io::parse_label_pairs(bad); }), ErrorKind::MalformedInput);

  std::istringstream lists("x y\n\nz\n");
  const auto l = io::parse_label_lines(lists);
  EXPECT_EQ(l, (std::vector<std::vector<Label>>{{"x", "y"}, {"z"}}));
}
