#include <gtest/gtest.h>

#include <random>

#include "zmdiff/document.hpp"
#include "zmdiff/error.hpp"

namespace zmdiff {
namespace {

std::string rejection(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

TEST(ParseDocument, Minimal) {
  const auto doc = parse_document(R"({"m": 6, "a": 2, "b": 3, "f": [1, -2]})");
  EXPECT_EQ(doc.m, 6);
  EXPECT_EQ(doc.f, (std::vector<std::int64_t>{1, -2}));
  EXPECT_FALSE(doc.y0.has_value());
  const auto spec = to_problem_spec(doc);
  EXPECT_EQ(spec.forcing().term(1), Residue(4, 6));
}

TEST(ParseDocument, NamesTheOffendingField) {
  EXPECT_NE(rejection(R"({"m": 6, "a": 2, "b": 3, "f": [1], "g": 1})").find("'g'"),
            std::string::npos);
  EXPECT_NE(rejection(R"({"a": 2, "b": 3, "f": [1]})").find("'m'"), std::string::npos);
  EXPECT_NE(rejection(R"({"m": 1, "a": 2, "b": 3, "f": [1]})").find("'m'"), std::string::npos);
  EXPECT_NE(rejection(R"({"m": 6, "a": 2.5, "b": 3, "f": [1]})").find("'a'"),
            std::string::npos);
  EXPECT_NE(rejection(R"({"m": 6, "a": 2, "b": 3, "f": []})").find("'f'"), std::string::npos);
  EXPECT_NE(rejection(R"({"m": 6, "a": 2, "b": 3, "f": [1], "f_period": 2})").find("'f_period'"),
            std::string::npos);
  EXPECT_NE(rejection(R"({"m": 6, "a": 2, "b": 3, "f": [1], "horizon": 0})").find("'horizon'"),
            std::string::npos);
  EXPECT_NE(rejection(R"({"m": 8589934592, "a": 2, "b": 3, "f": [1]})").find("'m'"),
            std::string::npos);
  rejection("[1, 2]");
  rejection("{\"m\": 6,");
}

TEST(Document, RoundTripProperty) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    ProblemDocument doc;
    doc.m = 2 + static_cast<std::int64_t>(rng() % 1000);
    doc.a = static_cast<std::int64_t>(rng() % 2001) - 1000;
    doc.b = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const std::size_t len = 1 + rng() % 10;
    for (std::size_t i = 0; i < len; ++i) doc.f.push_back(static_cast<std::int64_t>(rng()) >> 20);
    if (rng() % 2) doc.f_period = 1 + static_cast<std::int64_t>(rng() % len);
    if (rng() % 2) doc.y0 = static_cast<std::int64_t>(rng() % 100) - 50;
    if (rng() % 2) doc.horizon = 1 + static_cast<std::int64_t>(rng() % 20);
    const auto text = serialize_document(doc);
    const auto back = parse_document(text);
    ASSERT_EQ(back, doc) << text;
    ASSERT_EQ(serialize_document(back), text);
  }
}

}  // namespace
}  // namespace zmdiff
