#include "bubbles/panel.hpp"

#include <gtest/gtest.h>

#include "bubbles/error.hpp"
#include "test_support.hpp"

namespace bubbles {
namespace {

using testing::day;
using testing::make_panel;

TEST(Date, ParsesStrictIso) {
  EXPECT_EQ(format_date(*parse_date("2003-01-02")), "2003-01-02");
  EXPECT_FALSE(parse_date("2003-1-02"));
  EXPECT_FALSE(parse_date("2021-02-30"));
  EXPECT_FALSE(parse_date("2003/01/02"));
  EXPECT_FALSE(parse_date(" 2003-01-02"));
}

TEST(Date, Weekdays) {
  EXPECT_TRUE(is_weekday(day("2003-01-02")));   // Thursday
  EXPECT_FALSE(is_weekday(day("2003-01-04")));  // Saturday
  EXPECT_EQ(add_days(day("2003-12-31"), 1), day("2004-01-01"));
}

TEST(PricePanel, RejectsInvalidConstruction) {
  EXPECT_THROW(make_panel({"2003-01-02", "2003-01-02"}, {{1.0}, {2.0}}), Error);
  EXPECT_THROW(make_panel({"2003-01-03", "2003-01-02"}, {{1.0}, {2.0}}), Error);
  try {
    make_panel({"2003-01-02"}, {{1.0, -5.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositivePrice);
  }
  EXPECT_THROW(PricePanel({day("2003-01-02")}, {"A", "A"}, {1.0, 2.0}), Error);
}

TEST(Normalize, OneStockSeriesNeedsWaiver) {
  const auto panel = make_panel({"2003-01-02", "2003-01-03", "2003-01-06"}, {{10.0}, {15.0}, {12.0}});
  try {
    normalize_panel(panel, day("2003-01-02"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewStocks);
  }
  const auto perf = normalize_panel(panel, day("2003-01-02"), MissingDataPolicy::kDropAtRef, 1);
  EXPECT_DOUBLE_EQ(*perf.value(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(*perf.value(1, 0), 1.5);
  EXPECT_DOUBLE_EQ(*perf.value(2, 0), 1.2);
}

TEST(Normalize, TwoIdenticalStocks) {
  const auto panel = make_panel({"2003-01-02", "2003-01-03", "2003-01-06"},
                                {{10.0, 10.0}, {15.0, 15.0}, {12.0, 12.0}});
  const auto perf = normalize_panel(panel, day("2003-01-02"));
  ASSERT_EQ(perf.num_tickers(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_DOUBLE_EQ(*perf.value(0, i), 1.0);
    EXPECT_DOUBLE_EQ(*perf.value(1, i), 1.5);
    EXPECT_DOUBLE_EQ(*perf.value(2, i), 1.2);
  }
}

TEST(Normalize, ReferenceRowIsOnesAndEarlierDatesDropped) {
  const auto panel = make_panel({"2003-01-02", "2003-01-03", "2003-01-06"},
                                {{3.0, 7.0, 11.0}, {2.5, 9.0, 13.0}, {4.0, 1.0, 17.0}});
  const auto perf = normalize_panel(panel, day("2003-01-03"));
  EXPECT_EQ(perf.t_ref(), day("2003-01-03"));
  ASSERT_EQ(perf.num_dates(), 2u);
  EXPECT_EQ(perf.dates().front(), day("2003-01-03"));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(*perf.value(0, i), 1.0);
  EXPECT_DOUBLE_EQ(*perf.value(1, 0), 4.0 / 2.5);
}

TEST(Normalize, MissingAtReferenceIsDropped) {
  const auto panel = make_panel({"2003-01-02", "2003-01-03"},
                                {{std::nullopt, 2.0, 3.0}, {1.0, 4.0, 6.0}});
  const auto perf = normalize_panel(panel, day("2003-01-02"));
  EXPECT_EQ(perf.tickers(), (std::vector<std::string>{"T1", "T2"}));
}

TEST(Normalize, LaterGapsDependOnPolicy) {
  const auto panel = make_panel({"2003-01-02", "2003-01-03", "2003-01-06"},
                                {{1.0, 2.0, 3.0}, {1.0, std::nullopt, 3.0}, {2.0, 2.0, 3.0}});
  const auto drop = normalize_panel(panel, day("2003-01-02"), MissingDataPolicy::kDropAtRef);
  EXPECT_EQ(drop.num_tickers(), 3u);
  EXPECT_EQ(drop.cross_section(1).size(), 2u);
  EXPECT_EQ(drop.cross_section(2).size(), 3u);

  const auto strict = normalize_panel(panel, day("2003-01-02"), MissingDataPolicy::kRequireComplete);
  EXPECT_EQ(strict.tickers(), (std::vector<std::string>{"T0", "T2"}));
}

TEST(Normalize, AbsentReferenceDate) {
  const auto panel = make_panel({"2003-01-02"}, {{1.0, 2.0}});
  try {
    normalize_panel(panel, day("2004-01-02"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRefDateAbsent);
    EXPECT_NE(std::string(e.what()).find("2004-01-02"), std::string::npos);
  }
}

TEST(Normalize, PolicyNames) {
  EXPECT_EQ(parse_missing_data_policy("drop-at-ref"), MissingDataPolicy::kDropAtRef);
  EXPECT_EQ(parse_missing_data_policy(to_string(MissingDataPolicy::kRequireComplete)),
            MissingDataPolicy::kRequireComplete);
  EXPECT_FALSE(parse_missing_data_policy("drop"));
}

}  // namespace
}  // namespace bubbles
