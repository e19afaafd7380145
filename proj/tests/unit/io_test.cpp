#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "bubbles/csv_panel.hpp"
#include "bubbles/error.hpp"
#include "bubbles/report.hpp"
#include "bubbles/sweep.hpp"
#include "bubbles/synthetic.hpp"
#include "test_support.hpp"

namespace bubbles {
namespace {

const std::filesystem::path kFixtures = BUBBLES_FIXTURE_DIR;

Error load_error(const std::string& name) {
  try {
    load_price_panel(kFixtures / name);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << name << " loaded without error";
  return Error(ErrorCode::kInvalidArgument, "none");
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(LoadPanel, WellFormed) {
  const auto p = load_price_panel(kFixtures / "small_panel.csv");
  EXPECT_EQ(p.num_dates(), 3u);
  EXPECT_EQ(p.num_tickers(), 2u);
  EXPECT_EQ(p.tickers(), (std::vector<std::string>{"AAA", "BBB"}));
  EXPECT_EQ(*p.price(2, 1), 18.5);
}

TEST(LoadPanel, EmptyCellIsMissing) {
  const auto p = load_price_panel(kFixtures / "missing_cell.csv");
  EXPECT_FALSE(p.price(1, 1));
  EXPECT_EQ(*p.price(1, 2), 33.0);
}

TEST(LoadPanel, NegativePriceLocated) {
  const auto e = load_error("negative_price.csv");
  EXPECT_EQ(e.code(), ErrorCode::kNonPositivePrice);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 2u);
  EXPECT_NE(std::string(e.what()).find("negative_price.csv"), std::string::npos);
}

TEST(LoadPanel, DuplicateDate) {
  const auto e = load_error("duplicate_date.csv");
  EXPECT_EQ(e.code(), ErrorCode::kDuplicateDate);
  EXPECT_EQ(e.line(), 4u);
}

TEST(LoadPanel, ParseErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_price_panel(in);
  };
  auto expect_parse_error = [&](const std::string& text, std::size_t line, std::size_t col) {
    try {
      parse(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << text;
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.column(), col) << text;
    }
  };
  expect_parse_error("", 1, 1);
  expect_parse_error("day,A\n", 1, 1);
  expect_parse_error("date,A,A\n", 1, 3);
  expect_parse_error("date,A\n2003-01-02,1,2\n", 2, 3);
  expect_parse_error("date,A\n2003-13-02,1\n", 2, 1);
  expect_parse_error("date,A\n2003-01-02,1x\n", 2, 2);
  expect_parse_error("date,A\n2003-01-02,1,000\n", 2, 3);
  expect_parse_error("date,A\n2003-01-02, 1\n", 2, 2);
  EXPECT_EQ(parse("\xEF\xBB\xBF" "date,A\n2003-01-02,1\n").num_dates(), 1u);
  EXPECT_THROW(load_price_panel(kFixtures / "does_not_exist.csv"), Error);
}

TEST(LoadPanel, RowOrderAndLineEndingsDoNotMatter) {
  const auto a = load_price_panel(kFixtures / "small_panel.csv");
  const auto b = load_price_panel(kFixtures / "shuffled_panel.csv");
  EXPECT_EQ(render_price_panel(a), render_price_panel(b));
  const auto c = load_price_panel(kFixtures / "crlf_panel.csv");
  EXPECT_EQ(c.num_dates(), 2u);
  EXPECT_EQ(*c.price(1, 1), 19.0);
}

TEST(LoadPanel, ShuffledRowsProperty) {
  auto panel = make_bubble_panel({.stocks = 12, .bubble_stocks = 3, .days = 40,
                                  .bubble_start = 10, .bubble_peak = 20, .crash_days = 5})
                   .panel;
  const std::string text = render_price_panel(panel);
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string header, line;
  std::getline(in, header);
  while (std::getline(in, line)) lines.push_back(line);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled = header + "\n";
    for (const auto& l : lines) shuffled += l + "\n";
    std::istringstream sin(shuffled);
    EXPECT_EQ(render_price_panel(parse_price_panel(sin)), text);
  }
}

DispersionSeries random_dispersion(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-300, 300);
  DispersionSeries s;
  Date d = testing::day("2000-01-03");
  for (std::size_t i = 0; i < n; ++i) {
    s.dates.push_back(d);
    d = add_days(d, 1);
    const double mean = std::exp(u(rng) / 10) * (rng() % 2 ? 1 : -1);
    s.mean.push_back(i % 7 == 3 ? std::nullopt : std::optional<double>(mean));
    s.variance.push_back(i % 5 == 1 ? std::nullopt : std::optional<double>(std::exp(u(rng))));
    s.count.push_back(rng() % 5000);
  }
  return s;
}

TEST(Report, RoundTripIsBitExact) {
  std::mt19937_64 rng(13);
  for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
    for (int trial = 0; trial < 10; ++trial) {
      Report r;
      r.meta = {{"source", "unit"}, {"trial", std::to_string(trial)}};
      for (int b = 0; b < 3; ++b) {
        ReportSeries s{testing::day("2000-01-03"), random_dispersion(rng, 40), std::nullopt, {}};
        TailSeries t;
        t.dates = s.dispersion.dates;
        for (std::size_t i = 0; i < t.dates.size(); ++i) {
          if (i % 4 == 0) {
            t.estimates.emplace_back(std::nullopt);
          } else {
            t.estimates.emplace_back(TailEstimate{std::ldexp(static_cast<double>(rng()), -60), i,
                                                  10 * i, TailMethod::kHill});
          }
        }
        s.tail = t;
        s.extremes.push_back({"alpha", {t.dates[5], ExtremeKind::kLocalMinimum, 0.1 + 0.2, 20}});
        r.series.push_back(std::move(s));
      }
      const auto back = parse_report(render_report(r, format), format);
      ASSERT_EQ(back.meta, r.meta);
      ASSERT_EQ(back.series.size(), r.series.size());
      for (std::size_t b = 0; b < r.series.size(); ++b) {
        const auto& x = r.series[b];
        const auto& y = back.series[b];
        EXPECT_EQ(y.t_ref, x.t_ref);
        ASSERT_EQ(y.dispersion.size(), x.dispersion.size());
        EXPECT_EQ(y.dispersion.dates, x.dispersion.dates);
        EXPECT_EQ(y.dispersion.count, x.dispersion.count);
        for (std::size_t i = 0; i < x.dispersion.size(); ++i) {
          ASSERT_EQ(y.dispersion.mean[i].has_value(), x.dispersion.mean[i].has_value());
          ASSERT_EQ(y.dispersion.variance[i].has_value(), x.dispersion.variance[i].has_value());
          if (x.dispersion.mean[i]) EXPECT_TRUE(same_bits(*y.dispersion.mean[i], *x.dispersion.mean[i]));
          if (x.dispersion.variance[i]) {
            EXPECT_TRUE(same_bits(*y.dispersion.variance[i], *x.dispersion.variance[i]));
          }
        }
        ASSERT_TRUE(y.tail);
        for (std::size_t i = 0; i < x.tail->size(); ++i) {
          ASSERT_EQ(y.tail->estimates[i].has_value(), x.tail->estimates[i].has_value());
          if (x.tail->estimates[i]) {
            EXPECT_TRUE(same_bits(y.tail->estimates[i]->alpha_hat, x.tail->estimates[i]->alpha_hat));
            EXPECT_EQ(y.tail->estimates[i]->k, x.tail->estimates[i]->k);
          }
        }
        ASSERT_EQ(y.extremes.size(), 1u);
        EXPECT_TRUE(same_bits(y.extremes[0].event.value, 0.1 + 0.2));
      }
    }
  }
}

TEST(Report, EmptyDocumentHasSchemaHeader) {
  const Report empty;
  const auto csv = render_report(empty, ReportFormat::kCsv);
  EXPECT_EQ(csv.rfind("# bubbles-report 1", 0), 0u);
  EXPECT_TRUE(parse_report(csv, ReportFormat::kCsv).series.empty());
  const auto json = render_report(empty, ReportFormat::kJson);
  EXPECT_NE(json.find("\"schema\": \"bubbles-report\""), std::string::npos);
  EXPECT_TRUE(parse_report(json, ReportFormat::kJson).series.empty());
  EXPECT_THROW(parse_report("date,mean\n", ReportFormat::kCsv), Error);
  EXPECT_THROW(parse_report("{\"schema\": 3}", ReportFormat::kJson), Error);
}

TEST(Report, FileWriteAndReload) {
  const auto panel = load_price_panel(kFixtures / "small_panel.csv");
  const auto analysis = analyze_panel(panel, testing::day("2003-01-02"));
  const auto dir = std::filesystem::temp_directory_path() / "bubbles_io_test";
  std::filesystem::create_directories(dir);
  for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
    const auto path = dir / (format == ReportFormat::kCsv ? "r.csv" : "r.json");
    write_report(make_report(analysis), path, format);
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    const auto back = read_report(path, format);
    ASSERT_EQ(back.series.size(), 1u);
    EXPECT_EQ(back.series[0].dispersion.variance, analysis.dispersion.variance);
    EXPECT_EQ(back.series[0].dispersion.mean, analysis.dispersion.mean);
  }
  EXPECT_THROW(write_report(Report{}, dir / "missing_dir" / "x.csv", ReportFormat::kCsv), Error);
}

TEST(Report, SweepWithElevenReferenceDates) {
  const auto panel = make_bubble_panel({.stocks = 20, .bubble_stocks = 4, .days = 300,
                                        .bubble_start = 100, .bubble_peak = 150,
                                        .crash_days = 10})
                         .panel;
  std::vector<Date> refs;
  for (std::size_t i = 0; i < 11; ++i) refs.push_back(panel.dates()[i * 20]);
  const auto sweep = tref_sweep(panel, refs);
  const auto report = make_report(sweep);
  ASSERT_EQ(report.series.size(), 11u);
  const auto csv = render_report(report, ReportFormat::kCsv);
  std::size_t blocks = 0;
  for (std::size_t pos = 0; (pos = csv.find("# series t_ref=", pos)) != std::string::npos; ++pos) {
    ++blocks;
  }
  EXPECT_EQ(blocks, 11u);
  EXPECT_EQ(parse_report(render_report(report, ReportFormat::kJson), ReportFormat::kJson)
                .series.size(),
            11u);
}

TEST(SurvivalPoints, RenderAndParse) {
  const SurvivalCurve curve(std::vector<double>{0.5, 1.5, 2.5});
  const auto text = render_survival_points(curve.step_points());
  EXPECT_EQ(text.rfind("z,survival\n0.5,0.66666666666666663\n", 0), 0u);
  const auto back = parse_survival_points(text);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[2].z, 2.5);
  EXPECT_EQ(back[2].survival, 0.0);
}

}  // namespace
}  // namespace bubbles
