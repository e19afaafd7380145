#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bubbles/extremes.hpp"
#include "bubbles/moments.hpp"
#include "bubbles/survival.hpp"
#include "bubbles/sweep.hpp"
#include "bubbles/tail.hpp"

namespace bubbles {

enum class ReportFormat { kCsv, kJson };

std::optional<ReportFormat> parse_report_format(std::string_view text);

struct LabeledExtreme {
  std::string series;  // "alpha" or "variance"
  ExtremeEvent event;
};

/// One reference date's worth of output.
struct ReportSeries {
  Date t_ref;
  DispersionSeries dispersion;
  std::optional<TailSeries> tail;
  std::vector<LabeledExtreme> extremes;
};

/// Serializable results document: ordered key/value metadata followed by
/// one block per reference date.
///
/// CSV layout (comment lines start with '#'):
///
///   # bubbles-report 1
///   # meta <key>=<value>
///   # series t_ref=<date>
///   # table dispersion
///   date,mean,variance,count
///   # table tail
///   date,alpha_hat,k,n,method
///   # table extremes
///   series,date,kind,value,window
///
/// Undefined values are empty cells in CSV and null in JSON. Numbers are
/// written so that reading them back reproduces every double exactly.
struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<ReportSeries> series;
};

inline constexpr std::string_view kReportSchema = "bubbles-report";
inline constexpr int kReportVersion = 1;

Report make_report(const Analysis& analysis);
Report make_report(const SweepResult& sweep);

std::string render_report(const Report& report, ReportFormat format);

/// Throws ParseError on malformed input.
Report parse_report(std::string_view text, ReportFormat format);

/// Writes through a temporary file and renames it into place, so a failure
/// never leaves a partial file behind. Throws IoError.
void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);

Report read_report(const std::filesystem::path& path, ReportFormat format);

/// Two-column "z,survival" step-point file for log-log plotting.
std::string render_survival_points(std::span<const StepPoint> points);
std::vector<StepPoint> parse_survival_points(std::string_view text);

/// One row of a Monte Carlo dispersion table.
struct SimulationRow {
  double rho;
  double sigma;
  std::size_t n;
  std::size_t reps;           // 0 for analytic-only rows
  std::uint64_t seed;
  std::optional<double> mean_vn;
  std::optional<double> se_vn;
  double analytic;            // (1 - 1/n)(1 - rho) sigma^2
  bool feasible;
};

std::string render_simulation_table(std::span<const SimulationRow> rows, ReportFormat format,
                                    const std::vector<std::pair<std::string, std::string>>& meta);

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bubbles
