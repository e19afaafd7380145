#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubbles/extremes.hpp"
#include "bubbles/moments.hpp"
#include "bubbles/panel.hpp"
#include "bubbles/tail.hpp"

namespace bubbles {

struct AnalysisOptions {
  MissingDataPolicy policy = MissingDataPolicy::kDropAtRef;
  KPolicy k_policy{};
  std::size_t window = 20;  // half-width, in observed dates
  unsigned workers = 1;
};

/// Everything derived from one reference date.
struct Analysis {
  Date t_ref;
  DispersionSeries dispersion;
  TailSeries tail;
  /// Empty with a note when the series is too short for the window.
  std::vector<ExtremeEvent> alpha_extremes;
  std::vector<ExtremeEvent> variance_extremes;
  std::string extremes_note;
};

Analysis analyze_panel(const PricePanel& panel, Date t_ref, const AnalysisOptions& options = {});

struct SweepEntry {
  Date t_ref;
  DispersionSeries dispersion;
  TailSeries tail;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // strictly increasing t_ref
  std::size_t universe_size = 0;
  std::optional<Date> first_date;
  std::optional<Date> last_date;
  MissingDataPolicy policy = MissingDataPolicy::kDropAtRef;
  KPolicy k_policy{};
};

struct SweepOptions {
  MissingDataPolicy policy = MissingDataPolicy::kDropAtRef;
  KPolicy k_policy{};
  unsigned workers = 1;
};

/// Normalizes at each reference date (duplicates collapsed, sorted) and
/// computes dispersion and tail series. Throws RefDateAbsent naming the
/// first missing date before doing any work.
SweepResult tref_sweep(const PricePanel& panel, std::span<const Date> t_refs,
                       const SweepOptions& options = {});

/// First panel date in each calendar year, optionally restricted to `years`.
std::vector<Date> yearly_reference_dates(const PricePanel& panel,
                                         std::span<const int> years = {});

}  // namespace bubbles
