#include "bubbles/sweep.hpp"

#include <algorithm>

#include "bubbles/error.hpp"
#include "bubbles/parallel.hpp"

namespace bubbles {

namespace {

std::vector<ExtremeEvent> extremes_or_empty(const std::vector<Date>& dates,
                                            const std::vector<std::optional<double>>& values,
                                            std::size_t window, std::string& note,
                                            const char* label) {
  try {
    return detect_extremes(dates, values, window);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kWindowTooLarge) throw;
    if (!note.empty()) note += "; ";
    note += std::string(label) + ": " + e.detail();
    return {};
  }
}

}  // namespace

Analysis analyze_panel(const PricePanel& panel, Date t_ref, const AnalysisOptions& options) {
  const auto perf = normalize_panel(panel, t_ref, options.policy);
  Analysis out{t_ref, dispersion_series(perf, options.workers),
               tail_series(perf, options.k_policy, options.workers), {}, {}, {}};
  out.alpha_extremes = extremes_or_empty(out.tail.dates, out.tail.alpha(), options.window,
                                         out.extremes_note, "alpha");
  out.variance_extremes = extremes_or_empty(out.dispersion.dates, out.dispersion.variance,
                                            options.window, out.extremes_note, "variance");
  return out;
}

SweepResult tref_sweep(const PricePanel& panel, std::span<const Date> t_refs,
                       const SweepOptions& options) {
  std::vector<Date> refs(t_refs.begin(), t_refs.end());
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  for (const auto& d : refs) {
    if (!panel.row_of(d)) {
      throw Error(ErrorCode::kRefDateAbsent,
                  "reference date " + format_date(d) + " is not in the panel");
    }
  }

  SweepResult out;
  out.universe_size = panel.num_tickers();
  if (panel.num_dates() > 0) {
    out.first_date = panel.dates().front();
    out.last_date = panel.dates().back();
  }
  out.policy = options.policy;
  out.k_policy = options.k_policy;

  std::vector<std::optional<SweepEntry>> slots(refs.size());
  // Parallelism is spent across reference dates; each sub-computation is
  // sequential.
  parallel_for(refs.size(), options.workers, [&](std::size_t i) {
    const auto perf = normalize_panel(panel, refs[i], options.policy);
    slots[i] = SweepEntry{refs[i], dispersion_series(perf), tail_series(perf, options.k_policy)};
  });
  out.entries.reserve(slots.size());
  for (auto& s : slots) out.entries.push_back(std::move(*s));
  return out;
}

std::vector<Date> yearly_reference_dates(const PricePanel& panel, std::span<const int> years) {
  std::vector<Date> out;
  for (const auto& d : panel.dates()) {
    const int y = static_cast<int>(d.year());
    if (!out.empty() && out.back().year() == d.year()) continue;
    if (!years.empty() && std::find(years.begin(), years.end(), y) == years.end()) continue;
    out.push_back(d);
  }
  return out;
}

}  // namespace bubbles
