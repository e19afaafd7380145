#pragma once

#include <cstddef>
#include <cstdint>

#include "bubbles/date.hpp"
#include "bubbles/panel.hpp"

namespace bubbles {

/// Geometric random-walk universe in which a subset of stocks inflates over
/// [bubble_start, bubble_peak) and then crashes back over `crash_days`.
///
/// log S_i(t+1) = log S_i(t) + drift_i(t) + daily_vol * eps_i(t), with
/// drift_i = boost_i during the run-up and -boost_i * runup / crash_days
/// during the crash (zero otherwise and for non-bubble stocks). Boosts are
/// uniform on [boost_min, boost_max]. Day indices count trading days.
struct BubblePanelConfig {
  std::size_t stocks = 500;
  std::size_t bubble_stocks = 100;
  std::size_t days = 500;
  std::size_t bubble_start = 200;
  std::size_t bubble_peak = 300;
  std::size_t crash_days = 30;
  double daily_vol = 0.01;
  double boost_min = 0.002;
  double boost_max = 0.012;
  Date first_date{std::chrono::year{2003}, std::chrono::January, std::chrono::day{2}};
  std::uint64_t seed = 1;
};

struct BubblePanel {
  PricePanel panel;
  BubblePanelConfig config;
};

/// Dates are consecutive weekdays from first_date. Deterministic in seed.
BubblePanel make_bubble_panel(const BubblePanelConfig& config);

}  // namespace bubbles
