#include "bubbles/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "bubbles/error.hpp"
#include "bubbles/random.hpp"

namespace bubbles {

BubblePanel make_bubble_panel(const BubblePanelConfig& config) {
  if (config.bubble_stocks > config.stocks || config.bubble_start >= config.bubble_peak ||
      config.bubble_peak > config.days || config.crash_days == 0) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent bubble panel configuration");
  }
  std::vector<Date> dates;
  dates.reserve(config.days);
  Date d = config.first_date;
  while (dates.size() < config.days) {
    if (is_weekday(d)) dates.push_back(d);
    d = add_days(d, 1);
  }

  std::vector<std::string> tickers;
  tickers.reserve(config.stocks);
  for (std::size_t i = 0; i < config.stocks; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "S%04zu", i);
    tickers.emplace_back(buf);
  }

  const double runup = static_cast<double>(config.bubble_peak - config.bubble_start);
  std::vector<std::optional<double>> prices(config.days * config.stocks);
  for (std::size_t i = 0; i < config.stocks; ++i) {
    CounterStream rng(config.seed, i);
    const double start = 10.0 + 90.0 * rng.uniform();
    const double boost =
        i < config.bubble_stocks
            ? config.boost_min + (config.boost_max - config.boost_min) * rng.uniform()
            : 0.0;
    double log_price = std::log(start);
    for (std::size_t t = 0; t < config.days; ++t) {
      prices[t * config.stocks + i] = std::exp(log_price);
      double drift = 0.0;
      if (t >= config.bubble_start && t < config.bubble_peak) {
        drift = boost;
      } else if (t >= config.bubble_peak && t < config.bubble_peak + config.crash_days) {
        drift = -boost * runup / static_cast<double>(config.crash_days);
      }
      log_price += drift + config.daily_vol * rng.normal();
    }
  }
  return {PricePanel(std::move(dates), std::move(tickers), prices), config};
}

}  // namespace bubbles
