// bubbles: command-line front end for cross-sectional dispersion analysis.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bubbles/csv_panel.hpp"
#include "bubbles/date.hpp"
#include "bubbles/error.hpp"
#include "bubbles/report.hpp"
#include "bubbles/simulation.hpp"
#include "bubbles/survival.hpp"
#include "bubbles/sweep.hpp"
#include "bubbles/synthetic.hpp"
#include "bubbles/theory.hpp"

namespace {

using namespace bubbles;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Date date_flag(const std::string& flag, const std::string& text) {
  if (auto d = parse_date(text)) return *d;
  throw UsageError(flag + ": expected YYYY-MM-DD, got '" + text + "'");
}

MissingDataPolicy policy_flag(const std::string& text) {
  if (auto p = parse_missing_data_policy(text)) return *p;
  throw UsageError("--policy: expected drop-at-ref or require-complete, got '" + text + "'");
}

ReportFormat format_flag(const std::string& text) {
  if (auto f = parse_report_format(text)) return *f;
  throw UsageError("--format: expected csv or json, got '" + text + "'");
}

// Writes to `out` atomically, or to stdout when no path was given.
void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    write_text_file_atomic(out, content);
  }
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct AnalyzeArgs {
  std::string panel, tref, out, format = "csv", policy = "drop-at-ref";
  double k_fraction = 0.10;
  std::optional<std::size_t> k;
  std::size_t window = 20;
  unsigned workers = 1;
};

int run_analyze(const AnalyzeArgs& a) {
  const Date t_ref = date_flag("--tref", a.tref);
  const ReportFormat format = format_flag(a.format);
  AnalysisOptions opt;
  opt.policy = policy_flag(a.policy);
  opt.k_policy.fraction = a.k_fraction;
  opt.k_policy.fixed = a.k;
  opt.window = a.window;
  opt.workers = a.workers;
  const auto panel = load_price_panel(a.panel);
  const auto analysis = analyze_panel(panel, t_ref, opt);
  emit(a.out, render_report(make_report(analysis), format));
  return 0;
}

struct SurvivalArgs {
  std::string panel, tref, date, out, policy = "drop-at-ref";
};

int run_survival(const SurvivalArgs& a) {
  const Date t_ref = date_flag("--tref", a.tref);
  const Date date = date_flag("--date", a.date);
  const auto panel = load_price_panel(a.panel);
  const auto perf = normalize_panel(panel, t_ref, policy_flag(a.policy));
  const auto& dates = perf.dates();
  const auto it = std::lower_bound(dates.begin(), dates.end(), date);
  if (it == dates.end() || *it != date) {
    throw Error(ErrorCode::kRefDateAbsent, "date " + format_date(date) + " is not in the panel");
  }
  const SurvivalCurve curve(perf.cross_section(static_cast<std::size_t>(it - dates.begin())));
  if (curve.size() == 0) {
    throw Error(ErrorCode::kEmptyCrossSection, "no stock has a value on " + format_date(date));
  }
  emit(a.out, render_survival_points(curve.step_points()));
  return 0;
}

struct SimulateArgs {
  std::size_t n = 1000, reps = 100;
  double rho = 0.0, sigma = 1.0;
  std::uint64_t seed = 0;
  std::string table, out, format = "csv";
  bool analytic_only = false;
  unsigned workers = 1;
};

SimulationRow simulate_row(const SimulateArgs& a, double rho, double sigma, bool force_analytic) {
  const auto spec = CorrelationSpec::equicorrelated(a.n, rho, sigma);
  SimulationRow row{rho, sigma, a.n, 0, a.seed, std::nullopt, std::nullopt,
                    expected_dispersion(spec), validate_feasibility(spec).feasible};
  if (force_analytic) return row;
  const auto res = simulate_dispersion({spec, a.reps, a.seed, false, a.workers});
  row.reps = a.reps;
  row.mean_vn = res.mean_vn;
  row.se_vn = res.se_vn;
  return row;
}

void print_table(const std::vector<SimulationRow>& rows) {
  std::printf("%-8s %-6s %-6s %-6s %-18s %-18s %-18s %s\n", "rho", "sigma", "n", "reps",
              "mean_vn", "se_vn", "analytic", "source");
  for (const auto& r : rows) {
    std::printf("%-8s %-6s %-6zu %-6zu %-18s %-18s %-18s %s\n", short_number(r.rho).c_str(),
                short_number(r.sigma).c_str(), r.n, r.reps,
                r.mean_vn ? short_number(*r.mean_vn).c_str() : "-",
                r.se_vn ? short_number(*r.se_vn).c_str() : "-",
                short_number(r.analytic).c_str(), r.mean_vn ? "simulated" : "analytic");
  }
}

int run_simulate(const SimulateArgs& a) {
  const ReportFormat format = format_flag(a.format);
  if (a.n < 2) throw UsageError("--n must be at least 2");
  std::vector<SimulationRow> rows;
  if (a.table.empty()) {
    rows.push_back(simulate_row(a, a.rho, a.sigma, a.analytic_only));
  } else if (a.table == "rho-sweep") {
    for (int i = -5; i <= 5; ++i) {
      const double rho = i / 5.0;
      const bool feasible =
          validate_feasibility(CorrelationSpec::equicorrelated(a.n, rho, a.sigma)).feasible;
      rows.push_back(simulate_row(a, rho, a.sigma, a.analytic_only || !feasible));
    }
  } else if (a.table == "sigma-sweep") {
    for (int i = 0; i < 10; ++i) {
      rows.push_back(simulate_row(a, a.rho, (1 + 2 * i) / 10.0, a.analytic_only));
    }
  } else {
    throw UsageError("--table: expected rho-sweep or sigma-sweep, got '" + a.table + "'");
  }
  std::vector<std::pair<std::string, std::string>> meta{
      {"n", std::to_string(a.n)}, {"reps", std::to_string(a.reps)},
      {"seed", std::to_string(a.seed)}};
  if (!a.table.empty()) meta.emplace_back("table", a.table);
  const std::string file = render_simulation_table(rows, format, meta);
  print_table(rows);
  if (!a.out.empty()) write_text_file_atomic(a.out, file);
  return 0;
}

struct SweepArgs {
  std::string panel, out, format = "csv", policy = "drop-at-ref";
  std::vector<std::string> trefs;
  std::vector<int> years;
  double k_fraction = 0.10;
  unsigned workers = 1;
};

int run_sweep(const SweepArgs& a) {
  const ReportFormat format = format_flag(a.format);
  if (!a.trefs.empty() && !a.years.empty()) throw UsageError("--trefs and --years are exclusive");
  SweepOptions opt;
  opt.policy = policy_flag(a.policy);
  opt.k_policy.fraction = a.k_fraction;
  opt.workers = a.workers;
  std::vector<Date> refs;
  for (const auto& t : a.trefs) refs.push_back(date_flag("--trefs", t));
  const auto panel = load_price_panel(a.panel);
  if (refs.empty()) refs = yearly_reference_dates(panel, a.years);
  emit(a.out, render_report(make_report(tref_sweep(panel, refs, opt)), format));
  return 0;
}

struct GenerateArgs {
  BubblePanelConfig config;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  emit(a.out, render_price_panel(make_bubble_panel(a.config).panel));
  return 0;
}

int exit_code_for(const Error& e) {
  return category_of(e.code()) == ErrorCategory::kNumerical ? kExitNumerical : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-sectional dispersion and tail statistics of stock panels", "bubbles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bubbles 0.1.0");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Dispersion, tail and extremes for one t_ref");
  cmd_analyze->add_option("panel", analyze.panel, "Price panel CSV")->required();
  cmd_analyze->add_option("--tref", analyze.tref, "Reference date (YYYY-MM-DD)")->required();
  cmd_analyze->add_option("--k-fraction", analyze.k_fraction, "Hill k as a fraction of n")
      ->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0));
  cmd_analyze->add_option("--k", analyze.k, "Fixed Hill k (overrides --k-fraction)")
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--window", analyze.window, "Extreme detection half-width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--out", analyze.out, "Output file (default stdout)");
  cmd_analyze->add_option("--format", analyze.format, "csv or json")->capture_default_str();
  cmd_analyze->add_option("--policy", analyze.policy, "drop-at-ref or require-complete")
      ->capture_default_str();
  cmd_analyze->add_option("--workers", analyze.workers, "Threads (0 = all cores)")
      ->capture_default_str();

  SurvivalArgs survival;
  auto* cmd_survival = app.add_subcommand("survival", "Survival step points of one cross-section");
  cmd_survival->add_option("panel", survival.panel, "Price panel CSV")->required();
  cmd_survival->add_option("--tref", survival.tref, "Reference date")->required();
  cmd_survival->add_option("--date", survival.date, "Observation date")->required();
  cmd_survival->add_option("--out", survival.out, "Output file (default stdout)");
  cmd_survival->add_option("--policy", survival.policy, "drop-at-ref or require-complete")
      ->capture_default_str();

  SimulateArgs simulate;
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo mean dispersion of Gaussian vectors");
  cmd_simulate->add_option("--n", simulate.n, "Vector dimension")->capture_default_str();
  cmd_simulate->add_option("--m-reps", simulate.reps, "Replications")->capture_default_str();
  cmd_simulate->add_option("--rho", simulate.rho, "Equicorrelation")
      ->capture_default_str()
      ->check(CLI::Range(-1.0, 1.0));
  cmd_simulate->add_option("--sigma", simulate.sigma, "Common standard deviation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--seed", simulate.seed, "RNG seed")->capture_default_str();
  cmd_simulate->add_option("--table", simulate.table, "rho-sweep or sigma-sweep");
  cmd_simulate->add_flag("--analytic-only", simulate.analytic_only,
                         "Skip simulation; report the closed form");
  cmd_simulate->add_option("--out", simulate.out, "Also write the table to this file");
  cmd_simulate->add_option("--format", simulate.format, "csv or json")->capture_default_str();
  cmd_simulate->add_option("--workers", simulate.workers, "Threads (0 = all cores)")
      ->capture_default_str();

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Dispersion and tail series for several t_refs");
  cmd_sweep->add_option("panel", sweep.panel, "Price panel CSV")->required();
  cmd_sweep->add_option("--trefs", sweep.trefs, "Comma-separated reference dates")->delimiter(',');
  cmd_sweep->add_option("--years", sweep.years,
                        "First trading day of these years (default: every year)")
      ->delimiter(',');
  cmd_sweep->add_option("--k-fraction", sweep.k_fraction, "Hill k as a fraction of n")
      ->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0));
  cmd_sweep->add_option("--out", sweep.out, "Output file (default stdout)");
  cmd_sweep->add_option("--format", sweep.format, "csv or json")->capture_default_str();
  cmd_sweep->add_option("--policy", sweep.policy, "drop-at-ref or require-complete")
      ->capture_default_str();
  cmd_sweep->add_option("--workers", sweep.workers, "Threads (0 = all cores)")
      ->capture_default_str();

  GenerateArgs generate;
  auto& g = generate.config;
  auto* cmd_generate = app.add_subcommand("generate", "Write a synthetic bubble price panel");
  cmd_generate->add_option("--stocks", g.stocks)->capture_default_str();
  cmd_generate->add_option("--bubble-stocks", g.bubble_stocks)->capture_default_str();
  cmd_generate->add_option("--days", g.days)->capture_default_str();
  cmd_generate->add_option("--bubble-start", g.bubble_start)->capture_default_str();
  cmd_generate->add_option("--bubble-peak", g.bubble_peak)->capture_default_str();
  cmd_generate->add_option("--crash-days", g.crash_days)->capture_default_str();
  cmd_generate->add_option("--seed", g.seed)->capture_default_str();
  cmd_generate->add_option("--out", generate.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_analyze) return run_analyze(analyze);
    if (*cmd_survival) return run_survival(survival);
    if (*cmd_simulate) return run_simulate(simulate);
    if (*cmd_sweep) return run_sweep(sweep);
    if (*cmd_generate) return run_generate(generate);
  } catch (const UsageError& e) {
    std::cerr << "bubbles: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "bubbles: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "bubbles: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
