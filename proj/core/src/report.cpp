#include "bubbles/report.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bubbles/error.hpp"
#include "bubbles/text.hpp"

namespace bubbles {

namespace {

using ojson = nlohmann::ordered_json;

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void bad(std::size_t line, std::size_t col, const std::string& why) {
  throw Error(ErrorCode::kParseError, why, line, col);
}

Date need_date(std::string_view s, std::size_t line, std::size_t col) {
  auto d = parse_date(s);
  if (!d) bad(line, col, "invalid date '" + std::string(s) + "'");
  return *d;
}

std::optional<double> opt_number(std::string_view s, std::size_t line, std::size_t col) {
  if (s.empty()) return std::nullopt;
  auto v = parse_decimal(s);
  if (!v) bad(line, col, "invalid number '" + std::string(s) + "'");
  return v;
}

std::size_t need_count(std::string_view s, std::size_t line, std::size_t col) {
  auto v = parse_decimal(s);
  if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
    bad(line, col, "invalid count '" + std::string(s) + "'");
  }
  return static_cast<std::size_t>(*v);
}

std::optional<ExtremeKind> parse_kind(std::string_view s) {
  if (s == "local-minimum") return ExtremeKind::kLocalMinimum;
  if (s == "local-maximum") return ExtremeKind::kLocalMaximum;
  return std::nullopt;
}

std::optional<TailMethod> parse_method(std::string_view s) {
  if (s == "hill") return TailMethod::kHill;
  if (s == "loglog") return TailMethod::kLogLog;
  return std::nullopt;
}

std::string render_csv(const Report& report) {
  std::string out;
  out += "# " + std::string(kReportSchema) + " " + std::to_string(kReportVersion) + "\n";
  for (const auto& [k, v] : report.meta) out += "# meta " + k + "=" + v + "\n";
  for (const auto& s : report.series) {
    out += "# series t_ref=" + format_date(s.t_ref) + "\n";
    out += "# table dispersion\ndate,mean,variance,count\n";
    const auto& d = s.dispersion;
    for (std::size_t i = 0; i < d.size(); ++i) {
      out += format_date(d.dates[i]) + "," + opt_cell(d.mean[i]) + "," + opt_cell(d.variance[i]) +
             "," + std::to_string(d.count[i]) + "\n";
    }
    if (s.tail) {
      out += "# table tail\ndate,alpha_hat,k,n,method\n";
      for (std::size_t i = 0; i < s.tail->size(); ++i) {
        out += format_date(s.tail->dates[i]);
        if (const auto& e = s.tail->estimates[i]) {
          out += "," + format_double(e->alpha_hat) + "," + std::to_string(e->k) + "," +
                 std::to_string(e->n) + "," + to_string(e->method) + "\n";
        } else {
          out += ",,,,\n";
        }
      }
    }
    out += "# table extremes\nseries,date,kind,value,window\n";
    for (const auto& x : s.extremes) {
      out += x.series + "," + format_date(x.event.date) + "," + to_string(x.event.kind) + "," +
             format_double(x.event.value) + "," + std::to_string(x.event.window) + "\n";
    }
  }
  return out;
}

Report parse_csv(std::string_view text) {
  Report report;
  enum class Table { kNone, kDispersion, kTail, kExtremes } table = Table::kNone;
  bool expect_header = false;
  bool saw_schema = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string_view body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (!saw_schema) {
        if (body.rfind(kReportSchema, 0) != 0) bad(line_no, 1, "missing report schema header");
        saw_schema = true;
      } else if (body.rfind("meta ", 0) == 0) {
        const auto kv = body.substr(5);
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) bad(line_no, 1, "meta line without '='");
        report.meta.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
      } else if (body.rfind("series t_ref=", 0) == 0) {
        ReportSeries s{need_date(body.substr(13), line_no, 1), {}, std::nullopt, {}};
        report.series.push_back(std::move(s));
        table = Table::kNone;
      } else if (body.rfind("table ", 0) == 0) {
        if (report.series.empty()) bad(line_no, 1, "table outside a series block");
        const auto name = body.substr(6);
        if (name == "dispersion") {
          table = Table::kDispersion;
        } else if (name == "tail") {
          table = Table::kTail;
          report.series.back().tail.emplace();
        } else if (name == "extremes") {
          table = Table::kExtremes;
        } else {
          bad(line_no, 1, "unknown table '" + std::string(name) + "'");
        }
        expect_header = true;
      }
      continue;
    }
    if (!saw_schema) bad(line_no, 1, "missing report schema header");
    if (expect_header) {
      expect_header = false;
      continue;
    }
    const auto cells = split_csv(line);
    auto& s = report.series.back();
    switch (table) {
      case Table::kDispersion: {
        if (cells.size() != 4) bad(line_no, 1, "dispersion row needs 4 cells");
        s.dispersion.dates.push_back(need_date(cells[0], line_no, 1));
        s.dispersion.mean.push_back(opt_number(cells[1], line_no, 2));
        s.dispersion.variance.push_back(opt_number(cells[2], line_no, 3));
        s.dispersion.count.push_back(need_count(cells[3], line_no, 4));
        break;
      }
      case Table::kTail: {
        if (cells.size() != 5) bad(line_no, 1, "tail row needs 5 cells");
        s.tail->dates.push_back(need_date(cells[0], line_no, 1));
        if (cells[1].empty()) {
          s.tail->estimates.emplace_back(std::nullopt);
        } else {
          const auto method = parse_method(cells[4]);
          if (!method) bad(line_no, 5, "unknown method");
          s.tail->estimates.emplace_back(TailEstimate{*opt_number(cells[1], line_no, 2),
                                                      need_count(cells[2], line_no, 3),
                                                      need_count(cells[3], line_no, 4), *method});
        }
        break;
      }
      case Table::kExtremes: {
        if (cells.size() != 5) bad(line_no, 1, "extremes row needs 5 cells");
        const auto kind = parse_kind(cells[2]);
        if (!kind) bad(line_no, 3, "unknown extreme kind");
        const auto value = opt_number(cells[3], line_no, 4);
        if (!value) bad(line_no, 4, "missing extreme value");
        s.extremes.push_back({std::string(cells[0]),
                              {need_date(cells[1], line_no, 2), *kind, *value,
                               need_count(cells[4], line_no, 5)}});
        break;
      }
      case Table::kNone:
        bad(line_no, 1, "data row outside a table");
    }
  }
  if (!saw_schema) bad(1, 1, "missing report schema header");
  return report;
}

std::string render_json(const Report& report) {
  ojson doc;
  doc["schema"] = std::string(kReportSchema);
  doc["version"] = kReportVersion;
  ojson meta = ojson::object();
  for (const auto& [k, v] : report.meta) meta[k] = v;
  doc["meta"] = std::move(meta);
  ojson series = ojson::array();
  for (const auto& s : report.series) {
    ojson block;
    block["t_ref"] = format_date(s.t_ref);
    ojson disp;
    disp["date"] = ojson::array();
    disp["mean"] = ojson::array();
    disp["variance"] = ojson::array();
    disp["count"] = ojson::array();
    for (std::size_t i = 0; i < s.dispersion.size(); ++i) {
      disp["date"].push_back(format_date(s.dispersion.dates[i]));
      disp["mean"].push_back(opt_json(s.dispersion.mean[i]));
      disp["variance"].push_back(opt_json(s.dispersion.variance[i]));
      disp["count"].push_back(s.dispersion.count[i]);
    }
    block["dispersion"] = std::move(disp);
    if (s.tail) {
      ojson tail;
      for (const char* key : {"date", "alpha_hat", "k", "n", "method"}) tail[key] = ojson::array();
      for (std::size_t i = 0; i < s.tail->size(); ++i) {
        tail["date"].push_back(format_date(s.tail->dates[i]));
        const auto& e = s.tail->estimates[i];
        tail["alpha_hat"].push_back(e ? ojson(e->alpha_hat) : ojson(nullptr));
        tail["k"].push_back(e ? ojson(e->k) : ojson(nullptr));
        tail["n"].push_back(e ? ojson(e->n) : ojson(nullptr));
        tail["method"].push_back(e ? ojson(to_string(e->method)) : ojson(nullptr));
      }
      block["tail"] = std::move(tail);
    }
    ojson ext = ojson::array();
    for (const auto& x : s.extremes) {
      ext.push_back({{"series", x.series},
                     {"date", format_date(x.event.date)},
                     {"kind", to_string(x.event.kind)},
                     {"value", x.event.value},
                     {"window", x.event.window}});
    }
    block["extremes"] = std::move(ext);
    series.push_back(std::move(block));
  }
  doc["series"] = std::move(series);
  return doc.dump(2) + "\n";
}

Date json_date(const ojson& j) {
  auto d = parse_date(j.get<std::string>());
  if (!d) throw Error(ErrorCode::kParseError, "invalid date '" + j.get<std::string>() + "'");
  return *d;
}

std::optional<double> json_opt(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Report parse_json(std::string_view text) {
  Report report;
  try {
    const auto doc = ojson::parse(text);
    if (doc.at("schema").get<std::string>() != kReportSchema) {
      throw Error(ErrorCode::kParseError, "unexpected schema");
    }
    for (const auto& [k, v] : doc.at("meta").items()) {
      report.meta.emplace_back(k, v.get<std::string>());
    }
    for (const auto& block : doc.at("series")) {
      ReportSeries s{json_date(block.at("t_ref")), {}, std::nullopt, {}};
      const auto& disp = block.at("dispersion");
      for (std::size_t i = 0; i < disp.at("date").size(); ++i) {
        s.dispersion.dates.push_back(json_date(disp["date"][i]));
        s.dispersion.mean.push_back(json_opt(disp.at("mean").at(i)));
        s.dispersion.variance.push_back(json_opt(disp.at("variance").at(i)));
        s.dispersion.count.push_back(disp.at("count").at(i).get<std::size_t>());
      }
      if (block.contains("tail")) {
        const auto& tail = block["tail"];
        TailSeries ts;
        for (std::size_t i = 0; i < tail.at("date").size(); ++i) {
          ts.dates.push_back(json_date(tail["date"][i]));
          if (tail.at("alpha_hat").at(i).is_null()) {
            ts.estimates.emplace_back(std::nullopt);
          } else {
            const auto method = parse_method(tail.at("method").at(i).get<std::string>());
            if (!method) throw Error(ErrorCode::kParseError, "unknown tail method");
            ts.estimates.emplace_back(TailEstimate{tail["alpha_hat"][i].get<double>(),
                                                   tail.at("k").at(i).get<std::size_t>(),
                                                   tail.at("n").at(i).get<std::size_t>(), *method});
          }
        }
        s.tail = std::move(ts);
      }
      for (const auto& x : block.at("extremes")) {
        const auto kind = parse_kind(x.at("kind").get<std::string>());
        if (!kind) throw Error(ErrorCode::kParseError, "unknown extreme kind");
        s.extremes.push_back({x.at("series").get<std::string>(),
                              {json_date(x.at("date")), *kind, x.at("value").get<double>(),
                               x.at("window").get<std::size_t>()}});
      }
      report.series.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return report;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  return std::nullopt;
}

Report make_report(const Analysis& analysis) {
  Report report;
  report.meta.emplace_back("t_ref", format_date(analysis.t_ref));
  report.meta.emplace_back("k_policy", analysis.tail.k_policy.describe());
  if (!analysis.extremes_note.empty()) report.meta.emplace_back("extremes_note", analysis.extremes_note);
  ReportSeries s{analysis.t_ref, analysis.dispersion, analysis.tail, {}};
  for (const auto& e : analysis.alpha_extremes) s.extremes.push_back({"alpha", e});
  for (const auto& e : analysis.variance_extremes) s.extremes.push_back({"variance", e});
  report.series.push_back(std::move(s));
  return report;
}

Report make_report(const SweepResult& sweep) {
  Report report;
  report.meta.emplace_back("universe_size", std::to_string(sweep.universe_size));
  if (sweep.first_date) report.meta.emplace_back("first_date", format_date(*sweep.first_date));
  if (sweep.last_date) report.meta.emplace_back("last_date", format_date(*sweep.last_date));
  report.meta.emplace_back("missing_data_policy", to_string(sweep.policy));
  report.meta.emplace_back("k_policy", sweep.k_policy.describe());
  for (const auto& e : sweep.entries) {
    report.series.push_back({e.t_ref, e.dispersion, e.tail, {}});
  }
  return report;
}

std::string render_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::kCsv ? render_csv(report) : render_json(report);
}

Report parse_report(std::string_view text, ReportFormat format) {
  return format == ReportFormat::kCsv ? parse_csv(text) : parse_json(text);
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  write_text_file_atomic(path, render_report(report, format));
}

Report read_report(const std::filesystem::path& path, ReportFormat format) {
  return parse_report(read_text_file(path), format);
}

std::string render_survival_points(std::span<const StepPoint> points) {
  std::string out = "z,survival\n";
  for (const auto& p : points) out += format_double(p.z) + "," + format_double(p.survival) + "\n";
  return out;
}

std::vector<StepPoint> parse_survival_points(std::string_view text) {
  std::vector<StepPoint> out;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "z,survival") bad(1, 1, "expected header 'z,survival'");
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) bad(line_no, 1, "step point needs 2 cells");
    const auto z = opt_number(cells[0], line_no, 1);
    const auto s = opt_number(cells[1], line_no, 2);
    if (!z || !s) bad(line_no, 1, "empty step point cell");
    out.push_back({*z, *s});
  }
  return out;
}

std::string render_simulation_table(std::span<const SimulationRow> rows, ReportFormat format,
                                    const std::vector<std::pair<std::string, std::string>>& meta) {
  if (format == ReportFormat::kJson) {
    ojson doc;
    doc["schema"] = "bubbles-simulation";
    doc["version"] = kReportVersion;
    ojson m = ojson::object();
    for (const auto& [k, v] : meta) m[k] = v;
    doc["meta"] = std::move(m);
    ojson arr = ojson::array();
    for (const auto& r : rows) {
      arr.push_back({{"rho", r.rho},
                     {"sigma", r.sigma},
                     {"n", r.n},
                     {"reps", r.reps},
                     {"seed", r.seed},
                     {"mean_vn", opt_json(r.mean_vn)},
                     {"se_vn", opt_json(r.se_vn)},
                     {"analytic", r.analytic},
                     {"source", r.mean_vn ? "simulated" : "analytic"},
                     {"feasible", r.feasible}});
    }
    doc["rows"] = std::move(arr);
    return doc.dump(2) + "\n";
  }
  std::string out = "# bubbles-simulation " + std::to_string(kReportVersion) + "\n";
  for (const auto& [k, v] : meta) out += "# meta " + k + "=" + v + "\n";
  out += "rho,sigma,n,reps,seed,mean_vn,se_vn,analytic,source,feasible\n";
  for (const auto& r : rows) {
    out += format_double(r.rho) + "," + format_double(r.sigma) + "," + std::to_string(r.n) + "," +
           std::to_string(r.reps) + "," + std::to_string(r.seed) + "," + opt_cell(r.mean_vn) +
           "," + opt_cell(r.se_vn) + "," + format_double(r.analytic) + "," +
           (r.mean_vn ? "simulated" : "analytic") + "," + (r.feasible ? "true" : "false") + "\n";
  }
  return out;
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move output into " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bubbles
