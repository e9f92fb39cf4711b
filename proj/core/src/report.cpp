#include "modext/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "modext/error.hpp"
#include "modext/io.hpp"

namespace modext {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::size_t ExperimentReport::metric_index(const std::string& name) const {
  const auto it = std::find(metric_names.begin(), metric_names.end(), name);
  if (it == metric_names.end()) throw ParameterError("report has no metric '" + name + "'");
  return static_cast<std::size_t>(it - metric_names.begin());
}

std::vector<double> ExperimentReport::medians(const std::string& name) const {
  const std::size_t m = metric_index(name);
  std::vector<double> out;
  out.reserve(summaries.size());
  for (const auto& row : summaries) out.push_back(row.at(m).median);
  return out;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

void aggregate(ExperimentReport& report) {
  const std::size_t cps = report.checkpoints.size();
  const std::size_t ms = report.metric_names.size();
  report.summaries.assign(cps, std::vector<Quartiles>(ms));
  for (std::size_t c = 0; c < cps; ++c) {
    for (std::size_t m = 0; m < ms; ++m) {
      std::vector<double> column;
      for (const auto& rec : report.trials) {
        if (rec.failure.empty()) column.push_back(rec.metrics.at(c).at(m));
      }
      report.summaries[c][m] = quartiles(std::move(column));
    }
  }

  report.pass_rates.clear();
  std::map<std::string, std::size_t> passes;
  std::size_t ok = 0;
  for (const auto& rec : report.trials) {
    if (rec.ok) ++ok;
    for (const auto& v : rec.verifications) passes[v.check] += v.pass ? 1 : 0;
  }
  const double n = static_cast<double>(report.trials.size());
  for (const auto& [name, count] : passes) {
    report.pass_rates[name] = n > 0 ? static_cast<double>(count) / n : 1.0;
  }
  report.pass_rates["trial_ok"] = n > 0 ? static_cast<double>(ok) / n : 1.0;
  report.hard_pass = ok == report.trials.size();
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ParameterError("unknown report format '" + name + "' (expected json or csv)");
}

json report_to_json(const ExperimentReport& report) {
  json trials = json::array();
  for (const auto& rec : report.trials) {
    json metrics = json::array();
    for (const auto& row : rec.metrics) {
      json r = json::array();
      for (double v : row) r.push_back(number(v));
      metrics.push_back(std::move(r));
    }
    json scalars = json::object();
    for (const auto& [k, v] : rec.scalars) scalars[k] = number(v);
    json checks = json::array();
    for (const auto& v : rec.verifications) checks.push_back(to_json(v));
    trials.push_back({{"trial", rec.trial},
                      {"seed", rec.seed},
                      {"ok", rec.ok},
                      {"failure", rec.failure},
                      {"metrics", std::move(metrics)},
                      {"scalars", std::move(scalars)},
                      {"verifications", std::move(checks)}});
  }
  json summaries = json::array();
  for (const auto& row : report.summaries) {
    json r = json::array();
    for (const auto& q : row) {
      r.push_back({{"q1", number(q.q1)}, {"median", number(q.median)}, {"q3", number(q.q3)}});
    }
    summaries.push_back(std::move(r));
  }
  json aggregate_scalars = json::object();
  for (const auto& [k, v] : report.aggregate_scalars) aggregate_scalars[k] = number(v);
  return {{"kind", report.kind},
          {"config", report.config},
          {"seed", report.seed},
          {"checkpoints", report.checkpoints},
          {"metric_names", report.metric_names},
          {"trials", std::move(trials)},
          {"summaries", std::move(summaries)},
          {"pass_rates", report.pass_rates},
          {"aggregate_scalars", std::move(aggregate_scalars)},
          {"properties", report.properties},
          {"hard_pass", report.hard_pass}};
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  r.kind = j.at("kind").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.checkpoints = j.at("checkpoints").get<std::vector<std::size_t>>();
  r.metric_names = j.at("metric_names").get<std::vector<std::string>>();
  for (const auto& t : j.at("trials")) {
    TrialRecord rec;
    rec.trial = t.at("trial").get<std::size_t>();
    rec.seed = t.at("seed").get<std::uint64_t>();
    rec.ok = t.at("ok").get<bool>();
    rec.failure = t.at("failure").get<std::string>();
    for (const auto& row : t.at("metrics")) {
      std::vector<double> values;
      for (const auto& v : row) values.push_back(number(v));
      rec.metrics.push_back(std::move(values));
    }
    for (const auto& [k, v] : t.at("scalars").items()) rec.scalars[k] = number(v);
    for (const auto& v : t.at("verifications")) rec.verifications.push_back(verification_from_json(v));
    r.trials.push_back(std::move(rec));
  }
  for (const auto& row : j.at("summaries")) {
    std::vector<Quartiles> qs;
    for (const auto& q : row) qs.push_back({number(q.at("q1")), number(q.at("median")), number(q.at("q3"))});
    r.summaries.push_back(std::move(qs));
  }
  r.pass_rates = j.at("pass_rates").get<std::map<std::string, double>>();
  for (const auto& [k, v] : j.at("aggregate_scalars").items()) r.aggregate_scalars[k] = number(v);
  r.properties = j.at("properties").get<std::map<std::string, bool>>();
  r.hard_pass = j.at("hard_pass").get<bool>();
  return r;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(report).dump(2) + "\n";

  std::ostringstream out;
  out << "# kind=" << report.kind << "\n";
  out << "# seed=" << report.seed << "\n";
  out << "# config=" << report.config.dump() << "\n";
  out << "trial,checkpoint,metric,value\n";
  for (const auto& rec : report.trials) {
    for (std::size_t c = 0; c < report.checkpoints.size(); ++c) {
      for (std::size_t m = 0; m < report.metric_names.size(); ++m) {
        out << rec.trial << ',' << report.checkpoints[c] << ',' << report.metric_names[m] << ','
            << format_double(rec.metrics.at(c).at(m)) << '\n';
      }
    }
  }
  return out.str();
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  write_text_file(path, render_report(report, format));
}

}  // namespace modext
