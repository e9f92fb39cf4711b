#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modext/extension.hpp"

namespace modext {

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  /// All hard (per-path, deterministic) assertions held for this trial.
  bool ok = true;
  std::string failure;
  /// metrics[c][m]: value of metric m at checkpoint c.
  std::vector<std::vector<double>> metrics;
  std::map<std::string, double> scalars;
  std::vector<VerificationReport> verifications;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;

  friend bool operator==(const Quartiles&, const Quartiles&) = default;
};

struct ExperimentReport {
  std::string kind;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<std::string> metric_names;
  std::vector<TrialRecord> trials;

  /// summaries[c][m]: quartiles across trials.
  std::vector<std::vector<Quartiles>> summaries;
  std::map<std::string, double> pass_rates;
  std::map<std::string, double> aggregate_scalars;
  /// Statistical diagnostics (e.g. "median decreasing"); not hard assertions.
  std::map<std::string, bool> properties;
  bool hard_pass = true;

  [[nodiscard]] std::size_t metric_index(const std::string& name) const;
  /// Median of metric `name` at every checkpoint.
  [[nodiscard]] std::vector<double> medians(const std::string& name) const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Linear-interpolation quartiles (Hyndman-Fan type 7). Empty input gives zeros.
[[nodiscard]] Quartiles quartiles(std::vector<double> values);

/// Fills summaries, pass_rates and hard_pass from the trial records.
void aggregate(ExperimentReport& report);

enum class ReportFormat { json, csv };
[[nodiscard]] ReportFormat parse_format(const std::string& name);

[[nodiscard]] nlohmann::json report_to_json(const ExperimentReport& report);
[[nodiscard]] ExperimentReport report_from_json(const nlohmann::json& j);

/// JSON: the nested report. CSV: '#'-prefixed config/seed lines, a header,
/// then one row per (trial, checkpoint, metric).
[[nodiscard]] std::string render_report(const ExperimentReport& report, ReportFormat format);
/// Throws IoError naming `path` on failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& path,
                  ReportFormat format);

}  // namespace modext
