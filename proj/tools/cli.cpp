#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "modext/error.hpp"
#include "modext/experiments.hpp"
#include "modext/extension.hpp"
#include "modext/io.hpp"
#include "modext/report.hpp"
#include "modext/seminorm.hpp"

namespace modext::cli {

namespace {

using nlohmann::json;

struct Invocation {
  std::string config;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::size_t parallel = 1;
};

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string point_str(const Point& p, std::size_t dim) {
  return dim == 1 ? "(" + num(p[0]) + ")" : "(" + num(p[0]) + ", " + num(p[1]) + ")";
}

// Small key/value reports (validate-modulus, seminorm) in CSV form.
std::string flat_csv(const json& j) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : j.items()) s += k + "," + v.dump() + "\n";
  return s;
}

void emit(const Invocation& inv, const json& payload, const std::string& csv_text) {
  if (inv.out.empty()) return;
  write_text_file(inv.out, parse_format(inv.format) == ReportFormat::json ? payload.dump(2) + "\n" : csv_text);
}

int validate_modulus_cmd(const Invocation& inv, std::ostream& out) {
  const json cfg = read_json_file(inv.config);
  const Modulus theta = modulus_from_json(cfg.at("modulus"));
  const auto samples = cfg.value("samples", std::size_t{1000});
  const double tol = cfg.value("tol", -1.0);
  const auto rep = validate(theta, samples, tol);
  const json j = to_json(rep);
  emit(inv, j, flat_csv(j));
  if (rep.pass) {
    out << "pass: " << rep.checks << " checks, worst excess " << num(rep.worst_violation) << "\n";
    return kOk;
  }
  out << "fail: " << rep.violations << " violations, worst " << j["worst_kind"].get<std::string>()
      << " at (" << num(rep.witness.first) << ", " << num(rep.witness.second) << ")\n";
  return kVerificationFailed;
}

int seminorm_cmd(const Invocation& inv, std::ostream& out) {
  const json cfg = read_json_file(inv.config);
  const Modulus theta = modulus_from_json(cfg.at("modulus"));
  const FieldSample f = field_from_json(cfg.at("field"));
  std::optional<std::size_t> budget;
  if (cfg.contains("pair_budget")) budget = cfg.at("pair_budget").get<std::size_t>();
  const auto origin = cfg.value("origin_index", std::size_t{0});
  const auto b = m_n(f, theta, budget);
  const double tilde = m_n_tilde(f, theta, origin, budget);
  const json j = {{"sup_norm", b.sup_norm},
                  {"theta_seminorm", b.theta_seminorm},
                  {"M_n", b.total},
                  {"M_n_tilde", tilde},
                  {"witness", {b.witness.first, b.witness.second}}};
  emit(inv, j, flat_csv(j));
  out << "pass: seminorm " << num(b.theta_seminorm) << " at pair (" << b.witness.first << ", "
      << b.witness.second << "), M_n " << num(b.total) << "\n";
  return kOk;
}

int extend_cmd(const Invocation& inv, std::ostream& out) {
  const json cfg = read_json_file(inv.config);
  const Modulus theta = modulus_from_json(cfg.at("modulus"));
  std::optional<AnchorSet> anchors;
  if (cfg.contains("anchors_csv")) {
    std::ifstream in(cfg.at("anchors_csv").get<std::string>());
    if (!in) throw IoError("cannot open '" + cfg.at("anchors_csv").get<std::string>() + "' for reading");
    anchors.emplace(read_anchors_csv(in, domain_from_json(cfg.at("domain"))));
  } else {
    anchors.emplace(anchors_from_json(cfg.at("anchors")));
  }
  std::optional<double> constant;
  if (cfg.contains("M")) constant = cfg.at("M").get<double>();
  const double fitted = fit_constant(*anchors, theta);
  const std::size_t dim = anchors->domain().dim();

  std::optional<ExtensionModel> model;
  try {
    model.emplace(ExtensionModel::build(*anchors, theta, constant));
  } catch (const ConsistencyError& e) {
    const auto [i, j] = e.witness();
    out << "fail: M below fitted constant " << num(fitted) << "; witness anchors " << i << " "
        << point_str(anchors->points()[i], dim) << " and " << j << " "
        << point_str(anchors->points()[j], dim) << "\n";
    return kVerificationFailed;
  }

  const Grid probes = cfg.contains("probe_grid")
                          ? grid_from_json(cfg.at("probe_grid"))
                          : Grid(anchors->domain(), std::vector<std::size_t>(dim, dim == 1 ? 1025 : 65));
  const double scale = std::max(1.0, model->scale());
  std::vector<VerificationReport> checks;
  checks.push_back(verify_restriction(*model, 1e-12 * scale));
  checks.push_back(verify_sandwich(*model, probes.points(), 1e-9 * model->scale()));
  checks.push_back(verify_modulus_all_pairs(*model, probes.points(), 1e-9 * model->scale()));
  const auto values = model->eval(probes.points());
  const bool pass = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });

  json verifications = json::array();
  for (const auto& c : checks) verifications.push_back(to_json(c));
  const json j = {{"constant", model->constant()},
                  {"fitted_constant", fitted},
                  {"probe_grid", to_json(probes)},
                  {"values", values},
                  {"verifications", std::move(verifications)},
                  {"pass", pass}};
  std::ostringstream csv;
  write_csv(csv, FieldSample(probes, values));
  emit(inv, j, csv.str());

  if (pass) {
    out << "pass: M " << num(model->constant()) << " (fitted " << num(fitted) << "), "
        << probes.size() << " probes verified\n";
    return kOk;
  }
  for (const auto& c : checks) {
    if (c.pass) continue;
    out << "fail: " << c.check << " violated by " << num(c.worst_violation);
    for (const auto& p : c.witness) out << " " << point_str(p, dim);
    out << "\n";
    break;
  }
  return kVerificationFailed;
}

int report_summary(const ExperimentReport& report, const Invocation& inv, std::ostream& out) {
  if (!inv.out.empty()) write_report(report, inv.out, parse_format(inv.format));
  std::size_t failed = 0;
  for (const auto& t : report.trials) failed += t.ok ? 0 : 1;
  out << (report.hard_pass ? "pass: " : "fail: ") << report.kind << ", " << report.trials.size()
      << " trials, " << failed << " failed";
  for (const auto& [name, holds] : report.properties) out << ", " << name << "=" << (holds ? "yes" : "no");
  out << "\n";
  return report.hard_pass ? kOk : kVerificationFailed;
}

template <typename Config>
Config load(const Invocation& inv, Config (*parse)(const json&)) {
  Config cfg = parse(read_json_file(inv.config));
  if (inv.seed) cfg.seed = *inv.seed;
  return cfg;
}

RunOptions run_options(const Invocation& inv) {
  RunOptions o;
  o.parallel = inv.parallel;
  return o;
}

int simulate_cmd(const Invocation& inv, std::ostream& out) {
  const auto cfg = load(inv, simulation_config_from_json);
  return report_summary(run_simulation(cfg, run_options(inv)), inv, out);
}

int theorem1_cmd(const Invocation& inv, std::ostream& out) {
  const auto cfg = load(inv, theorem1_config_from_json);
  return report_summary(run_theorem1(cfg, run_options(inv)), inv, out);
}

int theorem2_cmd(const Invocation& inv, std::ostream& out) {
  const auto cfg = load(inv, theorem2_config_from_json);
  return report_summary(run_theorem2(cfg, run_options(inv)), inv, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random fields with a modulus of continuity: extension, simulation and checks", "modext"};
  app.require_subcommand(1, 1);
  Invocation inv;

  using Handler = int (*)(const Invocation&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
      {"validate-modulus", "Check the modulus axioms on a sample lattice", validate_modulus_cmd},
      {"seminorm", "theta-seminorm and M_n of a sampled field", seminorm_cmd},
      {"extend", "Build and verify the inf-convolution extension of anchor data", extend_cmd},
      {"simulate", "Simulate series iterates and record M_n and errors", simulate_cmd},
      {"theorem1", "Run the extension pipeline for a continuous series", theorem1_cmd},
      {"theorem2", "Run the smooth pipeline for a trigonometric series", theorem2_cmd},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, handler] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out, "Output path for the full report");
    sub->add_option("--format", inv.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", inv.seed, "Override the config seed");
    sub->add_option("--parallel", inv.parallel, "Worker threads")->check(CLI::PositiveNumber);
    subs.emplace_back(sub, handler);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << active->help();
    return kUsage;
  }

  for (const auto& [sub, handler] : subs) {
    if (!sub->parsed()) continue;
    try {
      return handler(inv, out);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const nlohmann::json::exception& e) {
      err << "error: malformed config: " << e.what() << "\n";
      return kUsage;
    }
  }
  err << app.help();
  return kUsage;
}

}  // namespace modext::cli
