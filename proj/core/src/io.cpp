#include "modext/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "modext/error.hpp"

namespace modext {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json point_to_json(const Point& p, std::size_t dim) {
  json out = json::array();
  for (std::size_t i = 0; i < dim; ++i) out.push_back(p[i]);
  return out;
}

Point point_from_json(const json& j) {
  Point p{0.0, 0.0};
  if (j.is_number()) {
    p[0] = j.get<double>();
    return p;
  }
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) {
    throw ValidationError("a point must be a number or an array of 1-2 coordinates");
  }
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = j[i].get<double>();
  return p;
}

template <typename F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

json to_json(const Modulus& m) {
  switch (m.family()) {
    case Modulus::Family::power:
      return {{"family", "power"}, {"alpha", m.alpha()}, {"domain_cap", m.domain_cap()}};
    case Modulus::Family::piecewise: {
      json knots = json::array();
      for (const auto& k : m.knots()) knots.push_back({k.t, k.value});
      return {{"family", "piecewise"}, {"knots", std::move(knots)}, {"domain_cap", m.domain_cap()}};
    }
    case Modulus::Family::scaled:
      return {{"family", "scaled"}, {"scale", m.scale()}, {"inner", to_json(m.inner())}};
  }
  return {};
}

Modulus modulus_from_json(const json& j) {
  return guarded("modulus", [&] {
    const auto family = j.at("family").get<std::string>();
    if (family == "power") {
      return Modulus::power(j.at("alpha").get<double>(), j.value("domain_cap", 1.0));
    }
    if (family == "piecewise") {
      std::vector<Modulus::Knot> knots;
      for (const auto& k : j.at("knots")) knots.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
      const double cap = j.value("domain_cap", knots.empty() ? 1.0 : knots.back().t);
      return Modulus::piecewise(std::move(knots), cap);
    }
    if (family == "scaled") {
      return Modulus::scaled(j.at("scale").get<double>(), modulus_from_json(j.at("inner")));
    }
    throw ValidationError("unknown modulus family '" + family + "'");
  });
}

json to_json(const BoxDomain& d) {
  json out = json::array();
  for (const auto& ax : d.axes()) out.push_back({ax.lo, ax.hi});
  return out;
}

BoxDomain domain_from_json(const json& j) {
  return guarded("domain", [&] {
    if (j.is_array() && j.size() == 2 && j[0].is_number()) {
      return BoxDomain::interval(j[0].get<double>(), j[1].get<double>());
    }
    std::vector<Interval> axes;
    for (const auto& ax : j) axes.push_back({ax.at(0).get<double>(), ax.at(1).get<double>()});
    return BoxDomain(std::move(axes));
  });
}

json to_json(const Grid& g) { return {{"domain", to_json(g.domain())}, {"counts", g.counts()}}; }

Grid grid_from_json(const json& j) {
  return guarded("grid", [&] {
    auto domain = domain_from_json(j.at("domain"));
    const auto& counts = j.at("counts");
    std::vector<std::size_t> c = counts.is_number()
                                     ? std::vector<std::size_t>(domain.dim(), counts.get<std::size_t>())
                                     : counts.get<std::vector<std::size_t>>();
    return Grid(std::move(domain), std::move(c));
  });
}

json to_json(const FieldSample& f) {
  json out = {{"grid", to_json(f.grid())}, {"values", f.values()}};
  if (f.label()) out["label"] = *f.label();
  return out;
}

FieldSample field_from_json(const json& j) {
  return guarded("field sample", [&] {
    std::optional<std::size_t> label;
    if (j.contains("label")) label = j.at("label").get<std::size_t>();
    return FieldSample(grid_from_json(j.at("grid")), j.at("values").get<std::vector<double>>(), label);
  });
}

json to_json(const SmoothFieldSample& f) {
  json out = {{"grid", to_json(f.grid())}, {"order", f.order()}, {"jets", f.jets()}};
  if (f.label()) out["label"] = *f.label();
  return out;
}

SmoothFieldSample smooth_field_from_json(const json& j) {
  return guarded("smooth field sample", [&] {
    std::optional<std::size_t> label;
    if (j.contains("label")) label = j.at("label").get<std::size_t>();
    return SmoothFieldSample(grid_from_json(j.at("grid")),
                             j.at("jets").get<std::vector<std::vector<double>>>(),
                             j.at("order").get<std::size_t>(), label);
  });
}

json to_json(const AnchorSet& a) {
  json points = json::array();
  for (const auto& p : a.points()) points.push_back(point_to_json(p, a.domain().dim()));
  return {{"domain", to_json(a.domain())}, {"points", std::move(points)}, {"values", a.values()}};
}

AnchorSet anchors_from_json(const json& j) {
  return guarded("anchor set", [&] {
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
    return AnchorSet(domain_from_json(j.at("domain")), std::move(pts),
                     j.at("values").get<std::vector<double>>());
  });
}

json to_json(const SeriesSpec& s) {
  json out = {{"basis", to_string(s.basis)}, {"law", to_string(s.law)}, {"n_max", s.n_max},
              {"domain", {s.a, s.b}}};
  if (s.basis == Basis::faber_schauder) {
    if (s.level_heights.empty()) {
      out["holder"] = s.holder_exponent;
    } else {
      out["level_heights"] = s.level_heights;
    }
  } else {
    out["p"] = s.p;
    out["m"] = s.smooth_order;
  }
  return out;
}

SeriesSpec series_spec_from_json(const json& j) {
  return guarded("series spec", [&] {
    SeriesSpec s;
    s.basis = parse_basis(j.at("basis").get<std::string>());
    s.law = parse_law(j.value("law", std::string("gaussian")));
    s.n_max = j.at("n_max").get<std::size_t>();
    s.holder_exponent = j.value("holder", 0.5);
    s.level_heights = j.value("level_heights", std::vector<double>{});
    s.p = j.value("p", 4.0);
    s.smooth_order = j.value("m", std::size_t{0});
    const auto dom = j.value("domain", std::vector<double>{0.0, 1.0});
    if (dom.size() != 2) throw ValidationError("series domain must be [a, b]");
    s.a = dom[0];
    s.b = dom[1];
    check(s);
    return s;
  });
}

json to_json(const VerificationReport& r) {
  json witness = json::array();
  for (const auto& p : r.witness) witness.push_back({p[0], p[1]});
  json out = {{"check", r.check},
              {"pass", r.pass},
              {"worst_violation", std::isfinite(r.worst_violation) ? json(r.worst_violation) : json()},
              {"witness", std::move(witness)},
              {"tolerance", r.tolerance},
              {"checks", r.checks}};
  if (r.max_ratio) out["max_ratio"] = *r.max_ratio;
  return out;
}

VerificationReport verification_from_json(const json& j) {
  return guarded("verification report", [&] {
    VerificationReport r;
    r.check = j.at("check").get<std::string>();
    r.pass = j.at("pass").get<bool>();
    const auto& worst = j.at("worst_violation");
    r.worst_violation = worst.is_null() ? std::numeric_limits<double>::quiet_NaN() : worst.get<double>();
    for (const auto& p : j.at("witness")) r.witness.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    r.tolerance = j.at("tolerance").get<double>();
    r.checks = j.at("checks").get<std::size_t>();
    if (j.contains("max_ratio")) r.max_ratio = j.at("max_ratio").get<double>();
    return r;
  });
}

json to_json(const ModulusValidationReport& r) {
  const char* kind = r.worst_kind == ModulusValidationReport::Kind::monotonicity    ? "monotonicity"
                     : r.worst_kind == ModulusValidationReport::Kind::subadditivity ? "subadditivity"
                                                                                    : "none";
  return {{"check", "modulus_axioms"},
          {"pass", r.pass},
          {"samples", r.samples},
          {"checks", r.checks},
          {"violations", r.violations},
          {"worst_violation", r.worst_violation},
          {"worst_kind", kind},
          {"witness", {r.witness.first, r.witness.second}},
          {"tolerance", r.tolerance}};
}

json to_json(const Theorem1Config& c) {
  return {{"spec", to_json(c.spec)},
          {"modulus", to_json(c.theta)},
          {"anchor_grid", to_json(c.anchor_grid)},
          {"verify_grid", to_json(c.verify_grid)},
          {"checkpoints", c.checkpoints},
          {"trials", c.trials},
          {"seed", c.seed},
          {"M_inflation", c.m_inflation},
          {"constant", c.constant == ConstantSource::m_n ? "m_n" : "fit"}};
}

Theorem1Config theorem1_config_from_json(const json& j) {
  return guarded("theorem1 config", [&] {
    Theorem1Config c;
    c.spec = series_spec_from_json(j.at("spec"));
    c.theta = modulus_from_json(j.at("modulus"));
    c.anchor_grid = grid_from_json(j.at("anchor_grid"));
    c.verify_grid = grid_from_json(j.at("verify_grid"));
    c.checkpoints = j.at("checkpoints").get<std::vector<std::size_t>>();
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.m_inflation = j.value("M_inflation", 1.0);
    const auto source = j.value("constant", std::string("m_n"));
    if (source != "m_n" && source != "fit") throw ValidationError("constant must be 'm_n' or 'fit'");
    c.constant = source == "m_n" ? ConstantSource::m_n : ConstantSource::fit;
    return c;
  });
}

json to_json(const Theorem2Config& c) {
  return {{"spec", to_json(c.spec)},
          {"m", c.m},
          {"modulus", to_json(c.theta)},
          {"grid", to_json(c.grid)},
          {"quadrature_points", c.quadrature_points},
          {"checkpoints", c.checkpoints},
          {"trials", c.trials},
          {"seed", c.seed},
          {"reconstruction_tol", c.reconstruction_tol}};
}

Theorem2Config theorem2_config_from_json(const json& j) {
  return guarded("theorem2 config", [&] {
    Theorem2Config c;
    c.spec = series_spec_from_json(j.at("spec"));
    c.m = j.value("m", c.spec.smooth_order);
    c.theta = modulus_from_json(j.at("modulus"));
    c.grid = grid_from_json(j.at("grid"));
    c.quadrature_points = j.value("quadrature_points", std::size_t{0});
    c.checkpoints = j.at("checkpoints").get<std::vector<std::size_t>>();
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.reconstruction_tol = j.value("reconstruction_tol", 1e-7);
    return c;
  });
}

json to_json(const SimulationConfig& c) {
  return {{"spec", to_json(c.spec)}, {"modulus", to_json(c.theta)}, {"grid", to_json(c.grid)},
          {"checkpoints", c.checkpoints}, {"trials", c.trials}, {"seed", c.seed}};
}

SimulationConfig simulation_config_from_json(const json& j) {
  return guarded("simulation config", [&] {
    SimulationConfig c;
    c.spec = series_spec_from_json(j.at("spec"));
    c.theta = modulus_from_json(j.at("modulus"));
    c.grid = grid_from_json(j.at("grid"));
    c.checkpoints = j.at("checkpoints").get<std::vector<std::size_t>>();
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
  });
}

void write_csv(std::ostream& out, const FieldSample& f) {
  const std::size_t dim = f.grid().dim();
  out << (dim == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& p = f.grid().point(i);
    out << fmt(p[0]) << ',';
    if (dim == 2) out << fmt(p[1]) << ',';
    out << fmt(f[i]) << '\n';
  }
}

void write_csv(std::ostream& out, const SmoothFieldSample& f) {
  out << "x";
  for (std::size_t l = 0; l < f.jets().size(); ++l) out << ",jet" << l;
  out << '\n';
  for (std::size_t i = 0; i < f.grid().size(); ++i) {
    out << fmt(f.grid().point(i)[0]);
    for (const auto& row : f.jets()) out << ',' << fmt(row[i]);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const AnchorSet& a) {
  const std::size_t dim = a.domain().dim();
  out << (dim == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << fmt(a.points()[i][0]) << ',';
    if (dim == 2) out << fmt(a.points()[i][1]) << ',';
    out << fmt(a.values()[i]) << '\n';
  }
}

AnchorSet read_anchors_csv(std::istream& in, const BoxDomain& domain) {
  const std::size_t dim = domain.dim();
  std::vector<Point> pts;
  std::vector<double> vals;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      while (first < last && *first == ' ') ++first;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{}) {
        numeric = false;
        break;
      }
      cells.push_back(v);
    }
    if (!numeric) {
      if (pts.empty() && vals.empty()) continue;  // header
      throw ValidationError("anchor CSV line " + std::to_string(line_no) + " is not numeric");
    }
    if (cells.size() != dim + 1) {
      throw ValidationError("anchor CSV line " + std::to_string(line_no) + " needs " +
                            std::to_string(dim + 1) + " columns");
    }
    Point p{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) p[i] = cells[i];
    pts.push_back(p);
    vals.push_back(cells[dim]);
  }
  return AnchorSet(domain, std::move(pts), std::move(vals));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace modext
