#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "modext/experiments.hpp"
#include "modext/extension.hpp"
#include "modext/field.hpp"
#include "modext/geometry.hpp"
#include "modext/modulus.hpp"
#include "modext/series.hpp"

namespace modext {

// JSON schemas:
//   Modulus     {"family":"power","alpha":0.5,"domain_cap":1.0}
//               {"family":"piecewise","knots":[[0,0],[1,1]],"domain_cap":1.0}
//               {"family":"scaled","scale":2.0,"inner":{...}}
//   BoxDomain   [[a1,b1],...]   (a bare [a,b] is accepted for d = 1)
//   Grid        {"domain":[[a,b]],"counts":[n]}
//   SeriesSpec  {"basis":"trig_smooth","law":"gaussian","p":4.0,"n_max":256,"m":1,"domain":[0,1]}
//               {"basis":"faber_schauder","law":"gaussian","holder":0.5,"n_max":511,"domain":[0,1]}

nlohmann::json to_json(const Modulus& m);
Modulus modulus_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoxDomain& d);
BoxDomain domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FieldSample& f);
FieldSample field_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SmoothFieldSample& f);
SmoothFieldSample smooth_field_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnchorSet& a);
AnchorSet anchors_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SeriesSpec& s);
SeriesSpec series_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& r);
VerificationReport verification_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModulusValidationReport& r);

nlohmann::json to_json(const Theorem1Config& c);
Theorem1Config theorem1_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Theorem2Config& c);
Theorem2Config theorem2_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimulationConfig& c);
SimulationConfig simulation_config_from_json(const nlohmann::json& j);

/// CSV with columns (x[,y],value).
void write_csv(std::ostream& out, const FieldSample& f);
/// CSV with columns (x,jet0,...,jet{m+1}).
void write_csv(std::ostream& out, const SmoothFieldSample& f);
/// CSV with columns (x[,y],value).
void write_csv(std::ostream& out, const AnchorSet& a);
/// Reads (coordinates..., value) rows; a non-numeric first line is a header.
AnchorSet read_anchors_csv(std::istream& in, const BoxDomain& domain);

/// Throws IoError naming the path when it cannot be read or parsed.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace modext
