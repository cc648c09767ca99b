#include "sealoss/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;
using nlohmann::json;

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::Vertical: return "vertical";
    case Polarization::Horizontal: return "horizontal";
    case Polarization::Circular: return "circular";
  }
  return "vertical";
}

Polarization parse_polarization(std::string_view name) {
  if (name == "vertical") return Polarization::Vertical;
  if (name == "horizontal") return Polarization::Horizontal;
  if (name == "circular") return Polarization::Circular;
  fail(ErrorCode::ConfigError, "unknown polarization '" + std::string(name) + "'");
}

std::string_view to_string(RoughnessModel m) {
  return m == RoughnessModel::Ament ? "ament" : "miller_brown_vegh";
}

RoughnessModel parse_roughness_model(std::string_view name) {
  if (name == "miller_brown_vegh") return RoughnessModel::MillerBrownVegh;
  if (name == "ament") return RoughnessModel::Ament;
  fail(ErrorCode::ConfigError, "unknown roughness model '" + std::string(name) + "'");
}

namespace {

// Reads optional members of one JSON object and rejects unknown keys.
class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) fail(ErrorCode::ConfigError, path_ + " must be an object");
  }
  ~Section() = default;

  void number(const char* key, double& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    const json& v = doc_.at(key);
    if (!v.is_number()) fail(ErrorCode::ConfigError, where(key) + " must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(ErrorCode::ConfigError, where(key) + " must be finite");
  }
  void integer(const char* key, std::optional<int>& out) {
    seen_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) return;
    if (!doc_.at(key).is_number_integer()) fail(ErrorCode::ConfigError, where(key) + " must be an integer");
    out = doc_.at(key).get<int>();
  }
  void optional_number(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) return;
    double v = 0.0;
    number(key, v);
    out = v;
  }
  void boolean(const char* key, bool& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    if (!doc_.at(key).is_boolean()) fail(ErrorCode::ConfigError, where(key) + " must be a boolean");
    out = doc_.at(key).get<bool>();
  }
  void string(const char* key, std::string& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    if (!doc_.at(key).is_string()) fail(ErrorCode::ConfigError, where(key) + " must be a string");
    out = doc_.at(key).get<std::string>();
  }
  const json* child(const char* key) {
    seen_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) return nullptr;
    return &doc_.at(key);
  }
  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) fail(ErrorCode::ConfigError, "unknown key " + where(key.c_str()));
    }
  }
  [[nodiscard]] std::string where(const char* key) const { return path_ + "." + key; }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

}  // namespace

CampaignConfig parse_config(const json& doc) {
  CampaignConfig cfg;
  Section root(doc, "config");
  root.string("name", cfg.name);
  std::string description;
  root.string("description", description);

  if (const json* radio = root.child("radio")) {
    Section s(*radio, "radio");
    s.number("frequency_hz", cfg.radio.frequency);
    s.number("tx_power_dbm", cfg.radio.tx_power);
    s.number("tx_antenna_gain_dbi", cfg.radio.tx_antenna_gain);
    s.number("rx_antenna_gain_dbi", cfg.radio.rx_antenna_gain);
    s.number("polarization_loss_db", cfg.radio.polarization_loss);
    s.number("rx_sensitivity_dbm", cfg.radio.rx_sensitivity);
    s.integer("spreading_factor", cfg.radio.spreading_factor);
    s.optional_number("bandwidth_hz", cfg.radio.bandwidth);
    s.finish();
  }
  if (const json* bs = root.child("bs_position")) {
    Section s(*bs, "bs_position");
    s.number("lat", cfg.bs_position.latitude);
    s.number("lon", cfg.bs_position.longitude);
    s.finish();
  }
  if (const json* geo = root.child("geometry")) {
    Section s(*geo, "geometry");
    s.number("tx_height_m", cfg.tx_height);
    s.number("rx_height_m", cfg.rx_height);
    s.number("earth_radius_m", cfg.earth.true_radius);
    s.number("effective_radius_factor", cfg.earth.effective_radius_factor);
    s.finish();
  }
  if (const json* sea = root.child("sea_state")) {
    Section s(*sea, "sea_state");
    s.number("sigma_h_m", cfg.sea.sigma_h);
    s.number("beta_0_rad", cfg.sea.beta_0);
    s.number("relative_permittivity", cfg.sea.relative_permittivity);
    s.number("conductivity_s_per_m", cfg.sea.conductivity);
    s.finish();
  }
  if (const json* refl = root.child("reflection")) {
    Section s(*refl, "reflection");
    std::string pol(to_string(cfg.polarization));
    std::string model(to_string(cfg.reflection.roughness_model));
    s.string("polarization", pol);
    s.string("roughness_model", model);
    s.boolean("roughness", cfg.reflection.roughness);
    s.boolean("shadowing", cfg.reflection.shadowing);
    s.boolean("divergence", cfg.reflection.divergence);
    s.finish();
    cfg.polarization = parse_polarization(pol);
    cfg.reflection.roughness_model = parse_roughness_model(model);
  }
  if (const json* itu = root.child("itu")) {
    Section s(*itu, "itu");
    s.number("time_percentage", cfg.itu.time_percentage);
    s.number("median_effective_radius_factor", cfg.itu.median_effective_radius_factor);
    s.finish();
  }
  if (const json* ld = root.child("log_distance")) {
    Section s(*ld, "log_distance");
    LogDistanceParams p;
    s.number("n", p.n);
    s.number("l_p0_db", p.l_p0);
    s.number("d0_m", p.d_0);
    s.finish();
    cfg.log_distance = p;
  }
  if (const json* an = root.child("analysis")) {
    Section s(*an, "analysis");
    s.number("fit_reference_distance_m", cfg.analysis.fit_reference_distance);
    s.number("min_distance_m", cfg.analysis.min_distance);
    s.finish();
  }
  if (const json* zones = root.child("exclusion_zones")) {
    if (!zones->is_array()) fail(ErrorCode::ConfigError, "exclusion_zones must be an array");
    for (std::size_t i = 0; i < zones->size(); ++i) {
      const std::string path = "exclusion_zones[" + std::to_string(i) + "]";
      Section s((*zones)[i], path);
      ExclusionZone z;
      std::string kind = "distance";
      s.string("kind", kind);
      s.string("label", z.label);
      if (kind == "distance") {
        s.number("begin_m", z.begin);
        s.number("end_m", z.end);
      } else if (kind == "time") {
        z.kind = ExclusionZone::Kind::Time;
        std::string begin;
        std::string end;
        s.string("begin", begin);
        s.string("end", end);
        const auto b = parse_iso8601_utc(begin);
        const auto e = parse_iso8601_utc(end);
        if (!b || !e) fail(ErrorCode::ConfigError, path + " needs ISO-8601 begin/end");
        z.begin = *b;
        z.end = *e;
      } else {
        fail(ErrorCode::ConfigError, path + ".kind must be 'distance' or 'time'");
      }
      s.finish();
      cfg.exclusion_zones.push_back(std::move(z));
    }
  }
  root.finish();
  cfg.validate();
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const LogDistanceParams& p) {
  return {{"n", p.n}, {"l_p0_db", p.l_p0}, {"d0_m", p.d_0}};
}

json to_json(const CampaignConfig& cfg) {
  json radio = {
      {"frequency_hz", cfg.radio.frequency},
      {"tx_power_dbm", cfg.radio.tx_power},
      {"tx_antenna_gain_dbi", cfg.radio.tx_antenna_gain},
      {"rx_antenna_gain_dbi", cfg.radio.rx_antenna_gain},
      {"polarization_loss_db", cfg.radio.polarization_loss},
      {"rx_sensitivity_dbm", cfg.radio.rx_sensitivity},
      {"spreading_factor", cfg.radio.spreading_factor ? json(*cfg.radio.spreading_factor) : json()},
      {"bandwidth_hz", cfg.radio.bandwidth ? json(*cfg.radio.bandwidth) : json()},
  };
  json zones = json::array();
  for (const auto& z : cfg.exclusion_zones) {
    if (z.kind == ExclusionZone::Kind::Distance) {
      zones.push_back({{"kind", "distance"}, {"label", z.label}, {"begin_m", z.begin}, {"end_m", z.end}});
    } else {
      zones.push_back({{"kind", "time"},
                       {"label", z.label},
                       {"begin", format_iso8601_utc(z.begin)},
                       {"end", format_iso8601_utc(z.end)}});
    }
  }
  return {
      {"name", cfg.name},
      {"radio", radio},
      {"bs_position", {{"lat", cfg.bs_position.latitude}, {"lon", cfg.bs_position.longitude}}},
      {"geometry",
       {{"tx_height_m", cfg.tx_height},
        {"rx_height_m", cfg.rx_height},
        {"earth_radius_m", cfg.earth.true_radius},
        {"effective_radius_factor", cfg.earth.effective_radius_factor}}},
      {"sea_state",
       {{"sigma_h_m", cfg.sea.sigma_h},
        {"beta_0_rad", cfg.sea.beta_0},
        {"relative_permittivity", cfg.sea.relative_permittivity},
        {"conductivity_s_per_m", cfg.sea.conductivity}}},
      {"reflection",
       {{"polarization", to_string(cfg.polarization)},
        {"roughness_model", to_string(cfg.reflection.roughness_model)},
        {"roughness", cfg.reflection.roughness},
        {"shadowing", cfg.reflection.shadowing},
        {"divergence", cfg.reflection.divergence}}},
      {"itu",
       {{"time_percentage", cfg.itu.time_percentage},
        {"median_effective_radius_factor", cfg.itu.median_effective_radius_factor}}},
      {"log_distance", cfg.log_distance ? to_json(*cfg.log_distance) : json()},
      {"analysis",
       {{"fit_reference_distance_m", cfg.analysis.fit_reference_distance},
        {"min_distance_m", cfg.analysis.min_distance}}},
      {"exclusion_zones", zones},
  };
}

}  // namespace sealoss
