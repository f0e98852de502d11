#include "subwave/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace subwave {

namespace {
using nlohmann::json;

void check_range(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(ConfigErrorCode::out_of_range, key, "config value out of range: " + key + " (" + what + ")");
}

double get_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw ConfigError(ConfigErrorCode::malformed_file, key, "config key is not a number: " + key);
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.at(key).is_number_integer())
    throw ConfigError(ConfigErrorCode::malformed_file, key, "config key is not an integer: " + key);
  return j.at(key).get<int>();
}
}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(ConfigErrorCode::malformed_file, "", std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError(ConfigErrorCode::malformed_file, "", "config root must be an object");

  static const std::vector<std::string> known = {
      "scenario",     "bulk_radius",    "defect_radius",       "half_width",
      "defect_separation", "alpha_points", "fourier_terms",   "panels_per_disk",
      "band_truncation_width", "output_dir", "disks"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(ConfigErrorCode::unknown_key, key, "unknown config key: " + key);
  }

  ScenarioConfig c;
  if (!j.contains("scenario"))
    throw ConfigError(ConfigErrorCode::missing_key, "scenario", "config is missing required key: scenario");
  try {
    c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigErrorCode::unknown_scenario, "scenario", e.what());
  } catch (const json::exception&) {
    throw ConfigError(ConfigErrorCode::malformed_file, "scenario", "config key is not a string: scenario");
  }

  if (j.contains("bulk_radius")) c.bulk_radius = get_number(j, "bulk_radius");
  if (j.contains("defect_radius")) c.defect_radius = get_number(j, "defect_radius");
  if (j.contains("half_width")) c.half_width = get_int(j, "half_width");
  if (j.contains("defect_separation")) c.defect_separation = get_int(j, "defect_separation");
  if (j.contains("alpha_points")) c.alpha_points = get_int(j, "alpha_points");
  if (j.contains("fourier_terms")) c.fourier_terms = get_int(j, "fourier_terms");
  if (j.contains("panels_per_disk")) c.panels_per_disk = get_int(j, "panels_per_disk");
  if (j.contains("band_truncation_width")) c.band_truncation_width = get_int(j, "band_truncation_width");
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string())
      throw ConfigError(ConfigErrorCode::malformed_file, "output_dir", "config key is not a string: output_dir");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("disks")) {
    try {
      for (const auto& dj : j.at("disks"))
        c.custom_disks.push_back({dj.at("index").get<int>(),
                                  {dj.at("cx").get<double>(), dj.at("cy").get<double>()},
                                  dj.at("r").get<double>()});
    } catch (const json::exception& e) {
      throw ConfigError(ConfigErrorCode::malformed_file, "disks",
                        std::string("malformed disk entry: ") + e.what());
    }
  }

  if (c.scenario == Scenario::two_defect && !j.contains("defect_separation"))
    throw ConfigError(ConfigErrorCode::missing_key, "defect_separation",
                      "two_defect scenario requires key: defect_separation");
  if (c.scenario == Scenario::custom && c.custom_disks.empty())
    throw ConfigError(ConfigErrorCode::missing_key, "disks", "custom scenario requires key: disks");

  check_range(c.alpha_points >= 2, "alpha_points", ">= 2");
  check_range(c.fourier_terms >= 1, "fourier_terms", ">= 1");
  check_range(c.panels_per_disk >= 8, "panels_per_disk", ">= 8");
  check_range(c.panels_per_disk % 2 == 0, "panels_per_disk", "even");
  check_range(c.half_width >= 1 || c.scenario == Scenario::ssh || c.scenario == Scenario::custom,
              "half_width", ">= 1");
  check_range(c.half_width >= 0, "half_width", ">= 0");
  check_range(c.bulk_radius > 0 && c.bulk_radius < 0.5, "bulk_radius", "(0, 0.5)");
  check_range(c.defect_radius > 0 && c.defect_radius < 0.5, "defect_radius", "(0, 0.5)");
  check_range(c.band_truncation_width >= 0, "band_truncation_width", ">= 0");
  if (c.scenario == Scenario::two_defect)
    check_range(c.defect_separation >= 1 && c.defect_separation % 2 == 1, "defect_separation",
                "positive odd");
  return c;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorCode::malformed_file, "", "cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

std::string emit_config(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["bulk_radius"] = c.bulk_radius;
  j["defect_radius"] = c.defect_radius;
  j["half_width"] = c.half_width;
  j["defect_separation"] = c.defect_separation;
  j["alpha_points"] = c.alpha_points;
  j["fourier_terms"] = c.fourier_terms;
  j["panels_per_disk"] = c.panels_per_disk;
  j["band_truncation_width"] = c.band_truncation_width;
  j["output_dir"] = c.output_dir;
  if (!c.custom_disks.empty()) {
    j["disks"] = json::array();
    for (const Disk& d : c.custom_disks)
      j["disks"].push_back({{"index", d.index}, {"cx", d.center.x()}, {"cy", d.center.y()}, {"r", d.radius}});
  }
  return j.dump(2);
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  auto disk_eq = [](const Disk& x, const Disk& y) {
    return x.index == y.index && x.center == y.center && x.radius == y.radius;
  };
  if (a.custom_disks.size() != b.custom_disks.size()) return false;
  for (std::size_t i = 0; i < a.custom_disks.size(); ++i)
    if (!disk_eq(a.custom_disks[i], b.custom_disks[i])) return false;
  return a.scenario == b.scenario && a.bulk_radius == b.bulk_radius &&
         a.defect_radius == b.defect_radius && a.half_width == b.half_width &&
         a.defect_separation == b.defect_separation && a.alpha_points == b.alpha_points &&
         a.fourier_terms == b.fourier_terms && a.panels_per_disk == b.panels_per_disk &&
         a.band_truncation_width == b.band_truncation_width && a.output_dir == b.output_dir;
}

}  // namespace subwave
