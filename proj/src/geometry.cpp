#include "subwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace subwave {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::vector<Disk> sorted_by_height(std::vector<Disk> disks) {
  std::stable_sort(disks.begin(), disks.end(),
                   [](const Disk& a, const Disk& b) { return a.center.y() < b.center.y(); });
  return disks;
}
}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::uniform: return "uniform";
    case Scenario::single_defect: return "single_defect";
    case Scenario::two_defect: return "two_defect";
    case Scenario::ssh: return "ssh";
    case Scenario::custom: return "custom";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "uniform") return Scenario::uniform;
  if (name == "single_defect") return Scenario::single_defect;
  if (name == "two_defect") return Scenario::two_defect;
  if (name == "ssh") return Scenario::ssh;
  if (name == "custom") return Scenario::custom;
  throw std::invalid_argument("unknown scenario: " + name);
}

int ResonatorChain::position_of(int label) const {
  for (int i = 0; i < size(); ++i)
    if (disks[i].index == label) return i;
  return -1;
}

double ResonatorChain::mirror_axis() const {
  if (disks.empty()) return 0.0;
  return 0.5 * (disks.front().center.y() + disks.back().center.y());
}

ResonatorChain build_scenario(const ScenarioConfig& config) {
  require(config.half_width >= 0, "half_width must be >= 0");
  require(config.bulk_radius > 0, "bulk_radius must be positive");
  require(config.bulk_radius < 0.5, "bulk_radius must be < 0.5 (disk touches strip wall)");

  ResonatorChain chain;
  chain.scenario_name = to_string(config.scenario);
  const double cx = 0.5;

  auto uniform_disks = [&] {
    std::vector<Disk> ds;
    for (int n = -config.half_width; n <= config.half_width; ++n)
      ds.push_back({n, {cx, n + 0.5}, config.bulk_radius});
    return ds;
  };

  switch (config.scenario) {
    case Scenario::uniform:
      chain.disks = uniform_disks();
      break;
    case Scenario::single_defect: {
      require(config.defect_radius > 0 && config.defect_radius < 0.5,
              "defect_radius must be in (0, 0.5)");
      chain.disks = uniform_disks();
      chain.disks[config.half_width].radius = config.defect_radius;
      break;
    }
    case Scenario::two_defect: {
      require(config.defect_radius > 0 && config.defect_radius < 0.5,
              "defect_radius must be in (0, 0.5)");
      const int l = config.defect_separation;
      require(l >= 1 && l % 2 == 1, "defect_separation must be a positive odd integer");
      // l counts the unperturbed disks between the two defects, so the
      // defect cells are n = +-(l+1)/2.
      const int p = (l + 1) / 2;
      require(p <= config.half_width, "defect_separation exceeds chain extent");
      chain.disks = uniform_disks();
      chain.disks[config.half_width - p].radius = config.defect_radius;
      chain.disks[config.half_width + p].radius = config.defect_radius;
      break;
    }
    case Scenario::ssh: {
      // Dimerized chain with a domain wall at y = 0: a central disk bonded
      // at spacing 0.7 on both sides, then spacings alternating 1.3 / 0.7
      // outward, mirror symmetric. 30 disks per half plus the wall site.
      const double r = 0.3;
      std::vector<double> up{0.0};
      for (int k = 0; k < 30; ++k) up.push_back(up.back() + (k % 2 == 0 ? 0.7 : 1.3));
      std::vector<Disk> ds;
      for (int k = 30; k >= 1; --k) ds.push_back({-k, {cx, -up[k]}, r});
      for (int k = 0; k <= 30; ++k) ds.push_back({k, {cx, up[k]}, r});
      chain.disks = ds;
      break;
    }
    case Scenario::custom: {
      require(!config.custom_disks.empty(), "custom scenario requires a disk list");
      chain.disks = sorted_by_height(config.custom_disks);
      break;
    }
  }

  auto violations = validate_geometry(chain);
  if (!violations.empty()) throw std::invalid_argument("inadmissible geometry: " + violations.front().message);
  return chain;
}

std::vector<GeometryViolation> validate_geometry(const ResonatorChain& chain) {
  std::vector<GeometryViolation> out;
  const auto& ds = chain.disks;
  const int n = static_cast<int>(ds.size());
  for (int i = 0; i < n; ++i) {
    const double clearance = std::min(ds[i].center.x() - ds[i].radius,
                                      1.0 - ds[i].center.x() - ds[i].radius);
    if (!(clearance > 0)) {
      std::ostringstream msg;
      msg << "disk " << ds[i].index << " touches or crosses a strip wall (clearance "
          << clearance << ")";
      out.push_back({GeometryViolation::Kind::wall_clearance, ds[i].index, -1, clearance, msg.str()});
    }
    if (!(ds[i].radius > 0)) {
      out.push_back({GeometryViolation::Kind::wall_clearance, ds[i].index, -1, ds[i].radius,
                     "disk has nonpositive radius"});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = (ds[i].center - ds[j].center).norm();
      const double depth = ds[i].radius + ds[j].radius - dist;
      if (depth >= 0) {
        std::ostringstream msg;
        msg << "disks " << ds[i].index << " and " << ds[j].index << " overlap (distance " << dist
            << " <= radius sum " << ds[i].radius + ds[j].radius << ")";
        out.push_back({GeometryViolation::Kind::overlap, ds[i].index, ds[j].index, depth, msg.str()});
      }
    }
  for (int i = 0; i + 1 < n; ++i)
    if (ds[i + 1].index != ds[i].index + 1) {
      std::ostringstream msg;
      msg << "disk labels are not consecutive along the chain: " << ds[i].index << " is followed by "
          << ds[i + 1].index;
      out.push_back({GeometryViolation::Kind::monotonic_order, ds[i].index, ds[i + 1].index, 0.0,
                     msg.str()});
    }
  return out;
}

BoundaryMesh discretize(const ResonatorChain& chain, int panels_per_disk) {
  require(panels_per_disk >= 8, "panels_per_disk must be >= 8");
  require(panels_per_disk % 2 == 0, "panels_per_disk must be even");

  BoundaryMesh mesh;
  mesh.disks = chain.disks;
  mesh.panels_per_disk = panels_per_disk;
  mesh.panels.reserve(chain.disks.size() * panels_per_disk);
  const int P = panels_per_disk;
  for (int d = 0; d < chain.size(); ++d) {
    const Disk& disk = chain.disks[d];
    const double w = 2.0 * kPi * disk.radius / P;
    for (int j = 0; j < P; ++j) {
      const double theta = 2.0 * kPi * (j + 0.5) / P;
      const Eigen::Vector2d dir{std::cos(theta), std::sin(theta)};
      mesh.panels.push_back({d, disk.center + disk.radius * dir, dir, w});
    }
  }
  return mesh;
}

std::uint64_t BoundaryMesh::fingerprint() const {
  // FNV-1a over the construction data; a matching fingerprint means the
  // mesh would be rebuilt bit-identically.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  mix(&panels_per_disk, sizeof(panels_per_disk));
  for (const Disk& d : disks) {
    mix(&d.index, sizeof(d.index));
    const double xs[3] = {d.center.x(), d.center.y(), d.radius};
    mix(xs, sizeof(xs));
  }
  return h;
}

std::string chain_to_json(const ResonatorChain& chain) {
  nlohmann::json j;
  j["scenario"] = chain.scenario_name;
  j["disks"] = nlohmann::json::array();
  for (const Disk& d : chain.disks)
    j["disks"].push_back({{"index", d.index}, {"cx", d.center.x()}, {"cy", d.center.y()}, {"r", d.radius}});
  return j.dump(2);
}

ResonatorChain chain_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ResonatorChain chain;
  chain.scenario_name = j.value("scenario", std::string("custom"));
  for (const auto& dj : j.at("disks"))
    chain.disks.push_back({dj.at("index").get<int>(),
                           {dj.at("cx").get<double>(), dj.at("cy").get<double>()},
                           dj.at("r").get<double>()});
  chain.disks = sorted_by_height(chain.disks);
  return chain;
}

}  // namespace subwave
