#ifndef SUBWAVE_GEOMETRY_HPP
#define SUBWAVE_GEOMETRY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace subwave {

/// Lattice of the singly periodic strip. v1 is the periodic direction
/// (unit length), v2 spans the transverse direction of one cell.
struct LatticeSpec {
  Eigen::Vector2d v1{1.0, 0.0};
  Eigen::Vector2d v2{0.0, 1.0};
  double cell_height = 1.0;
};

/// One circular inclusion. `index` is the cell label n along the chain.
struct Disk {
  int index = 0;
  Eigen::Vector2d center{0.5, 0.5};
  double radius = 0.35;
};

enum class Scenario { uniform, single_defect, two_defect, ssh, custom };

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Declarative description of an experiment geometry and discretization.
struct ScenarioConfig {
  Scenario scenario = Scenario::uniform;
  double bulk_radius = 0.35;
  double defect_radius = 0.2;
  int half_width = 14;
  // Number of unperturbed resonators between the two defect disks (odd).
  int defect_separation = 1;
  int alpha_points = 80;
  int fourier_terms = 200;
  int panels_per_disk = 64;
  int band_truncation_width = 1;
  std::string output_dir = "out";
  std::vector<Disk> custom_disks;  // used only when scenario == custom
};

/// Ordered chain of disks inside one periodic strip, sorted by y-center.
struct ResonatorChain {
  LatticeSpec lattice;
  std::vector<Disk> disks;
  std::string scenario_name;

  int size() const { return static_cast<int>(disks.size()); }
  /// Position in `disks` of the disk carrying label n; -1 if absent.
  int position_of(int label) const;
  /// Midpoint of the chain extent in y (mirror axis for symmetric chains).
  double mirror_axis() const;
};

struct GeometryViolation {
  enum class Kind { overlap, wall_clearance, monotonic_order } kind;
  int disk_a = -1;
  int disk_b = -1;
  double value = 0.0;  // overlap depth or signed clearance
  std::string message;
};

/// Panel of the boundary discretization; node is the arc midpoint.
struct Panel {
  int parent_disk = 0;
  Eigen::Vector2d node;
  Eigen::Vector2d normal;
  double weight = 0.0;  // arc length
};

/// Equal-arc panel discretization of all inclusion boundaries.
struct BoundaryMesh {
  std::vector<Disk> disks;
  std::vector<Panel> panels;  // grouped by disk, panels_per_disk each
  int panels_per_disk = 0;

  int num_disks() const { return static_cast<int>(disks.size()); }
  int total_panels() const { return static_cast<int>(panels.size()); }
  std::uint64_t fingerprint() const;
};

ResonatorChain build_scenario(const ScenarioConfig& config);
std::vector<GeometryViolation> validate_geometry(const ResonatorChain& chain);
BoundaryMesh discretize(const ResonatorChain& chain, int panels_per_disk);

/// Chain record as JSON: {scenario, disks:[{index, cx, cy, r}]}.
std::string chain_to_json(const ResonatorChain& chain);
ResonatorChain chain_from_json(const std::string& text);

}  // namespace subwave

#endif
