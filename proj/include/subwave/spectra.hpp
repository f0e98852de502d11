#ifndef SUBWAVE_SPECTRA_HPP
#define SUBWAVE_SPECTRA_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "subwave/capmat.hpp"
#include "subwave/geometry.hpp"

namespace subwave {

/// Diagonal mass matrix M = diag{|D_n|} of disk areas.
struct MassMatrix {
  Eigen::VectorXd diagonal;
  int size() const { return static_cast<int>(diagonal.size()); }
};

/// Eigenpairs of C^alpha v = lambda M v at one quasi-momentum.
struct Spectrum {
  double alpha = 0.0;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // columns, v^H M v = 1
  Eigen::VectorXd iprs;
};

struct BandStructure {
  std::vector<double> alpha_grid;
  std::vector<Spectrum> spectra;
  std::vector<CapacitanceMatrix> capacitances;  // hermitized, post-truncation
  std::string scenario_name;
  int fourier_terms = 0;
  int panels_per_disk = 0;
  int truncation_bandwidth = -1;  // -1 = none
};

struct DefectObservation {
  double eigenvalue = 0.0;
  double ipr = 0.0;
  bool outside_reference = false;
};

struct DefectReport {
  std::vector<std::vector<DefectObservation>> defect_bands;  // per alpha
  double max_gap = 0.0;
  double max_relative_difference = 0.0;
  std::vector<std::pair<double, double>> rd_curve;  // (alpha, RD)
  bool overlaps_passing_band = false;
};

/// Contrast and interior wave speed for the frequency map.
struct FrequencyParams {
  double delta = 1e-3;
  double mu1 = 1.0;
};

struct SweepOptions {
  std::optional<int> truncation;  // bandwidth; nullopt = none
  int threads = 0;                // 0 = default_thread_count()
};

MassMatrix mass_matrix(const ResonatorChain& chain);

/// Reduce via M^{-1/2} C M^{-1/2}, full Hermitian eigendecomposition,
/// eigenvalues ascending. Requires the hermitized flag.
Spectrum eig_pencil(const CapacitanceMatrix& C, const MassMatrix& M);

double ipr(const Eigen::VectorXcd& v, const MassMatrix& M);

/// Uniform midpoint grid -pi + (j + 1/2) (2 pi / n), excludes alpha = 0.
std::vector<double> midpoint_alpha_grid(int n);

/// Per-alpha pipeline assemble -> densities -> capacitance -> hermitian
/// part -> optional band truncation -> pencil eigensolve.
BandStructure band_sweep(const ResonatorChain& chain, const std::vector<double>& alpha_grid,
                         const SweepOptions& opts, int fourier_terms, int panels_per_disk);

/// Derive spectra from already-computed hermitized capacitance matrices.
BandStructure spectra_from_capacitances(const ResonatorChain& chain,
                                        const std::vector<double>& alpha_grid,
                                        std::vector<CapacitanceMatrix> caps,
                                        std::optional<int> truncation);

/// Defect labeling against a uniform-chain reference on the same grid:
/// outside the reference spectral interval (margin 1e-6) or IPR above the
/// threshold. `expected_count` eigenvalues must lie outside the interval
/// at every alpha (1 for single_defect, 2 for two_defect).
DefectReport classify_defects(const BandStructure& band, const BandStructure& reference,
                              double ipr_threshold, int expected_count);

/// Interface labeling for the ssh scenario: IPR above threshold, the
/// localization center (site of max |v|) within 2 disks of y = 0, and not
/// a truncation pseudo-mode (center within 2 disks of either chain end).
DefectReport classify_interface(const BandStructure& band, const ResonatorChain& chain,
                                double ipr_threshold);

/// RD = 1 - l1/l2 for 0 < l1 <= l2.
double relative_difference(double l1, double l2);

/// Max over alpha of (l2 - l1) for per-alpha defect pairs.
double max_gap(const std::vector<std::pair<double, double>>& pairs);

/// Leading-order subwavelength frequency sqrt(delta lambda) mu1.
double to_frequency(double lambda, const FrequencyParams& params);

}  // namespace subwave

#endif
