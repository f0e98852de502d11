#include "subwave/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "subwave/bem.hpp"
#include "subwave/parallel.hpp"

namespace subwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

int default_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SUBWAVE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

MassMatrix mass_matrix(const ResonatorChain& chain) {
  MassMatrix M;
  M.diagonal.resize(chain.size());
  for (int i = 0; i < chain.size(); ++i)
    M.diagonal[i] = kPi * chain.disks[i].radius * chain.disks[i].radius;
  return M;
}

Spectrum eig_pencil(const CapacitanceMatrix& C, const MassMatrix& M) {
  if (!C.hermitized) throw std::invalid_argument("eig_pencil: capacitance matrix is not hermitized");
  if (C.size() != M.size()) throw std::invalid_argument("eig_pencil: dimension mismatch");
  if ((M.diagonal.array() <= 0.0).any()) throw std::invalid_argument("eig_pencil: mass must be positive");

  const Eigen::VectorXd mis = M.diagonal.array().rsqrt();
  const Eigen::MatrixXcd A = mis.asDiagonal() * C.entries * mis.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_pencil: eigensolver failed to converge");

  Spectrum sp;
  sp.alpha = C.alpha;
  sp.eigenvalues = es.eigenvalues();
  sp.eigenvectors = mis.asDiagonal() * es.eigenvectors();
  sp.iprs.resize(C.size());
  for (int j = 0; j < C.size(); ++j) sp.iprs[j] = ipr(sp.eigenvectors.col(j), M);
  return sp;
}

double ipr(const Eigen::VectorXcd& v, const MassMatrix& M) {
  if (v.size() == 0 || v.isZero(0.0)) throw std::invalid_argument("ipr: zero vector");
  if (M.size() != 0 && M.size() != v.size()) throw std::invalid_argument("ipr: dimension mismatch");
  const Eigen::VectorXd a2 = v.cwiseAbs2();
  const double s2 = a2.sum();
  return a2.squaredNorm() / (s2 * s2);
}

std::vector<double> midpoint_alpha_grid(int n) {
  if (n < 2) throw std::invalid_argument("midpoint_alpha_grid: need at least 2 points");
  std::vector<double> grid(n);
  for (int j = 0; j < n; ++j) grid[j] = -kPi + (j + 0.5) * (2.0 * kPi / n);
  return grid;
}

BandStructure spectra_from_capacitances(const ResonatorChain& chain,
                                        const std::vector<double>& alpha_grid,
                                        std::vector<CapacitanceMatrix> caps,
                                        std::optional<int> truncation) {
  BandStructure band;
  band.alpha_grid = alpha_grid;
  band.scenario_name = chain.scenario_name;
  band.truncation_bandwidth = truncation.value_or(-1);
  const MassMatrix M = mass_matrix(chain);
  band.capacitances.reserve(caps.size());
  for (auto& C : caps) {
    CapacitanceMatrix H = C.hermitized ? std::move(C) : hermitian_part(C);
    if (truncation) H = band_truncate(H, *truncation);
    band.spectra.push_back(eig_pencil(H, M));
    band.capacitances.push_back(std::move(H));
  }
  return band;
}

BandStructure band_sweep(const ResonatorChain& chain, const std::vector<double>& alpha_grid,
                         const SweepOptions& opts, int fourier_terms, int panels_per_disk) {
  for (double a : alpha_grid)
    if (a == 0.0) throw std::invalid_argument("band_sweep: alpha grid must exclude 0");

  const BoundaryMesh mesh = discretize(chain, panels_per_disk);
  const int n = static_cast<int>(alpha_grid.size());
  std::vector<CapacitanceMatrix> caps(n);
  std::vector<std::string> failures(n);

  parallel_for_index(n, default_thread_count(opts.threads), [&](int j) {
    try {
      const GreenParams params{alpha_grid[j], fourier_terms};
      const SingleLayerMatrix S = assemble(mesh, params);
      const DensitySet phi = solve_densities(S, mesh);
      caps[j] = capacitance(phi, mesh);
    } catch (const std::exception& e) {
      failures[j] = e.what();
    }
  });
  std::ostringstream failed;
  int n_failed = 0;
  for (int j = 0; j < n; ++j)
    if (!failures[j].empty()) {
      if (n_failed++) failed << "; ";
      failed << "alpha = " << alpha_grid[j] << ": " << failures[j];
    }
  if (n_failed) throw std::runtime_error("band_sweep failed at " + std::to_string(n_failed) +
                                         " grid point(s): " + failed.str());

  BandStructure band = spectra_from_capacitances(chain, alpha_grid, std::move(caps), opts.truncation);
  band.fourier_terms = fourier_terms;
  band.panels_per_disk = panels_per_disk;
  return band;
}

namespace {
// Distance of lambda from the closed reference interval (0 inside).
double interval_distance(double lambda, double lo, double hi) {
  if (lambda < lo) return lo - lambda;
  if (lambda > hi) return lambda - hi;
  return 0.0;
}
}  // namespace

DefectReport classify_defects(const BandStructure& band, const BandStructure& reference,
                              double ipr_threshold, int expected_count) {
  if (band.spectra.size() != reference.spectra.size())
    throw std::invalid_argument("classify_defects: grids differ");
  constexpr double kMargin = 1e-6;

  DefectReport report;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t j = 0; j < band.spectra.size(); ++j) {
    const Spectrum& sp = band.spectra[j];
    const Eigen::VectorXd& ref = reference.spectra[j].eigenvalues;
    const double lo = ref.minCoeff() - kMargin;
    const double hi = ref.maxCoeff() + kMargin;

    std::vector<DefectObservation> labeled;
    std::vector<double> outside;
    for (int i = 0; i < sp.eigenvalues.size(); ++i) {
      const double lam = sp.eigenvalues[i];
      const bool out = lam < lo || lam > hi;
      if (out || sp.iprs[i] > ipr_threshold) {
        labeled.push_back({lam, sp.iprs[i], out});
        if (out) outside.push_back(lam);
      }
    }
    if (static_cast<int>(outside.size()) != expected_count) {
      std::ostringstream os;
      os << "classify_defects: expected " << expected_count << " defect eigenvalues at alpha = "
         << sp.alpha << ", found " << outside.size();
      throw std::runtime_error(os.str());
    }
    report.defect_bands.push_back(std::move(labeled));
    if (expected_count == 2) {
      const double l1 = std::min(outside[0], outside[1]);
      const double l2 = std::max(outside[0], outside[1]);
      pairs.emplace_back(l1, l2);
      report.rd_curve.emplace_back(sp.alpha, relative_difference(l1, l2));
    }
  }
  if (!pairs.empty()) {
    report.max_gap = max_gap(pairs);
    for (const auto& [alpha, rd] : report.rd_curve)
      report.max_relative_difference = std::max(report.max_relative_difference, rd);
  }
  return report;
}

DefectReport classify_interface(const BandStructure& band, const ResonatorChain& chain,
                                double ipr_threshold) {
  DefectReport report;
  const int n = chain.size();
  const double y_lo = chain.disks.front().center.y();
  const double y_hi = chain.disks.back().center.y();

  bool overlap = false;
  for (const Spectrum& sp : band.spectra) {
    std::vector<DefectObservation> labeled;
    double bulk_lo = std::numeric_limits<double>::infinity();
    double bulk_hi = -std::numeric_limits<double>::infinity();
    std::vector<double> interface_lams;
    for (int i = 0; i < sp.eigenvalues.size(); ++i) {
      int peak = 0;
      double best = -1.0;
      for (int d = 0; d < n; ++d) {
        const double a = std::norm(sp.eigenvectors(d, i));
        if (a > best) {
          best = a;
          peak = d;
        }
      }
      const double y = chain.disks[peak].center.y();
      const bool end_mode = (y - y_lo) <= 2.0 || (y_hi - y) <= 2.0;
      const bool central = std::abs(y) <= 2.0;
      if (sp.iprs[i] > ipr_threshold && central && !end_mode) {
        labeled.push_back({sp.eigenvalues[i], sp.iprs[i], true});
        interface_lams.push_back(sp.eigenvalues[i]);
      } else if (!(sp.iprs[i] > ipr_threshold && end_mode)) {
        bulk_lo = std::min(bulk_lo, sp.eigenvalues[i]);
        bulk_hi = std::max(bulk_hi, sp.eigenvalues[i]);
      }
    }
    for (double lam : interface_lams)
      if (lam >= bulk_lo && lam <= bulk_hi) overlap = true;
    report.defect_bands.push_back(std::move(labeled));
  }
  report.overlaps_passing_band = overlap;
  return report;
}

double relative_difference(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw std::invalid_argument("relative_difference: inputs must be positive");
  if (l1 > l2) throw std::invalid_argument("relative_difference: requires l1 <= l2");
  return 1.0 - l1 / l2;
}

double max_gap(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("max_gap: no defect pairs");
  double g = 0.0;
  for (const auto& [l1, l2] : pairs) {
    if (l1 > l2) throw std::invalid_argument("max_gap: misordered pair");
    g = std::max(g, l2 - l1);
  }
  return g;
}

double to_frequency(double lambda, const FrequencyParams& params) {
  if (lambda < 0.0) throw std::invalid_argument("to_frequency: lambda must be >= 0");
  if (!(params.delta > 0.0) || !(params.mu1 > 0.0))
    throw std::invalid_argument("to_frequency: delta and mu1 must be positive");
  if (params.delta > 0.1)
    std::fprintf(stderr,
                 "to_frequency: contrast delta = %g is outside the high-contrast regime; "
                 "the leading-order map loses accuracy\n",
                 params.delta);
  return std::sqrt(params.delta * lambda) * params.mu1;
}

}  // namespace subwave
