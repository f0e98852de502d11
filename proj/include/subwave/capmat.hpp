#ifndef SUBWAVE_CAPMAT_HPP
#define SUBWAVE_CAPMAT_HPP

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

namespace subwave {

/// Dense quasi-periodic capacitance matrix C^alpha for one chain.
struct CapacitanceMatrix {
  double alpha = 0.0;
  Eigen::MatrixXcd entries;
  bool hermitized = false;
  double asymmetry = 0.0;  // pre-symmetrization ||C - C^H||_F / ||C||_F
  std::string chain_id;

  int size() const { return static_cast<int>(entries.rows()); }
};

/// Least-squares exponential fit of |C[c+i][c]| over offsets i.
struct DecayFit {
  double rho = 0.0;
  double log_linear_r2 = 0.0;
  bool decaying = false;  // rho < 1
  std::vector<std::pair<int, double>> samples;  // (offset, |C[c+i][c]|)
};

/// Full-capacitance entries C^{p,q}_{0,n} recovered by the alpha-grid DFT.
struct FullMatrixSlice {
  std::vector<int> p_offsets;
  std::vector<std::complex<double>> entries;
};

CapacitanceMatrix hermitian_part(const CapacitanceMatrix& C);
CapacitanceMatrix band_truncate(const CapacitanceMatrix& C, int bandwidth);

/// Fit ln|C[center+i][center]| vs i over i = 1..max_offset; center_row is
/// the position of the central disk in the chain ordering.
DecayFit fit_decay(const CapacitanceMatrix& C, int max_offset, int center_row);

/// Trapezoidal Fourier coefficients over a uniform midpoint alpha grid:
///   C_p = (1/N) sum_j C^{alpha_j}[row][col] exp(-i alpha_j p),  |p| <= p_max.
FullMatrixSlice alpha_dft(const std::vector<CapacitanceMatrix>& caps, int row, int col, int p_max);

// CSV export (17 significant digits, deterministic bytes).
std::string capacitance_csv(const std::vector<CapacitanceMatrix>& caps);
std::string decay_csv(const std::vector<double>& alphas,
                      const std::vector<DecayFit>& fits);
std::string dft_csv(const FullMatrixSlice& slice, int row, int col);

}  // namespace subwave

#endif
