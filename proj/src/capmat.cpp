#include "subwave/capmat.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "subwave/csvio.hpp"

namespace subwave {

namespace {
using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CapacitanceMatrix hermitian_part(const CapacitanceMatrix& C) {
  CapacitanceMatrix out = C;
  const double nrm = C.entries.norm();
  out.asymmetry = nrm == 0.0 ? 0.0 : (C.entries - C.entries.adjoint()).norm() / nrm;
  out.entries = 0.5 * (C.entries + C.entries.adjoint()).eval();
  // Force an exactly real diagonal; the averaged diagonal already is up to
  // the floating representation of 0.5*(z + conj z).
  for (int i = 0; i < out.size(); ++i) out.entries(i, i) = Complex(out.entries(i, i).real(), 0.0);
  out.hermitized = true;
  return out;
}

CapacitanceMatrix band_truncate(const CapacitanceMatrix& C, int bandwidth) {
  if (bandwidth < 0) throw std::invalid_argument("band_truncate: bandwidth must be >= 0");
  CapacitanceMatrix out = C;
  const int n = C.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > bandwidth) out.entries(i, j) = Complex(0.0, 0.0);
  return out;
}

DecayFit fit_decay(const CapacitanceMatrix& C, int max_offset, int center_row) {
  if (max_offset < 2) throw std::invalid_argument("fit_decay: max_offset must be >= 2");
  if (center_row < 0 || center_row + max_offset >= C.size())
    throw std::invalid_argument("fit_decay: offsets exceed matrix size");

  DecayFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 1; i <= max_offset; ++i) {
    const double mag = std::abs(C.entries(center_row + i, center_row));
    if (mag == 0.0) throw std::domain_error("fit_decay: sampled magnitude underflows to 0");
    fit.samples.emplace_back(i, mag);
    const double y = std::log(mag);
    sx += i;
    sy += y;
    sxx += double(i) * i;
    sxy += i * y;
  }
  const double n = max_offset;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [i, mag] : fit.samples) {
    const double y = std::log(mag);
    ss_res += (y - (slope * i + intercept)) * (y - (slope * i + intercept));
    ss_tot += (y - sy / n) * (y - sy / n);
  }
  fit.rho = std::exp(slope);
  fit.log_linear_r2 = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  fit.decaying = fit.rho < 1.0;
  return fit;
}

FullMatrixSlice alpha_dft(const std::vector<CapacitanceMatrix>& caps, int row, int col, int p_max) {
  const int n = static_cast<int>(caps.size());
  if (n < 2) throw std::invalid_argument("alpha_dft: need at least 2 grid points");
  if (n < 4 * p_max) throw std::invalid_argument("alpha_dft: grid too coarse for requested p_max");
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double expected = -std::numbers::pi + (j + 0.5) * h;
    if (std::abs(caps[j].alpha - expected) > 1e-12)
      throw std::invalid_argument("alpha_dft: grid is not the uniform midpoint grid");
  }

  FullMatrixSlice slice;
  for (int p = -p_max; p <= p_max; ++p) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j)
      acc += caps[j].entries(row, col) * std::exp(Complex(0.0, -caps[j].alpha * p));
    slice.p_offsets.push_back(p);
    slice.entries.push_back(acc / static_cast<double>(n));
  }
  return slice;
}

std::string capacitance_csv(const std::vector<CapacitanceMatrix>& caps) {
  std::ostringstream os;
  os << "alpha,n,q,re,im\n";
  for (const auto& C : caps)
    for (int i = 0; i < C.size(); ++i)
      for (int j = 0; j < C.size(); ++j)
        os << format_real(C.alpha) << ',' << format_int(i) << ',' << format_int(j) << ','
           << format_real(C.entries(i, j).real()) << ',' << format_real(C.entries(i, j).imag())
           << '\n';
  return os.str();
}

std::string decay_csv(const std::vector<double>& alphas, const std::vector<DecayFit>& fits) {
  std::ostringstream os;
  os << "alpha,i,abs_value\n";
  for (std::size_t a = 0; a < fits.size(); ++a)
    for (const auto& [i, mag] : fits[a].samples)
      os << format_real(alphas[a]) << ',' << format_int(i) << ',' << format_real(mag) << '\n';
  return os.str();
}

std::string dft_csv(const FullMatrixSlice& slice, int row, int col) {
  std::ostringstream os;
  os << "p,n,q,value\n";
  for (std::size_t k = 0; k < slice.entries.size(); ++k)
    os << format_int(slice.p_offsets[k]) << ',' << format_int(row) << ',' << format_int(col) << ','
       << format_real(slice.entries[k].real()) << '\n';
  return os.str();
}

}  // namespace subwave
