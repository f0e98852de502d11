#ifndef SUBWAVE_QPGREEN_HPP
#define SUBWAVE_QPGREEN_HPP

#include <Eigen/Core>
#include <complex>

namespace subwave {

using Complex = std::complex<double>;

/// Quasi-momentum and series truncation for the strip Green function.
struct GreenParams {
  double alpha = 0.0;      // in [-pi, pi), nonzero for solver use
  int fourier_terms = 200; // M
};

/// Truncated spectral series for the quasi-periodic Laplace Green function,
///   G(x) = -sum_{|k|<=M} exp(i(2 pi k + a) x1 - |2 pi k + a| |x2|) / (2 |2 pi k + a|),
/// summed in fixed ascending k with compensated accumulation.
Complex eval_series(const GreenParams& params, const Eigen::Vector2d& x);

/// alpha = 0 variant  |x2|/2 - sum_{0<|k|<=M} ... ; diagnostics/tests only.
Complex eval_periodic0(int fourier_terms, const Eigen::Vector2d& x);

/// Singularity split G(x) = log_coefficient * ln|x| + remainder + O(tail(M)).
struct NearFieldSplit {
  double log_coefficient = 0.0;  // always 1/(2 pi)
  Complex remainder{};
};

/// Near-field form of the Green function. Valid for |x| < 0.5.
NearFieldSplit eval_nearfield_split(const GreenParams& params, const Eigen::Vector2d& x);

namespace qpgreen_detail {

/// Remainder R with G = ln|x|/(2 pi) + R; defined for |x1| < 1, x != 0.
/// The closed logarithm pair absorbs the k -> +-inf asymptotes of the
/// series; the correction series (terms O(k^-2)) is truncated at M.
Complex split_remainder(const GreenParams& params, double x1, double x2);

/// Series sum with the k range reduced to |k| <= kmax (tail is below
/// rounding for pair separations bounded away from the axis).
Complex series_sum(const GreenParams& params, double x1, double x2, int kmax);

}  // namespace qpgreen_detail

}  // namespace subwave

#endif
