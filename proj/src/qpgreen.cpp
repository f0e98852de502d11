#include "subwave/qpgreen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subwave {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanC {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// exp(z) - 1 without cancellation for small |z|.
Complex expm1c(Complex z) {
  const double a = z.real(), b = z.imag();
  const double em = std::expm1(a);
  const double sb = std::sin(b), hb = std::sin(0.5 * b);
  return {em * std::cos(b) - 2.0 * hb * hb, (em + 1.0) * sb};
}
}  // namespace

Complex eval_series(const GreenParams& params, const Eigen::Vector2d& x) {
  if (params.alpha == 0.0) throw std::invalid_argument("eval_series: alpha = 0 (k = 0 term is singular)");
  if (params.fourier_terms < 1) throw std::invalid_argument("eval_series: fourier_terms must be >= 1");
  const double x1 = x.x(), ax2 = std::abs(x.y());
  KahanC acc;
  for (int k = -params.fourier_terms; k <= params.fourier_terms; ++k) {
    const double beta = kTwoPi * k + params.alpha;
    const double ab = std::abs(beta);
    acc.add(-std::exp(Complex(-ab * ax2, beta * x1)) / (2.0 * ab));
  }
  return acc.sum;
}

Complex eval_periodic0(int fourier_terms, const Eigen::Vector2d& x) {
  if (fourier_terms < 1) throw std::invalid_argument("eval_periodic0: fourier_terms must be >= 1");
  const double x1 = x.x(), ax2 = std::abs(x.y());
  KahanC acc;
  for (int k = -fourier_terms; k <= fourier_terms; ++k) {
    if (k == 0) continue;
    const double kk = kTwoPi * k;
    acc.add(-std::exp(Complex(-std::abs(kk) * ax2, kk * x1)) / std::abs(2.0 * kk));
  }
  return acc.sum + 0.5 * ax2;
}

namespace qpgreen_detail {

Complex split_remainder(const GreenParams& params, double x1, double x2) {
  const double alpha = params.alpha;
  const int M = params.fourier_terms;
  const double ax2 = std::abs(x2);
  const double aa = std::abs(alpha);

  const Complex t0 = std::exp(Complex(-aa * ax2, alpha * x1)) / (2.0 * aa);
  const Complex Pf = std::exp(Complex(-alpha * ax2, alpha * x1));
  const Complex Pp = std::exp(Complex(alpha * ax2, alpha * x1));
  const Complex w = std::exp(Complex(-kTwoPi * ax2, kTwoPi * x1));
  const Complex wp = std::exp(Complex(-kTwoPi * ax2, -kTwoPi * x1));
  const Complex one_minus_w = -expm1c(Complex(-kTwoPi * ax2, kTwoPi * x1));
  const Complex one_minus_wp = -expm1c(Complex(-kTwoPi * ax2, -kTwoPi * x1));

  const double r = std::hypot(x1, x2);
  const Complex closed =
      (Pf * std::log(one_minus_w) + Pp * std::log(one_minus_wp)) / (4.0 * kPi) - std::log(r) / kTwoPi;

  // Correction series: exact term minus its 1/(4 pi k) asymptote, O(k^-2).
  KahanC corr;
  Complex wk{1.0, 0.0}, wpk{1.0, 0.0};
  for (int k = 1; k <= M; ++k) {
    wk *= w;
    wpk *= wp;
    const double c = alpha / (4.0 * kPi * k);
    corr.add(c * (Pp * wpk / (kTwoPi * k - alpha) - Pf * wk / (kTwoPi * k + alpha)));
    if (std::abs(wk.real()) + std::abs(wk.imag()) < 1e-20 &&
        std::abs(wpk.real()) + std::abs(wpk.imag()) < 1e-20)
      break;  // remaining terms below rounding
  }
  return -t0 + closed - corr.sum;
}

Complex series_sum(const GreenParams& params, double x1, double x2, int kmax) {
  const double alpha = params.alpha;
  const double ax2 = std::abs(x2);
  const double aa = std::abs(alpha);
  const Complex Pf = std::exp(Complex(-alpha * ax2, alpha * x1));
  const Complex Pp = std::exp(Complex(alpha * ax2, alpha * x1));
  const Complex w = std::exp(Complex(-kTwoPi * ax2, kTwoPi * x1));
  const Complex wp = std::exp(Complex(-kTwoPi * ax2, -kTwoPi * x1));
  Complex sum = std::exp(Complex(-aa * ax2, alpha * x1)) / (2.0 * aa);
  Complex wk{1.0, 0.0}, wpk{1.0, 0.0};
  for (int k = 1; k <= kmax; ++k) {
    wk *= w;
    wpk *= wp;
    sum += Pf * wk / (2.0 * (kTwoPi * k + alpha)) + Pp * wpk / (2.0 * (kTwoPi * k - alpha));
  }
  return -sum;
}

}  // namespace qpgreen_detail

NearFieldSplit eval_nearfield_split(const GreenParams& params, const Eigen::Vector2d& x) {
  if (params.alpha == 0.0) throw std::invalid_argument("eval_nearfield_split: alpha = 0");
  if (params.fourier_terms < 1) throw std::invalid_argument("eval_nearfield_split: fourier_terms must be >= 1");
  const double r = x.norm();
  if (r == 0.0) throw std::invalid_argument("eval_nearfield_split: x = 0");
  if (r >= 0.5) throw std::out_of_range("eval_nearfield_split: |x| >= 0.5 outside near-field regime");
  return {1.0 / kTwoPi, qpgreen_detail::split_remainder(params, x.x(), x.y())};
}

}  // namespace subwave
