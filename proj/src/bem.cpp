#include "subwave/bem.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "subwave/csvio.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace subwave {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 4-point Gauss-Legendre on [-1, 1].
constexpr int kGauss = 4;
constexpr double kGx[kGauss] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
constexpr double kGw[kGauss] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};

// BLAS threading stays at 1; parallelism lives at the alpha level so that
// results are independent of the worker count.
void pin_blas_threads() {
  static const bool done = [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
    return true;
  }();
  (void)done;
}

std::uint64_t bits(double v) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(v));
  __builtin_memcpy(&u, &v, sizeof(u));
  return u;
}

using BlockKey = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;

// Same-disk block: split kernel. The ln|x| part is integrated exactly in
// the angular variable (chord = 2 r |sin(u/2)| factors as |u| times a
// smooth function); the remainder goes through Gauss-Legendre.
Eigen::MatrixXcd same_disk_block(const GreenParams& params, double r, int P) {
  Eigen::MatrixXcd S(P, P);
  const double du = kTwoPi / P;
  auto antideriv = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
  for (int i = 0; i < P; ++i) {
    const double ti = kTwoPi * (i + 0.5) / P;
    const double ci = std::cos(ti), si = std::sin(ti);
    for (int j = 0; j < P; ++j) {
      int d = j - i;
      if (d >= P / 2) d -= P;
      if (d < -P / 2) d += P;
      const double u0 = du * (d - 0.5), u1 = du * (d + 0.5);
      double log_int = antideriv(u1) - antideriv(u0);
      Complex rem_int{0.0, 0.0};
      for (int g = 0; g < kGauss; ++g) {
        const double u = 0.5 * (u0 + u1) + 0.5 * du * kGx[g];
        log_int += 0.5 * du * kGw[g] * std::log(2.0 * r * std::abs(std::sin(0.5 * u) / u));
        const double tg = ti + u;
        const double x1 = r * (ci - std::cos(tg));
        const double x2 = r * (si - std::sin(tg));
        rem_int += 0.5 * du * kGw[g] * qpgreen_detail::split_remainder(params, x1, x2);
      }
      S(i, j) = r * (log_int / kTwoPi + rem_int);
    }
  }
  return S;
}

Eigen::MatrixXcd cross_disk_block(const GreenParams& params, double rt, double rs,
                                  const Eigen::Vector2d& dc, int P) {
  Eigen::MatrixXcd S(P, P);
  const double du = kTwoPi / P;
  const double gap = std::abs(dc.y()) - rt - rs;
  // Terms beyond kmax are below exp(-45) of the leading one whenever the
  // panel pair is separated vertically; otherwise fall back to the full
  // truncated series.
  const bool separable = gap >= 0.05;
  const int kmax = separable
                       ? std::min(params.fourier_terms,
                                  static_cast<int>(std::ceil(45.0 / (kTwoPi * gap))) + 1)
                       : params.fourier_terms;
  for (int i = 0; i < P; ++i) {
    const double ti = kTwoPi * (i + 0.5) / P;
    const Eigen::Vector2d xt = dc + rt * Eigen::Vector2d{std::cos(ti), std::sin(ti)};
    for (int j = 0; j < P; ++j) {
      Complex acc{0.0, 0.0};
      for (int g = 0; g < kGauss; ++g) {
        const double tg = du * (j + 0.5 * (1.0 + kGx[g]));
        const double x1 = xt.x() - rs * std::cos(tg);
        const double x2 = xt.y() - rs * std::sin(tg);
        const Complex val = separable
                                ? qpgreen_detail::series_sum(params, x1, x2, kmax)
                                : eval_series(params, Eigen::Vector2d{x1, x2});
        acc += 0.5 * du * kGw[g] * val;
      }
      S(i, j) = rs * acc;
    }
  }
  return S;
}

struct LuFactors {
  Eigen::MatrixXcd lu;
  std::vector<lapack_int> ipiv;
  double anorm = 0.0;
  double rcond = 0.0;
};

LuFactors factorize(const Eigen::MatrixXcd& S) {
  pin_blas_threads();
  LuFactors f;
  f.lu = S;
  const lapack_int n = static_cast<lapack_int>(S.rows());
  f.ipiv.resize(n);
  f.anorm = S.cwiseAbs().colwise().sum().maxCoeff();
  const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, f.lu.data(), n, f.ipiv.data());
  if (info != 0) throw std::runtime_error("zgetrf failed, info = " + std::to_string(info));
  if (LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, f.lu.data(), n, f.anorm, &f.rcond) != 0)
    throw std::runtime_error("zgecon failed");
  return f;
}

void lu_solve_inplace(const LuFactors& f, Eigen::MatrixXcd& B) {
  const lapack_int n = static_cast<lapack_int>(f.lu.rows());
  const lapack_int nrhs = static_cast<lapack_int>(B.cols());
  const lapack_int info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, nrhs, f.lu.data(), n,
                                         f.ipiv.data(), B.data(), n);
  if (info != 0) throw std::runtime_error("zgetrs failed, info = " + std::to_string(info));
}
}  // namespace

SingleLayerMatrix assemble(const BoundaryMesh& mesh, const GreenParams& params) {
  if (params.alpha == 0.0) throw std::invalid_argument("assemble: alpha = 0");
  const int D = mesh.num_disks();
  const int P = mesh.panels_per_disk;
  SingleLayerMatrix S;
  S.params = params;
  S.mesh_id = mesh.fingerprint();
  S.entries.resize(D * P, D * P);

  // Blocks depend on the disk pair only through (r_t, r_s, c_t - c_s), so
  // congruent pairs share one computation.
  std::map<BlockKey, Eigen::MatrixXcd> cache;
  for (int t = 0; t < D; ++t) {
    for (int s = 0; s < D; ++s) {
      const Disk& dt = mesh.disks[t];
      const Disk& ds = mesh.disks[s];
      const Eigen::Vector2d dc = dt.center - ds.center;
      const BlockKey key{bits(dt.radius), bits(ds.radius), bits(dc.x()), bits(dc.y())};
      auto it = cache.find(key);
      if (it == cache.end()) {
        Eigen::MatrixXcd block =
            (dc.squaredNorm() == 0.0 && dt.radius == ds.radius)
                ? same_disk_block(params, dt.radius, P)
                : cross_disk_block(params, dt.radius, ds.radius, dc, P);
        it = cache.emplace(key, std::move(block)).first;
      }
      S.entries.block(t * P, s * P, P, P) = it->second;
    }
  }
  if (!S.entries.allFinite()) throw std::runtime_error("assemble: non-finite entry");
  return S;
}

DensitySet solve_densities(const SingleLayerMatrix& S, const BoundaryMesh& mesh) {
  if (S.mesh_id != mesh.fingerprint())
    throw std::invalid_argument("solve_densities: matrix/mesh mismatch");
  const int D = mesh.num_disks();
  const int P = mesh.panels_per_disk;
  const int n = D * P;

  const LuFactors f = factorize(S.entries);
  if (f.rcond > 0.0 && 1.0 / f.rcond > 1e12)
    throw std::runtime_error("solve_densities: near-singular system, cond estimate " +
                             std::to_string(1.0 / f.rcond));

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, D);
  for (int d = 0; d < D; ++d) rhs.block(d * P, d, P, 1).setOnes();

  Eigen::MatrixXcd phi = rhs;
  lu_solve_inplace(f, phi);

  // One refinement step if the residual is not already at rounding level.
  const double snorm_inf = S.entries.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::MatrixXcd resid = rhs - S.entries * phi;
  double rmax = resid.cwiseAbs().maxCoeff();
  if (rmax > 1e-12 * snorm_inf) {
    lu_solve_inplace(f, resid);
    phi += resid;
    rmax = (rhs - S.entries * phi).cwiseAbs().maxCoeff();
  }
  if (rmax > 1e-10 * snorm_inf)
    throw std::runtime_error("solve_densities: residual above contract");

  DensitySet out;
  out.columns = std::move(phi);
  out.params = S.params;
  out.mesh_id = S.mesh_id;
  return out;
}

CapacitanceMatrix capacitance(const DensitySet& densities, const BoundaryMesh& mesh) {
  if (densities.mesh_id != mesh.fingerprint())
    throw std::invalid_argument("capacitance: densities/mesh mismatch");
  const int D = mesh.num_disks();
  const int P = mesh.panels_per_disk;

  CapacitanceMatrix C;
  C.alpha = densities.params.alpha;
  C.entries.resize(D, D);
  for (int q = 0; q < D; ++q) {
    const double w = mesh.panels[q * P].weight;  // equal arcs within a disk
    for (int col = 0; col < D; ++col) {
      Complex acc{0.0, 0.0};
      for (int j = 0; j < P; ++j) acc += densities.columns(q * P + j, col);
      C.entries(q, col) = -w * acc;
    }
  }
  const double nrm = C.entries.norm();
  C.asymmetry = nrm == 0.0 ? 0.0 : (C.entries - C.entries.adjoint()).norm() / nrm;
  char idbuf[32];
  std::snprintf(idbuf, sizeof(idbuf), "%016llx", static_cast<unsigned long long>(densities.mesh_id));
  C.chain_id = idbuf;
  return C;
}

double condition_estimate(const SingleLayerMatrix& S) {
  const LuFactors f = factorize(S.entries);
  if (f.rcond <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / f.rcond;
}

namespace {
std::string matrix_json(const Eigen::MatrixXcd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i == 0 ? "[" : ",[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '[' + format_real(m(i, j).real()) + ',' + format_real(m(i, j).imag()) + ']';
    }
    out += ']';
  }
  return out + "]";
}
}  // namespace

std::string dump_json(const SingleLayerMatrix& S) {
  std::string out = "{\"alpha\":" + format_real(S.params.alpha) +
                    ",\"fourier_terms\":" + format_int(S.params.fourier_terms) +
                    ",\"entries\":" + matrix_json(S.entries) + "}";
  return out;
}

std::string dump_json(const DensitySet& densities) {
  std::string out = "{\"alpha\":" + format_real(densities.params.alpha) +
                    ",\"densities\":" + matrix_json(densities.columns) + "}";
  return out;
}

}  // namespace subwave
