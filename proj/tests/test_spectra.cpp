#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "subwave/bem.hpp"
#include "subwave/spectra.hpp"

using namespace subwave;
using Complex = std::complex<double>;
namespace {
constexpr double kPi = std::numbers::pi;

ScenarioConfig small_config(Scenario s) {
  ScenarioConfig c;
  c.scenario = s;
  c.half_width = 4;
  c.panels_per_disk = 32;
  c.fourier_terms = 100;
  return c;
}

CapacitanceMatrix hermitized(const Eigen::MatrixXcd& m, double alpha = 0.5) {
  CapacitanceMatrix C;
  C.alpha = alpha;
  C.entries = m;
  return hermitian_part(C);
}
}  // namespace

TEST_CASE("mass matrix is the diagonal of disk areas") {
  ScenarioConfig c;
  c.scenario = Scenario::single_defect;
  const ResonatorChain chain = build_scenario(c);
  const MassMatrix M = mass_matrix(chain);
  REQUIRE(M.size() == 29);
  CHECK(M.diagonal[0] == doctest::Approx(kPi * 0.35 * 0.35).epsilon(1e-15));
  const int c0 = chain.position_of(0);
  CHECK(M.diagonal[c0] == doctest::Approx(kPi * 0.2 * 0.2).epsilon(1e-15));
  CHECK(M.diagonal[c0] / M.diagonal[0] == doctest::Approx((0.2 / 0.35) * (0.2 / 0.35)).epsilon(1e-14));

  ScenarioConfig ssh;
  ssh.scenario = Scenario::ssh;
  const MassMatrix Mssh = mass_matrix(build_scenario(ssh));
  CHECK(Mssh.diagonal[0] == doctest::Approx(kPi * 0.09).epsilon(1e-15));
}

TEST_CASE("eig_pencil on closed-form pencils") {
  MassMatrix M2;
  M2.diagonal = Eigen::VectorXd::Constant(1, 2.0);
  const Spectrum one = eig_pencil(hermitized(Eigen::MatrixXcd::Constant(1, 1, Complex(2, 0))), M2);
  CHECK(one.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXcd A(2, 2);
  A << Complex(2, 0), Complex(-1, 0), Complex(-1, 0), Complex(2, 0);
  MassMatrix I2;
  I2.diagonal = Eigen::VectorXd::Ones(2);
  const Spectrum two = eig_pencil(hermitized(A), I2);
  CHECK(two.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));

  // M-orthonormality and residuals
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex g = two.eigenvectors.col(i).adjoint() *
                        (I2.diagonal.asDiagonal() * two.eigenvectors.col(j));
      CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-8);
    }

  CapacitanceMatrix raw;
  raw.alpha = 0.5;
  raw.entries = A;
  CHECK_THROWS_AS(eig_pencil(raw, I2), std::invalid_argument);  // not hermitized
}

TEST_CASE("ipr limits") {
  MassMatrix M;
  M.diagonal = Eigen::VectorXd::Ones(8);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(8);
  basis[3] = Complex(0, 2);
  CHECK(ipr(basis, M) == doctest::Approx(1.0).epsilon(1e-14));
  const Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(8, Complex(0.3, -0.1));
  CHECK(ipr(uniform, M) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK_THROWS_AS(ipr(Eigen::VectorXcd::Zero(8), M), std::invalid_argument);
}

TEST_CASE("relative difference, max gap, frequency map") {
  CHECK(relative_difference(1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(relative_difference(1.7, 1.7) == doctest::Approx(0.0));
  CHECK_THROWS_AS(relative_difference(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(relative_difference(-1.0, 1.0), std::invalid_argument);

  CHECK(max_gap({{1.0, 2.0}, {1.5, 3.7}, {0.5, 0.6}}) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK_THROWS_AS(max_gap({}), std::invalid_argument);
  CHECK_THROWS_AS(max_gap({{2.0, 1.0}}), std::invalid_argument);

  CHECK(to_frequency(4.0, {0.25, 2.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(to_frequency(0.0, {0.25, 2.0}) == 0.0);
  CHECK(to_frequency(7.3, {1e-3, 1.0}) == doctest::Approx(std::sqrt(1e-3 * 7.3)).epsilon(1e-15));
  CHECK_THROWS_AS(to_frequency(-1.0, {0.25, 2.0}), std::invalid_argument);
}

TEST_CASE("midpoint grid excludes zero and is negation symmetric") {
  const auto grid = midpoint_alpha_grid(80);
  REQUIRE(grid.size() == 80);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(grid[j] != 0.0);
    CHECK(grid[j] > -kPi);
    CHECK(grid[j] < kPi);
    CHECK(grid[j] == doctest::Approx(-grid[grid.size() - 1 - j]).epsilon(1e-15));
  }
}

TEST_CASE("band sweep shape, symmetry, and truncation identity") {
  const ResonatorChain chain = build_scenario(small_config(Scenario::uniform));
  const auto grid = midpoint_alpha_grid(8);
  SweepOptions opts;
  opts.threads = 2;
  const BandStructure band = band_sweep(chain, grid, opts, 100, 32);
  REQUIRE(band.spectra.size() == 8);
  for (const Spectrum& sp : band.spectra) {
    REQUIRE(sp.eigenvalues.size() == chain.size());
    for (int i = 0; i + 1 < sp.eigenvalues.size(); ++i)
      CHECK(sp.eigenvalues[i] <= sp.eigenvalues[i + 1]);
    CHECK(sp.eigenvalues.minCoeff() > -1e-8 * sp.eigenvalues.cwiseAbs().maxCoeff());
  }
  // +-alpha eigenvalue symmetry
  for (int j = 0; j < 4; ++j) {
    const auto& a = band.spectra[j].eigenvalues;
    const auto& b = band.spectra[7 - j].eigenvalues;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
  }
  // bandwidth N-1 reproduces the untruncated pencil
  SweepOptions full_opts = opts;
  full_opts.truncation = chain.size() - 1;
  const BandStructure full_t = band_sweep(chain, grid, full_opts, 100, 32);
  for (int j = 0; j < 8; ++j)
    CHECK((band.spectra[j].eigenvalues - full_t.spectra[j].eigenvalues).cwiseAbs().maxCoeff() <
          1e-12);

  CHECK_THROWS_AS(band_sweep(chain, {0.0, 0.5}, opts, 100, 32), std::invalid_argument);
}

TEST_CASE("band sweep aggregates failures with their alpha values") {
  // alpha ~ 1e-10 drives the condition estimate past the 1e12 gate
  const ResonatorChain chain = build_scenario(small_config(Scenario::uniform));
  SweepOptions opts;
  opts.threads = 2;
  try {
    band_sweep(chain, {1e-10, 0.5, -0.5}, opts, 50, 16);
    FAIL("expected near-singular failure");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1 grid point") != std::string::npos);
    CHECK(msg.find("1e-10") != std::string::npos);
    CHECK(msg.find("near-singular") != std::string::npos);
  }
}

TEST_CASE("alpha-grid DFT realizes the full-matrix decay over resolvable offsets") {
  // At the production radius the screened horizontal couplings fall below
  // double precision beyond three cells, so the log-linear check runs over
  // the resolvable |p| <= 3.
  ScenarioConfig cfg = small_config(Scenario::uniform);
  cfg.half_width = 6;
  const ResonatorChain chain = build_scenario(cfg);
  const auto grid = midpoint_alpha_grid(16);
  SweepOptions opts;
  opts.threads = 2;
  const BandStructure band = band_sweep(chain, grid, opts, 100, 32);
  const int c = chain.position_of(0);
  const FullMatrixSlice slice = alpha_dft(band.capacitances, c, c, 3);
  double max_mag = 0, max_imag = 0;
  for (const auto& e : slice.entries) {
    max_mag = std::max(max_mag, std::abs(e));
    max_imag = std::max(max_imag, std::abs(e.imag()));
  }
  CHECK(max_imag < 1e-8 * max_mag);  // full-matrix entries are real
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < slice.entries.size(); ++k)
    if (slice.p_offsets[k] != 0)
      pts.push_back({std::abs(double(slice.p_offsets[k])), std::log(std::abs(slice.entries[k]))});
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double sr = 0, st = 0;
  for (auto [x, y] : pts) {
    sr += (y - slope * x - icpt) * (y - slope * x - icpt);
    st += (y - sy / n) * (y - sy / n);
  }
  CHECK(1.0 - sr / st > 0.99);
  CHECK(std::exp(slope) < 1.0);
  // symmetry of the slice in +-p
  for (std::size_t k = 0; k < slice.entries.size() / 2; ++k)
    CHECK(std::abs(std::abs(slice.entries[k]) -
                   std::abs(slice.entries[slice.entries.size() - 1 - k])) <
          1e-10 * max_mag + 1e-13);
}

TEST_CASE("truncation error shrinks as the kept bandwidth grows") {
  const ResonatorChain chain = build_scenario(small_config(Scenario::single_defect));
  const MassMatrix M = mass_matrix(chain);
  const BoundaryMesh mesh = discretize(chain, 32);
  const GreenParams params{kPi / 2, 100};
  const CapacitanceMatrix C =
      hermitian_part(capacitance(solve_densities(assemble(mesh, params), mesh), mesh));
  const Spectrum full = eig_pencil(C, M);
  double prev = std::numeric_limits<double>::infinity();
  for (int bw : {1, 2, 3}) {
    const Spectrum t = eig_pencil(band_truncate(C, bw), M);
    const double err = (t.eigenvalues - full.eigenvalues).cwiseAbs().maxCoeff();
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("defect classification against the uniform reference") {
  const auto grid = midpoint_alpha_grid(6);
  SweepOptions opts;
  opts.threads = 2;
  const ResonatorChain uni = build_scenario(small_config(Scenario::uniform));
  const BandStructure ref = band_sweep(uni, grid, opts, 100, 32);

  // uniform vs uniform: nothing labeled
  const DefectReport none = classify_defects(ref, ref, 0.2, 0);
  for (const auto& obs : none.defect_bands) CHECK(obs.empty());

  const ResonatorChain def = build_scenario(small_config(Scenario::single_defect));
  const BandStructure band = band_sweep(def, grid, opts, 100, 32);
  const DefectReport rep = classify_defects(band, ref, 0.2, 1);
  for (const auto& obs : rep.defect_bands) {
    int outside = 0;
    for (const auto& o : obs) outside += o.outside_reference ? 1 : 0;
    CHECK(outside == 1);
  }
  // classification is stable across the ipr threshold range
  for (double thr : {0.15, 0.3}) {
    const DefectReport alt = classify_defects(band, ref, thr, 1);
    for (std::size_t j = 0; j < rep.defect_bands.size(); ++j) {
      std::set<double> a, b;
      for (const auto& o : rep.defect_bands[j])
        if (o.outside_reference) a.insert(o.eigenvalue);
      for (const auto& o : alt.defect_bands[j])
        if (o.outside_reference) b.insert(o.eigenvalue);
      CHECK(a == b);
    }
  }
  // a defect eigenvector is localized
  for (const Spectrum& sp : band.spectra) CHECK(sp.iprs.maxCoeff() > 0.2);

  CHECK_THROWS_AS(classify_defects(band, ref, 0.2, 2), std::runtime_error);
}
