#ifndef SUBWAVE_BEM_HPP
#define SUBWAVE_BEM_HPP

#include <Eigen/Core>
#include <cstdint>

#include "subwave/capmat.hpp"
#include "subwave/geometry.hpp"
#include "subwave/qpgreen.hpp"

namespace subwave {

/// Collocation matrix of the discretized single-layer operator,
/// S[i][j] ~ integral over panel j of G(node_i - y) dsigma(y).
struct SingleLayerMatrix {
  Eigen::MatrixXcd entries;
  GreenParams params;
  std::uint64_t mesh_id = 0;
};

/// Boundary densities phi_n solving S phi_n = indicator(partial D_n).
struct DensitySet {
  Eigen::MatrixXcd columns;  // P x N, column n holds phi_n at panel nodes
  GreenParams params;
  std::uint64_t mesh_id = 0;
};

SingleLayerMatrix assemble(const BoundaryMesh& mesh, const GreenParams& params);

/// Pivoted dense factorization reused across the N indicator right-hand
/// sides. Throws on a near-singular system (condition estimate > 1e12).
DensitySet solve_densities(const SingleLayerMatrix& S, const BoundaryMesh& mesh);

/// C^alpha[q][n] = -sum over panels j of disk q of weight_j phi_n(j).
CapacitanceMatrix capacitance(const DensitySet& densities, const BoundaryMesh& mesh);

/// 1-norm condition estimate of S.
double condition_estimate(const SingleLayerMatrix& S);

/// Debug dumps: matrices as JSON arrays of [re, im] pairs, row-major.
std::string dump_json(const SingleLayerMatrix& S);
std::string dump_json(const DensitySet& densities);

}  // namespace subwave

#endif
