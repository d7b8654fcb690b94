#pragma once

#include <complex>
#include <string>
#include <vector>

#include "twobody/dihedral.hpp"
#include "twobody/linalg.hpp"

namespace twobody {

struct KWindow {
  double k_max = 6 * pi;  ///< scan covers (0, k_max]^2
  int grid = 240;         ///< points per axis
  int rank_samples = 64;  ///< random points for the rank estimate
  double start_threshold = 0.05;
};

/// One per-pair determinant condition: pair (j, k) of group indices with d_j = s d_k.
struct PairCondition {
  int j;
  int k;
};

struct ProbeReport {
  double eta = 0.0;
  int l = 0;
  int n = 0;
  std::string group;
  double gamma = 0.0;
  int coefficient_count = 0;   ///< 8n
  int condition_count = 0;     ///< 2n
  int independent_count = 0;
  std::vector<double> condition_singular_values;
  int common_root_count = 0;
  double best_residual = 1.0;
  MomentumVector best_k;
  std::vector<MomentumVector> common_roots;
  bool solvable = false;
  std::string summary;
};

std::vector<PairCondition> pair_conditions(const DihedralGroup& g);

/// det of the 4x4 pair system divided by the product of its row norms.
std::complex<double> pair_determinant(const DihedralGroup& g, const PairCondition& p, const MomentumVector& k,
                                      double gamma);

/// Max over all pair conditions of |normalized determinant|.
double probe_residual(const DihedralGroup& g, const MomentumVector& k, double gamma);

double residual_over(const DihedralGroup& g, const std::vector<PairCondition>& conds, const MomentumVector& k,
                     double gamma);

/// True where some pair system is singular for kinematic reasons (coinciding
/// momenta or unit-modulus phase degeneracy) rather than through the dynamics.
bool probe_degenerate(const DihedralGroup& g, const MomentumVector& k, double tol = 1e-3);

ProbeReport constraint_rank_probe(double eta, double gamma = 1.0, const KWindow& window = {});

}  // namespace twobody
