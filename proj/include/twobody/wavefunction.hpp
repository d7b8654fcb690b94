#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "twobody/bethe.hpp"
#include "twobody/linalg.hpp"

namespace twobody {

using cplx = std::complex<double>;

/// Homogeneous linear system for the plane-wave amplitudes at (k, gamma), eta = 3.
/// Columns are [A+ of each distinct momentum, A- of each distinct momentum].
struct ConstraintSystem {
  std::vector<MomentumVector> momenta;  ///< D6 images d_j k, in group order (12)
  std::vector<int> column_of;           ///< distinct-momentum index for each d_j
  std::vector<MomentumVector> distinct;
  Eigen::MatrixXcd matrix;              ///< rows normalized to unit length
};

ConstraintSystem build_constraint_system(const MomentumVector& k, double gamma);

struct NullspaceInfo {
  double smallest_ratio;  ///< sigma_min / sigma_max
  double second_ratio;    ///< second-smallest / sigma_max
};
NullspaceInfo nullspace_info(const MomentumVector& k, double gamma);

/// A second singular value within four decades of the smallest (or below
/// 1e-11 of the largest) means more than one null direction.
bool nullspace_degenerate(const NullspaceInfo& info);

/// Relative coordinate derivative weight c = (p1 - eta p2) / (1 + eta).
double relative_weight(const MomentumVector& p);

/// exp(-/+ i (p2 - p1) / 2) style phase factor for a scattering pair.
cplx phase_prefactor(const MomentumVector& p, int region);

struct CoefficientSet {
  BetheRoot root;
  double gamma = 0.0;
  std::vector<MomentumVector> momenta;  ///< 12, group order
  std::vector<cplx> plus;                ///< A_{j+}
  std::vector<cplx> minus;               ///< A_{j-}
  double norm = 1.0;                     ///< sqrt of the integral of |Psi|^2 before scaling
  double smallest_ratio = 0.0;
  double second_ratio = 0.0;
  double constraint_residual = 0.0;      ///< |M A| / |A|

  cplx psi_plus(double x1, double x2) const;
  cplx psi_minus(double x1, double x2) const;
};

/// Null vector of the constraint system, phase-fixed and L2-normalized.
/// Throws NullspaceError for an empty or degenerate nullspace.
CoefficientSet assemble_coefficients(const BetheRoot& root, double gamma);

cplx evaluate_psi(const CoefficientSet& c, double x1, double x2);

/// max |Psi| over a uniform grid including walls.
double psi_sup_norm(const CoefficientSet& c, int res = 201);

/// max |Psi| over points of the four walls, relative to psi_sup_norm.
double wall_residual(const CoefficientSet& c, int samples = 201);

/// max |Psi+ - Psi-| on the diagonal, relative to psi_sup_norm.
double continuity_mismatch(const CoefficientSet& c, int samples = 201);

/// max |jump - 2 gamma Psi| / scale over `samples` diagonal points.
double jump_condition_check(const CoefficientSet& c, double gamma, int samples = 64);

struct ParityCheck {
  int sign;
  double mismatch;  ///< max |Psi(-x) - sign Psi(x)| / |Psi|_inf
};
ParityCheck parity_check(const CoefficientSet& c, int res = 101);

struct DensityGrid {
  int resolution = 0;
  double gamma = 0.0;
  int level = -1;
  std::vector<double> values;  ///< row-major: values[i * res + j] = rho(x1_i, x2_j)
  double normalization = 0.0;  ///< trapezoid integral of rho (1 after scaling)

  static double coordinate(int i, int res) { return -0.5 + static_cast<double>(i) / (res - 1); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
  /// max over the diagonal / max over the grid.
  double diagonal_suppression() const;
};

/// Samples rho = |psi|^2 on a res x res grid covering the box and normalizes it.
DensityGrid density_grid(const std::function<double(double, double)>& rho_unnormalized, int resolution);
DensityGrid density_grid(const CoefficientSet& c, int resolution);

/// sqrt(2) sin(n pi (x + 1/2)).
double phi(int n, double x);

struct ProductTerm {
  std::array<int, 2> n;
  int sign;
  double weight;
};

/// Superposition of phi_{n1}(x1) phi_{n2}(x2) terms.
struct ProductState {
  std::vector<ProductTerm> terms;
  double operator()(double x1, double x2) const;
  double energy() const;
};

/// Triple superposition vanishing on x1 = x2; signs found by search.
ProductState special_state(int n1, int n2);

/// 4-exponential form Phi_k on region +.
cplx hardcore_mode(const MomentumVector& k, double x1, double x2);

struct HardcoreState {
  std::array<MomentumVector, 3> momenta;  ///< k, s k, s sz k
  std::array<cplx, 3> weights;
  int parity = 1;
  double norm = 1.0;
  cplx operator()(double x1, double x2) const;
};

HardcoreState hardcore_wavefunction(const MomentumVector& k, int parity = 1);

}  // namespace twobody
