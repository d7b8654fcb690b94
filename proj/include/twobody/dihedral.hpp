#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twobody/linalg.hpp"

namespace twobody {

/// Mass ratio on the nonergodic family eta = tan^2(l pi / 2n).
struct MassRatioClass {
  double eta = 0.0;
  int l = 0;
  int n = 0;
  bool coprime = true;

  /// tan^2(l pi / 2n), the exact family member this class names.
  double exact_eta() const;
  /// Paper-style group label D_{2n}, e.g. "D6" for n = 3.
  std::string group_name() const { return "D" + std::to_string(2 * n); }
};

/// The 4n collision operators {r^p, r^p sigma_z}, p = 0..2n-1.
struct DihedralGroup {
  int n = 0;
  double eta = 0.0;
  std::vector<Matrix2> elements;
  Matrix2 generator_r;
  Matrix2 generator_sigma;
  /// +1 if r = s(eta) sigma_z, -1 if r = -s(eta) sigma_z.
  int generator_sign = 1;

  std::size_t order() const { return elements.size(); }
  std::string name() const { return "D" + std::to_string(2 * n); }
  /// Index of the element equal to m (max-norm tol), or -1.
  int find(const Matrix2& m, double tol = 1e-10) const;
};

struct ChebyshevPower {
  Matrix2 base;
  double q = 0.0;
  int power = 0;
  Matrix2 result;
  bool used_fallback = false;
};

/// Elastic two-body collision matrix s(eta) acting on (k1, k2).
Matrix2 scattering_matrix(double eta);

MomentumVector apply_element(const Matrix2& d, const MomentumVector& k);

/// k1^2 + eta k2^2, proportional to the kinetic energy.
double rescaled_norm_sq(const MomentumVector& k, double eta);

/// Every coprime (l, n) with n <= n_max matching eta, ordered by n then l.
std::vector<MassRatioClass> nonergodicity_matches(double eta, int n_max = 64, double tol = 1e-9);

/// The match with minimal n, if any.
std::optional<MassRatioClass> nonergodicity_classify(double eta, int n_max = 64, double tol = 1e-9);

DihedralGroup build_dihedral_group(const MassRatioClass& cls);

/// Convenience: classify eta and build its group; throws DomainError if eta is not classifiable.
DihedralGroup dihedral_group_for(double eta);

/// Distinct images d_j k; duplicates merged at tol * |k| per component.
std::vector<MomentumVector> momentum_orbit(const MomentumVector& k, const DihedralGroup& g,
                                           double tol = 1e-9);

/// m^n from the Chebyshev identity, m unimodular with |tr m| <= 2.
ChebyshevPower chebyshev_power(const Matrix2& m, int n);

/// Plain repeated multiplication, n >= 0.
Matrix2 naive_power(const Matrix2& m, int n);

/// R = U r U^-1 with U = diag(1, sqrt(eta)); a rotation by (n - l) pi / n.
Matrix2 rotation_form(const MassRatioClass& cls);

}  // namespace twobody
