#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace twobody {

/// phi_{n1}(x1) phi_{n2}(x2).
struct BasisState {
  int n1;
  int n2;
};

/// Quadrature nodes on [-1/2, 1/2]: composite Simpson with 4096 intervals.
struct SimpsonRule {
  std::vector<double> x, w;
  static SimpsonRule make(int intervals = 4096);
};

/// Integral of phi_n1 phi_n2 phi_m1 phi_m2 over the box.
double interaction_element(int n1, int n2, int m1, int m2);

/// V[(n1,n2),(m1,m2)] for all basis pairs, basis ordered n1-major.
struct InteractionMatrix {
  int cutoff = 0;
  Eigen::MatrixXd values;
  static InteractionMatrix build(int cutoff);
};

struct BasisHamiltonian {
  int cutoff = 0;
  double gamma = 0.0;
  double eta = 0.0;
  std::vector<BasisState> basis;
  Eigen::MatrixXd matrix;
};

std::vector<BasisState> product_basis(int cutoff);

/// Kinetic energy n1^2 pi^2 / 2 m1 + n2^2 pi^2 / 2 m2 with mu = 1.
double kinetic_energy(const BasisState& s, double eta);

BasisHamiltonian build_hamiltonian(double gamma, double eta, int cutoff);
BasisHamiltonian build_hamiltonian(double gamma, double eta, const InteractionMatrix& v);

/// Lowest `count` eigenvalues, ascending. The two parity sectors are diagonalized separately.
std::vector<double> spectrum(const BasisHamiltonian& h, int count);
std::vector<double> spectrum(double gamma, double eta, int cutoff, int count);

struct EdEigenstates {
  std::vector<BasisState> basis;
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< columns in the full product basis
  double wavefunction(int level, double x1, double x2) const;
};
EdEigenstates eigenstates(const BasisHamiltonian& h, int count);

struct Extrapolation {
  double value;
  double slope;
  double max_rel_residual;
};

/// Least-squares fit E(N) = E_inf + c / N over >= 3 cutoffs.
Extrapolation extrapolate(const std::vector<std::pair<int, double>>& values);

struct ValidationEntry {
  int index;
  int n1, n2;
  int parity;
  double bethe;
  double ed;
  double abs_dev;
  double rel_dev;
  double tolerance;
  bool pass;
};

struct ValidationReport {
  double gamma;
  std::vector<int> cutoffs;
  std::vector<ValidationEntry> entries;
  bool all_pass() const;
};

/// Relative tolerance used for a given gamma.
double validation_tolerance(double gamma);

/// Compares Bethe energies (ascending) with extrapolated ED eigenvalues of the same index.
ValidationReport validate_energies(double gamma, const std::vector<double>& bethe,
                                   const std::vector<std::array<int, 3>>& labels,
                                   const std::vector<int>& cutoffs = {20, 30, 40});
/// Same, reusing interaction matrices built once per cutoff.
ValidationReport validate_energies(double gamma, const std::vector<double>& bethe,
                                   const std::vector<std::array<int, 3>>& labels,
                                   const std::vector<const InteractionMatrix*>& interactions);

}  // namespace twobody
