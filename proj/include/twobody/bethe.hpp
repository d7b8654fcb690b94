#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twobody/linalg.hpp"

namespace twobody {

/// Which transcendental system a root solves. `independent` marks the
/// interaction-independent triple states, which solve neither.
enum class Branch { cot, tan, independent };
const char* to_string(Branch b);

/// Natural units hbar = mu = L = 1, so g = gamma.
struct ModelParams {
  double L = 1.0;
  double hbar = 1.0;
  double mu = 1.0;
  double eta = 3.0;
  double gamma = 0.0;

  double g() const { return gamma * hbar * hbar / (mu * L); }
  double m1() const { return (1.0 + eta) * mu; }
  double m2() const { return (1.0 + eta) * mu / eta; }
};

/// Quasimomenta stored as anchor * pi + offset, so roots near the free
/// points (n1 pi, n2 pi) keep full relative precision in the offset.
struct BetheRoot {
  double k1 = 0.0;
  double k2 = 0.0;
  Branch branch = Branch::cot;
  double gamma = 0.0;
  double residual_norm = 0.0;
  std::array<long, 2> anchor{0, 0};
  std::array<double, 2> offset{0.0, 0.0};

  MomentumVector k() const { return {k1, k2}; }
  static BetheRoot make(Branch b, std::array<long, 2> anchor, std::array<double, 2> offset, double gamma);
};

struct SolverOptions {
  double step_tol = 1e-12;
  double residual_tol = 1e-10;
  int max_iterations = 100;
  double fd_step = 1e-7;
  bool reject_pole_crossing = true;
};

using Residual = std::array<double, 2>;

/// (f1, f2) of the chosen branch at finite gamma. Throws PoleError within 1e-13 of a pole.
Residual residual(Branch b, double k1, double k2, double gamma);
/// Same, evaluated from the anchored representation of the root.
Residual residual(const BetheRoot& r);
/// gamma -> infinity form: the bracketed cot (or tan) sums alone.
Residual limit_residual(Branch b, double k1, double k2);

/// max |f| / (1 + 2 gamma).
double scaled_residual_norm(const Residual& f, double gamma);

BetheRoot solve_root(Branch b, const MomentumVector& guess, double gamma, const SolverOptions& opts = {});

/// Genuine roots near (n1 pi, n2 pi) at small gamma0, both branches, orbit-deduplicated.
std::vector<BetheRoot> seed_roots(int n1, int n2, double gamma0 = 1e-4);

/// Warm-started geometric homotopy in gamma with step halving on failure.
BetheRoot continue_root(const BetheRoot& start, double gamma_target, int steps_per_decade = 16);

/// All moving roots that emanate from (n1 pi, n2 pi), continued to gamma_target, sorted by energy.
std::vector<BetheRoot> continue_level_all(int n1, int n2, double gamma_target, int steps_per_decade = 16);
/// The lowest of those.
BetheRoot continue_level(int n1, int n2, double gamma_target, int steps_per_decade = 16);

/// k' = -sz s sz k and k'' = sz s k, folded to the first quadrant.
std::pair<MomentumVector, MomentumVector> orbit_partners(const MomentumVector& k);

/// (k1^2 + 3 k2^2) / 8.
double energy(const MomentumVector& k);

/// First-quadrant orbit member with lexicographically smallest (k1, k2),
/// skipping members with a vanishing component.
MomentumVector canonical_representative(const MomentumVector& k);
/// Re-express a root by its canonical representative.
BetheRoot canonicalize(const BetheRoot& r);

/// True when the full coefficient system at (k, gamma) has a null vector.
bool is_genuine_root(const MomentumVector& k, double gamma);
double null_tolerance(double gamma);

struct SpectralLevel {
  int index = 0;
  double energy = 0.0;
  int parity = 1;
  std::array<int, 2> quantum_numbers{0, 0};
  BetheRoot root;
  std::array<MomentumVector, 3> orbit;
};

struct LevelFailure {
  std::array<int, 2> quantum_numbers;
  std::string stage;
  std::string message;
  double failing_gamma;
};

struct Spectrum {
  double gamma = 0.0;
  std::vector<SpectralLevel> levels;
  std::vector<LevelFailure> failures;
};

Spectrum enumerate_spectrum(double gamma, int count);

/// (n1, n2) pairs that share the free energy with (n1, n2) under D6, or empty.
std::optional<std::pair<std::array<int, 2>, std::array<int, 2>>> triple_partners(int n1, int n2);

/// gamma = infinity levels: k = (l1 pi, l2 pi / 3) with the whole orbit solving the limit system.
std::vector<SpectralLevel> hardcore_levels(int count);

/// True if every orbit member of k solves the limit system and the orbit is non-degenerate.
bool hardcore_admissible(const MomentumVector& k);

}  // namespace twobody
