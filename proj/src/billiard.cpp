#include "twobody/billiard.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "twobody/dihedral.hpp"
#include "twobody/errors.hpp"

namespace twobody {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalf = 0.5;
constexpr double kTieTol = 1e-12;

}  // namespace

Masses masses_for(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("mass ratio must be positive and finite");
  return {1.0 + eta, (1.0 + eta) / eta};
}

double BilliardState::energy() const {
  const auto m = masses_for(eta);
  return k1 * k1 / (2 * m.m1) + k2 * k2 / (2 * m.m2);
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::pair_scatter: return "pair_scatter";
    case EventKind::left_wall_p2: return "left_wall_p2";
    case EventKind::right_wall_p1: return "right_wall_p1";
  }
  return "unknown";
}

CollisionEvent next_event(const BilliardState& s) {
  if (!(std::abs(s.x1) <= kHalf + 1e-12 && std::abs(s.x2) <= kHalf + 1e-12 && s.x2 <= s.x1 + 1e-12)) {
    throw DomainError("billiard state violates -1/2 <= x2 <= x1 <= 1/2");
  }
  if (s.k1 == 0.0 && s.k2 == 0.0) throw SolverError("stuck state: both momenta are zero");
  const auto m = masses_for(s.eta);
  const double v1 = s.k1 / m.m1;
  const double v2 = s.k2 / m.m2;

  const double t_right = v1 > 0 ? (kHalf - s.x1) / v1 : kInf;
  const double t_left = v2 < 0 ? (-kHalf - s.x2) / v2 : kInf;
  const double t_pair = v2 > v1 ? (s.x1 - s.x2) / (v2 - v1) : kInf;

  CollisionEvent e;
  const double t_wall = std::min(t_right, t_left);
  if (!std::isfinite(t_wall) && !std::isfinite(t_pair)) throw SolverError("no future event");
  if (t_wall <= t_pair + kTieTol * (1.0 + s.t)) {
    if (t_right <= t_left) {
      e.kind = EventKind::right_wall_p1;
      e.time = t_right;
      e.post_momenta = {-s.k1, s.k2};
    } else {
      e.kind = EventKind::left_wall_p2;
      e.time = t_left;
      e.post_momenta = {s.k1, -s.k2};
    }
  } else {
    e.kind = EventKind::pair_scatter;
    e.time = t_pair;
    e.post_momenta = apply_element(scattering_matrix(s.eta), {s.k1, s.k2});
  }
  e.time = std::max(e.time, 0.0);
  if (!std::isfinite(e.time)) throw SolverError("non-finite event time");
  return e;
}

void apply_event(BilliardState& s, const CollisionEvent& e) {
  const auto m = masses_for(s.eta);
  s.x1 += e.time * s.k1 / m.m1;
  s.x2 += e.time * s.k2 / m.m2;
  s.t += e.time;
  switch (e.kind) {
    case EventKind::right_wall_p1: s.x1 = kHalf; break;
    case EventKind::left_wall_p2: s.x2 = -kHalf; break;
    case EventKind::pair_scatter: s.x1 = s.x2 = 0.5 * (s.x1 + s.x2); break;
  }
  s.x1 = std::clamp(s.x1, -kHalf, kHalf);
  s.x2 = std::clamp(s.x2, -kHalf, s.x1);
  s.k1 = e.post_momenta.k1;
  s.k2 = e.post_momenta.k2;
}

std::vector<TrajectoryPoint> simulate_trajectory(BilliardState s, int n_events) {
  if (n_events < 1) throw DomainError("n_events must be >= 1");
  const double e0 = s.energy();
  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(n_events));
  for (int i = 0; i < n_events; ++i) {
    const CollisionEvent e = next_event(s);
    apply_event(s, e);
    if (!std::isfinite(s.t)) throw SolverError("non-finite event time at event " + std::to_string(i));
    if (std::abs(s.energy() - e0) > 1e-9 * std::max(e0, 1e-300)) {
      throw SolverError("energy drift beyond 1e-9 at event " + std::to_string(i));
    }
    out.push_back({i, s.t, e.kind, {s.k1, s.k2}});
  }
  return out;
}

std::vector<MomentumVector> simulate(const BilliardState& initial, int n_events) {
  std::vector<MomentumVector> out;
  for (const auto& p : simulate_trajectory(initial, n_events)) out.push_back(p.k);
  return out;
}

std::size_t distinct_momentum_count(std::span<const MomentumVector> seq, double tol) {
  std::vector<MomentumVector> v(seq.begin(), seq.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.k1 < b.k1; });
  // Representatives sorted by k1; a new vector only needs comparing against those within tol in k1.
  std::vector<MomentumVector> reps;
  for (const auto& q : v) {
    bool seen = false;
    for (auto it = reps.rbegin(); it != reps.rend() && q.k1 - it->k1 <= tol; ++it) {
      if (std::abs(q.k2 - it->k2) <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(q);
  }
  return reps.size();
}

}  // namespace twobody
