#pragma once

#include <span>
#include <vector>

#include "twobody/linalg.hpp"

namespace twobody {

/// Masses for reduced mass mu = 1: m1 = 1 + eta, m2 = (1 + eta) / eta.
struct Masses {
  double m1;
  double m2;
};
Masses masses_for(double eta);

/// Two point particles in [-1/2, 1/2], particle 2 to the left (x2 <= x1).
struct BilliardState {
  double x1 = 0.0;
  double x2 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double eta = 1.0;
  double t = 0.0;

  double energy() const;
};

enum class EventKind { pair_scatter, left_wall_p2, right_wall_p1 };
const char* to_string(EventKind kind);

struct CollisionEvent {
  EventKind kind = EventKind::pair_scatter;
  double time = 0.0;  ///< time until the event, measured from the state's t
  MomentumVector post_momenta;
};

CollisionEvent next_event(const BilliardState& s);

/// Free flight to the event, then the momentum update. Positions at contact are snapped.
void apply_event(BilliardState& s, const CollisionEvent& e);

struct TrajectoryPoint {
  int index;
  double t;
  EventKind kind;
  MomentumVector k;
};

std::vector<TrajectoryPoint> simulate_trajectory(BilliardState initial, int n_events);

/// Momenta after each event.
std::vector<MomentumVector> simulate(const BilliardState& initial, int n_events);

std::size_t distinct_momentum_count(std::span<const MomentumVector> seq, double tol = 1e-8);

}  // namespace twobody
