#include "twobody/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "twobody/dihedral.hpp"
#include "twobody/errors.hpp"
#include "twobody/wavefunction.hpp"

namespace twobody {

namespace {

constexpr double kPoleTol = 1e-13;

long mod4(long m) { return ((m % 4) + 4) % 4; }

// sin and cos of (m pi / 2 + y) without forming the sum.
void sincos_shifted(long m, double y, double& s, double& c) {
  const double sy = std::sin(y);
  const double cy = std::cos(y);
  switch (mod4(m)) {
    case 0: s = sy; c = cy; break;
    case 1: s = cy; c = -sy; break;
    case 2: s = -sy; c = -cy; break;
    default: s = -cy; c = sy; break;
  }
}

// Trig arguments of the equations, each as (m, y) with value m pi / 2 + y:
// A = (k1 + k2) / 2, B = k2, C = (k1 - k2) / 2.
struct Args {
  long m[3];
  double y[3];
};

Args make_args(long n1, long n2, double d1, double d2) {
  return {{n1 + n2, 2 * n2, n1 - n2}, {0.5 * (d1 + d2), d2, 0.5 * (d1 - d2)}};
}

double trig_term(Branch b, long m, double y) {
  double s, c;
  sincos_shifted(m, y, s, c);
  if (b == Branch::cot) {
    if (std::abs(s) < kPoleTol) throw PoleError("cot argument at a pole");
    return c / s;
  }
  if (std::abs(c) < kPoleTol) throw PoleError("tan argument at a pole");
  return s / c;
}

std::array<double, 3> trig_terms(Branch b, const Args& a) {
  return {trig_term(b, a.m[0], a.y[0]), trig_term(b, a.m[1], a.y[1]), trig_term(b, a.m[2], a.y[2])};
}

// Smallest |sin| (cot) or |cos| (tan) over the three arguments.
double pole_distance(Branch b, const Args& a) {
  double d = 1.0;
  for (int i = 0; i < 3; ++i) {
    double s, c;
    sincos_shifted(a.m[i], a.y[i], s, c);
    d = std::min(d, std::abs(b == Branch::cot ? s : c));
  }
  return d;
}

// Index of the pole-free cell containing each argument.
std::array<long, 3> pole_cells(Branch b, const Args& a) {
  std::array<long, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double v = a.m[i] * 0.5 + a.y[i] / pi;  // argument in units of pi
    out[i] = static_cast<long>(std::floor(b == Branch::cot ? v : v - 0.5));
  }
  return out;
}

Residual eval_anchored(Branch b, long n1, long n2, double d1, double d2, double gamma) {
  if (b == Branch::independent) throw DomainError("independent levels have no residual");
  const double k1 = n1 * pi + d1;
  const double k2 = n2 * pi + d2;
  const auto t = trig_terms(b, make_args(n1, n2, d1, d2));
  const double sgn = b == Branch::cot ? -2.0 * gamma : 2.0 * gamma;
  return {k1 + 3 * k2 + sgn * (t[0] + t[1]), k1 - 3 * k2 + sgn * (t[2] - t[1])};
}

std::array<long, 2> nearest_anchor(const MomentumVector& k) {
  return {std::lround(k.k1 / pi), std::lround(k.k2 / pi)};
}

struct Solved {
  std::array<double, 2> d;
  double res;
};

Solved newton(Branch b, std::array<long, 2> n, std::array<double, 2> d, double gamma, const SolverOptions& o) {
  auto F = [&](double a, double c) { return eval_anchored(b, n[0], n[1], a, c, gamma); };
  auto norm = [&](const Residual& f) { return scaled_residual_norm(f, gamma); };
  Residual f = F(d[0], d[1]);
  double res = norm(f);
  for (int it = 0; it < o.max_iterations; ++it) {
    if (!std::isfinite(res)) throw SolverError("non-finite residual");
    const Args args = make_args(n[0], n[1], d[0], d[1]);
    const double h = std::min(o.fd_step, 1e-2 * pole_distance(b, args));
    Eigen::Matrix2d J;
    const Residual a1 = F(d[0] + h, d[1]), b1 = F(d[0] - h, d[1]);
    const Residual a2 = F(d[0], d[1] + h), b2 = F(d[0], d[1] - h);
    for (int r = 0; r < 2; ++r) {
      J(r, 0) = (a1[r] - b1[r]) / (2 * h);
      J(r, 1) = (a2[r] - b2[r]) / (2 * h);
    }
    if (!J.allFinite() || std::abs(J.determinant()) < 1e-300) throw SolverError("singular Jacobian");
    const Eigen::Vector2d step = -J.partialPivLu().solve(Eigen::Vector2d(f[0], f[1]));
    if (!step.allFinite()) throw SolverError("non-finite Newton step");

    const auto cells0 = pole_cells(b, args);
    double lambda = 1.0;
    bool accepted = false;
    bool crossed = false;
    std::array<double, 2> dn{};
    Residual fn{};
    double rn = 0.0;
    for (int ls = 0; ls < 12; ++ls, lambda *= 0.5) {
      dn = {d[0] + lambda * step(0), d[1] + lambda * step(1)};
      if (o.reject_pole_crossing && pole_cells(b, make_args(n[0], n[1], dn[0], dn[1])) != cells0) {
        crossed = true;
        continue;
      }
      try {
        fn = F(dn[0], dn[1]);
      } catch (const PoleError&) {
        continue;
      }
      rn = norm(fn);
      if (std::isfinite(rn) && (rn < res || rn <= o.residual_tol)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (res <= o.residual_tol) return {d, res};
      if (crossed) throw PoleCrossingError("Newton step crosses a pole");
      throw SolverError("line search failed");
    }
    const double dx = lambda * step.cwiseAbs().maxCoeff();
    d = dn;
    f = fn;
    res = rn;
    if (res <= o.residual_tol && (dx <= o.step_tol * std::max(1.0, std::abs(n[0] * pi + d[0]) + std::abs(n[1] * pi + d[1])) || res < 1e-15)) {
      return {d, res};
    }
  }
  if (res <= o.residual_tol) return {d, res};
  throw SolverError("Newton did not converge in " + std::to_string(o.max_iterations) + " iterations");
}

BetheRoot solve_anchored(Branch b, std::array<long, 2> n, std::array<double, 2> d, double gamma,
                         const SolverOptions& o) {
  const Solved s = newton(b, n, d, gamma, o);
  BetheRoot r = BetheRoot::make(b, n, s.d, gamma);
  r.residual_norm = s.res;
  return r;
}

double seed_energy(int n1, int n2) { return (n1 * n1 + 3.0 * n2 * n2) / 8.0; }

bool same_orbit(const MomentumVector& a, const MomentumVector& b) {
  return canonical_representative(a).approx_equal(canonical_representative(b), 1e-8 * pi);
}

std::array<int, 2> canonical_integer_pair(int n1, int n2) {
  auto tp = triple_partners(n1, n2);
  std::array<int, 2> best{n1, n2};
  if (tp) best = std::min({best, tp->first, tp->second});
  return best;
}

int parity_of(const BetheRoot& r, double gamma, std::vector<LevelFailure>& failures, std::array<int, 2> qn) {
  try {
    const auto c = assemble_coefficients(r, gamma);
    return parity_check(c).sign;
  } catch (const std::exception& e) {
    failures.push_back({qn, "parity", e.what(), gamma});
    return r.branch == Branch::tan ? -1 : 1;
  }
}

SpectralLevel make_level(const BetheRoot& r, std::array<int, 2> qn, int parity) {
  SpectralLevel lv;
  lv.energy = energy(r.k());
  lv.parity = parity;
  lv.quantum_numbers = qn;
  lv.root = r;
  const auto [kp, kpp] = orbit_partners(r.k());
  lv.orbit = {r.k(), kp, kpp};
  return lv;
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::cot: return "cot";
    case Branch::tan: return "tan";
    case Branch::independent: return "independent";
  }
  return "unknown";
}

BetheRoot BetheRoot::make(Branch b, std::array<long, 2> n, std::array<double, 2> d, double gamma) {
  BetheRoot r;
  r.branch = b;
  r.gamma = gamma;
  r.anchor = n;
  r.offset = d;
  r.k1 = n[0] * pi + d[0];
  r.k2 = n[1] * pi + d[1];
  return r;
}

Residual residual(Branch b, double k1, double k2, double gamma) {
  if (!std::isfinite(k1) || !std::isfinite(k2)) throw DomainError("residual: non-finite momentum");
  if (gamma < 0 || !std::isfinite(gamma)) throw DomainError("residual: gamma must be finite and >= 0");
  const auto n = nearest_anchor({k1, k2});
  return eval_anchored(b, n[0], n[1], k1 - n[0] * pi, k2 - n[1] * pi, gamma);
}

Residual residual(const BetheRoot& r) {
  return eval_anchored(r.branch, r.anchor[0], r.anchor[1], r.offset[0], r.offset[1], r.gamma);
}

Residual limit_residual(Branch b, double k1, double k2) {
  if (b == Branch::independent) throw DomainError("independent levels have no residual");
  const auto n = nearest_anchor({k1, k2});
  const auto t = trig_terms(b, make_args(n[0], n[1], k1 - n[0] * pi, k2 - n[1] * pi));
  return {t[0] + t[1], t[2] - t[1]};
}

double scaled_residual_norm(const Residual& f, double gamma) {
  return std::max(std::abs(f[0]), std::abs(f[1])) / (1.0 + 2.0 * gamma);
}

BetheRoot solve_root(Branch b, const MomentumVector& guess, double gamma, const SolverOptions& opts) {
  if (!guess.finite()) throw DomainError("solve_root: non-finite guess");
  if (gamma < 0 || !std::isfinite(gamma)) throw DomainError("solve_root: gamma must be finite and >= 0");
  const auto n = nearest_anchor(guess);
  return solve_anchored(b, n, {guess.k1 - n[0] * pi, guess.k2 - n[1] * pi}, gamma, opts);
}

double null_tolerance(double gamma) { return std::min(1e-9, 1e-3 * gamma); }

bool is_genuine_root(const MomentumVector& k, double gamma) {
  return nullspace_info(k, gamma).smallest_ratio < null_tolerance(gamma);
}

std::vector<BetheRoot> seed_roots(int n1, int n2, double gamma0) {
  if (n1 < 1 || n2 < 1) throw DomainError("seed quantum numbers must be positive");
  if (!(gamma0 > 0)) throw DomainError("seed gamma must be positive");
  SolverOptions o;
  o.reject_pole_crossing = false;
  o.max_iterations = 60;
  const int n_radii = 14, n_angles = 12;
  const double r_lo = 1e-2 * gamma0, r_hi = std::min(0.05, 300.0 * gamma0);
  std::vector<BetheRoot> found;
  std::vector<MomentumVector> rejected;
  for (Branch b : {Branch::cot, Branch::tan}) {
    for (int i = 0; i < n_radii; ++i) {
      const double rho = r_lo * std::pow(r_hi / r_lo, i / double(n_radii - 1));
      for (int j = 0; j < n_angles; ++j) {
        const double th = 2 * pi * j / n_angles + 0.1;
        BetheRoot r;
        try {
          r = solve_anchored(b, {n1, n2}, {rho * std::cos(th), rho * std::sin(th)}, gamma0, o);
        } catch (const std::runtime_error&) {
          continue;
        }
        if (std::hypot(r.offset[0], r.offset[1]) > 0.1 || r.anchor != std::array<long, 2>{n1, n2}) continue;
        const auto k = r.k();
        auto match = [&](const MomentumVector& q) { return same_orbit(q, k); };
        if (std::any_of(found.begin(), found.end(), [&](const BetheRoot& f) { return f.branch == b && match(f.k()); })) continue;
        if (std::any_of(rejected.begin(), rejected.end(), match)) continue;
        if (is_genuine_root(k, gamma0)) {
          found.push_back(r);
        } else {
          rejected.push_back(k);
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const BetheRoot& a, const BetheRoot& b) { return energy(a.k()) < energy(b.k()); });
  return found;
}

BetheRoot continue_root(const BetheRoot& start, double gamma_target, int steps_per_decade) {
  if (!(gamma_target > 0) || !std::isfinite(gamma_target)) throw DomainError("continuation target must be positive and finite");
  if (!(start.gamma > 0)) throw DomainError("continuation must start at gamma > 0");
  if (steps_per_decade < 1) throw DomainError("steps_per_decade must be >= 1");
  SolverOptions o;
  const double nominal = std::log(10.0) / steps_per_decade;
  const double dir = gamma_target > start.gamma ? 1.0 : -1.0;
  double h = nominal;
  BetheRoot cur = start;
  std::optional<BetheRoot> prev;
  while (cur.gamma != gamma_target) {
    const double lg = std::log(cur.gamma);
    const double lt = std::log(gamma_target);
    double g_next = std::exp(lg + dir * h);
    if ((dir > 0 && g_next >= gamma_target * (1 - 1e-12)) || (dir < 0 && g_next <= gamma_target * (1 + 1e-12))) g_next = gamma_target;
    (void)lt;

    // Predictors: secant in gamma through the last two roots, else proportional offset growth.
    std::vector<MomentumVector> guesses;
    const MomentumVector kc = cur.k();
    if (prev) {
      const double w = (g_next - cur.gamma) / (cur.gamma - prev->gamma);
      guesses.push_back(kc + w * (kc - prev->k()));
    } else {
      const MomentumVector base{cur.anchor[0] * pi, cur.anchor[1] * pi};
      guesses.push_back(base + (g_next / cur.gamma) * (kc - base));
    }
    guesses.push_back(kc);

    std::optional<BetheRoot> next;
    for (const auto& g : guesses) {
      try {
        BetheRoot r = solve_root(cur.branch, g, g_next, o);
        const MomentumVector dk = r.k() - kc;
        if (std::max(std::abs(dk.k1), std::abs(dk.k2)) > 0.25) continue;
        if (!is_genuine_root(r.k(), g_next)) continue;
        next = r;
        break;
      } catch (const std::runtime_error&) {
      }
    }
    if (!next) {
      h *= 0.5;
      if (h < 1e-6) throw ContinuationError("continuation stalled", cur.gamma);
      continue;
    }
    prev = cur;
    cur = *next;
    h = std::min(nominal, 2 * h);
  }
  return cur;
}

std::vector<BetheRoot> continue_level_all(int n1, int n2, double gamma_target, int steps_per_decade) {
  if (n1 < 1 || n2 < 1) throw DomainError("quantum numbers must be positive");
  if (gamma_target < 0 || !std::isfinite(gamma_target)) throw DomainError("gamma_target must be finite and >= 0");
  if (gamma_target == 0.0) {
    BetheRoot r = BetheRoot::make((n1 + n2) % 2 == 0 ? Branch::cot : Branch::tan, {n1, n2}, {0.0, 0.0}, 0.0);
    return {r};
  }
  const double g0 = std::min(1e-4, gamma_target);
  std::vector<BetheRoot> out;
  for (const auto& s : seed_roots(n1, n2, g0)) {
    out.push_back(gamma_target == g0 ? s : continue_root(s, gamma_target, steps_per_decade));
  }
  if (out.empty()) throw SolverError("no genuine root found near the seed");
  std::sort(out.begin(), out.end(), [](const BetheRoot& a, const BetheRoot& b) { return energy(a.k()) < energy(b.k()); });
  return out;
}

BetheRoot continue_level(int n1, int n2, double gamma_target, int steps_per_decade) {
  return continue_level_all(n1, n2, gamma_target, steps_per_decade).front();
}

std::pair<MomentumVector, MomentumVector> orbit_partners(const MomentumVector& k) {
  const Matrix2 s = scattering_matrix(3.0);
  const Matrix2 sz = sigma_z();
  const MomentumVector kp = apply_element(-sz * s * sz, k).folded();
  const MomentumVector kpp = apply_element(sz * s, k).folded();
  return {kp, kpp};
}

double energy(const MomentumVector& k) { return (k.k1 * k.k1 + 3.0 * k.k2 * k.k2) / 8.0; }

MomentumVector canonical_representative(const MomentumVector& k) {
  static const DihedralGroup g = dihedral_group_for(3.0);
  const double eps = 1e-9 * std::max(1.0, k.norm());
  std::optional<MomentumVector> best;
  for (const auto& d : g.elements) {
    const MomentumVector q = apply_element(d, k).folded();
    if (q.k1 <= eps || q.k2 <= eps) continue;
    if (!best || q.k1 < best->k1 - 1e-9 || (std::abs(q.k1 - best->k1) <= 1e-9 && q.k2 < best->k2)) best = q;
  }
  return best ? *best : k.folded();
}

BetheRoot canonicalize(const BetheRoot& r) {
  const MomentumVector c = canonical_representative(r.k());
  if (c.approx_equal(r.k(), 1e-12)) return r;
  const auto n = nearest_anchor(c);
  BetheRoot out = BetheRoot::make(r.branch, n, {c.k1 - n[0] * pi, c.k2 - n[1] * pi}, r.gamma);
  out.residual_norm = r.branch == Branch::independent ? 0.0 : scaled_residual_norm(residual(out), r.gamma);
  return out;
}

std::optional<std::pair<std::array<int, 2>, std::array<int, 2>>> triple_partners(int n1, int n2) {
  if (n1 < 1 || n2 < 1) return std::nullopt;
  if ((n1 + n2) % 2 != 0 || n1 == n2 || n1 == 3 * n2) return std::nullopt;
  // s (n1, n2) = ((n1 + 3 n2) / 2, (n1 - n2) / 2); s sz (n1, n2) = ((n1 - 3 n2) / 2, (n1 + n2) / 2).
  std::array<int, 2> a{(n1 + 3 * n2) / 2, std::abs(n1 - n2) / 2};
  std::array<int, 2> b{std::abs(n1 - 3 * n2) / 2, (n1 + n2) / 2};
  return std::make_pair(a, b);
}

Spectrum enumerate_spectrum(double gamma, int count) {
  if (count < 1) throw DomainError("count must be >= 1");
  if (gamma < 0 || !std::isfinite(gamma)) throw DomainError("gamma must be finite and >= 0");
  Spectrum out;
  out.gamma = gamma;

  std::vector<std::array<int, 2>> seeds;
  const int nmax = 8 + 4 * static_cast<int>(std::ceil(std::sqrt(count)));
  for (int a = 1; a <= 3 * nmax; ++a)
    for (int b = 1; b <= nmax; ++b) seeds.push_back({a, b});
  std::sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) {
    const double ex = seed_energy(x[0], x[1]), ey = seed_energy(y[0], y[1]);
    return ex != ey ? ex < ey : x < y;
  });

  auto kth_energy = [&]() {
    std::vector<double> e;
    for (const auto& l : out.levels) e.push_back(l.energy);
    std::sort(e.begin(), e.end());
    return e[static_cast<std::size_t>(count) - 1];
  };

  std::set<std::array<int, 2>> processed;
  const double g0 = std::min(1e-4, gamma);
  for (const auto& sd : seeds) {
    if (static_cast<int>(out.levels.size()) >= count && seed_energy(sd[0], sd[1]) * pi * pi > kth_energy() + 1e-9) break;
    const auto key = canonical_integer_pair(sd[0], sd[1]);
    if (!processed.insert(key).second) continue;
    std::vector<std::array<int, 2>> members{sd};
    const auto tp = triple_partners(sd[0], sd[1]);
    if (tp) {
      members.push_back(tp->first);
      members.push_back(tp->second);
    }

    if (gamma == 0.0) {
      for (const auto& m : members) {
        const Branch b = (m[0] + m[1]) % 2 == 0 ? Branch::cot : Branch::tan;
        const BetheRoot r = BetheRoot::make(b, {m[0], m[1]}, {0.0, 0.0}, 0.0);
        out.levels.push_back(make_level(r, m, (m[0] + m[1]) % 2 == 0 ? 1 : -1));
      }
      continue;
    }

    std::vector<std::pair<BetheRoot, std::array<int, 2>>> starts;
    for (const auto& m : members) {
      try {
        for (const auto& s : seed_roots(m[0], m[1], g0)) {
          const bool dup = std::any_of(starts.begin(), starts.end(), [&](const auto& p) {
            return p.first.branch == s.branch && same_orbit(p.first.k(), s.k());
          });
          if (!dup) starts.emplace_back(s, sd);
        }
      } catch (const std::exception& e) {
        out.failures.push_back({m, "seed", e.what(), g0});
      }
    }
    if (starts.empty()) out.failures.push_back({sd, "seed", "no genuine root near the seed", g0});

    for (const auto& [s, qn] : starts) {
      try {
        BetheRoot r = gamma == g0 ? s : continue_root(s, gamma);
        r = canonicalize(r);
        const bool collide = std::any_of(out.levels.begin(), out.levels.end(), [&](const SpectralLevel& l) {
          return l.root.branch == r.branch && same_orbit(l.root.k(), r.k());
        });
        if (collide) {
          out.failures.push_back({qn, "continuation", "branch collision: two seeds converge to one root", gamma});
          continue;
        }
        out.levels.push_back(make_level(r, qn, parity_of(r, gamma, out.failures, qn)));
      } catch (const ContinuationError& e) {
        out.failures.push_back({qn, "continuation", e.what(), e.failing_gamma});
      } catch (const std::exception& e) {
        out.failures.push_back({qn, "continuation", e.what(), gamma});
      }
    }

    if (tp) {
      const MomentumVector k{sd[0] * pi, sd[1] * pi};
      if (is_genuine_root(k, gamma)) {
        BetheRoot r = canonicalize(BetheRoot::make(Branch::independent, {sd[0], sd[1]}, {0.0, 0.0}, gamma));
        out.levels.push_back(make_level(r, sd, parity_of(r, gamma, out.failures, sd)));
      } else {
        out.failures.push_back({sd, "independent", "triple state is not a null vector", gamma});
      }
    }
  }

  std::stable_sort(out.levels.begin(), out.levels.end(), [](const SpectralLevel& a, const SpectralLevel& b) { return a.energy < b.energy; });
  if (static_cast<int>(out.levels.size()) > count) out.levels.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < out.levels.size(); ++i) out.levels[i].index = static_cast<int>(i);
  return out;
}

bool hardcore_admissible(const MomentumVector& k) {
  static const DihedralGroup g = dihedral_group_for(3.0);
  const auto orbit = momentum_orbit(k, g);
  if (orbit.size() != g.order()) return false;
  const double eps = 1e-9 * std::max(1.0, k.norm());
  for (const auto& q : orbit) {
    if (std::abs(q.k1) <= eps || std::abs(q.k2) <= eps) return false;
    // Pole-free form of the limit system: both cot sums vanish iff these sines do.
    if (std::abs(std::sin(0.5 * (q.k1 + 3 * q.k2))) > 1e-9) return false;
    if (std::abs(std::sin(0.5 * (3 * q.k2 - q.k1))) > 1e-9) return false;
  }
  return true;
}

std::vector<SpectralLevel> hardcore_levels(int count) {
  if (count < 1) throw DomainError("count must be >= 1");
  std::vector<SpectralLevel> out;
  std::vector<MomentumVector> reps;
  for (double ecut = 2.0;; ecut *= 1.5) {
    out.clear();
    reps.clear();
    const int l1max = static_cast<int>(std::sqrt(8 * ecut)) + 1;
    const int l2max = static_cast<int>(3 * std::sqrt(8 * ecut / 3)) + 1;
    for (int l1 = 1; l1 <= l1max; ++l1) {
      for (int l2 = 1; l2 <= l2max; ++l2) {
        const MomentumVector k{l1 * pi, l2 * pi / 3.0};
        if (energy(k) > ecut * pi * pi) continue;
        if (!hardcore_admissible(k)) continue;
        const MomentumVector c = canonical_representative(k);
        if (std::any_of(reps.begin(), reps.end(), [&](const MomentumVector& r) { return r.approx_equal(c, 1e-8 * pi); })) continue;
        reps.push_back(c);
        const std::array<int, 2> qn{static_cast<int>(std::lround(c.k1 / pi)), static_cast<int>(std::lround(3 * c.k2 / pi))};
        const auto n = nearest_anchor(c);
        for (int parity : {1, -1}) {
          BetheRoot r = BetheRoot::make(parity > 0 ? Branch::cot : Branch::tan, n, {c.k1 - n[0] * pi, c.k2 - n[1] * pi},
                                        std::numeric_limits<double>::infinity());
          out.push_back(make_level(r, qn, parity));
        }
      }
    }
    if (static_cast<int>(out.size()) >= count) {
      // Everything at or below the count-th energy is complete once ecut exceeds it.
      std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
      if (out[static_cast<std::size_t>(count) - 1].energy < ecut * pi * pi) break;
    }
  }
  out.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

}  // namespace twobody
