#include "twobody/probe.hpp"

#include <algorithm>
#include <random>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "twobody/errors.hpp"

namespace twobody {

namespace {

using cplx = std::complex<double>;
const cplx I{0.0, 1.0};

struct PairData {
  double c;  // relative weight of p = d_j k; that of q = d_k k is -c
  cplx tjp, tkp;
};

PairData pair_data(const DihedralGroup& g, const PairCondition& pc, const MomentumVector& k) {
  const MomentumVector p = apply_element(g.elements[pc.j], k);
  const MomentumVector q = apply_element(g.elements[pc.k], k);
  return {(p.k1 - g.eta * p.k2) / (1.0 + g.eta), std::exp(-I * (p.k2 - p.k1)), std::exp(-I * (q.k2 - q.k1))};
}

// Residual functor for the local refinement: real and imaginary parts of every condition.
struct ProbeFunctor : Eigen::DenseFunctor<double> {
  const DihedralGroup* g;
  const std::vector<PairCondition>* conds;
  double gamma;
  ProbeFunctor(const DihedralGroup& g_, const std::vector<PairCondition>& c, double gm)
      : Eigen::DenseFunctor<double>(2, static_cast<int>(2 * c.size())), g(&g_), conds(&c), gamma(gm) {}
  int operator()(const InputType& x, ValueType& f) const {
    for (std::size_t i = 0; i < conds->size(); ++i) {
      const cplx d = pair_determinant(*g, (*conds)[i], {x(0), x(1)}, gamma);
      f(static_cast<Eigen::Index>(2 * i)) = d.real();
      f(static_cast<Eigen::Index>(2 * i + 1)) = d.imag();
    }
    return 0;
  }
};

}  // namespace

double residual_over(const DihedralGroup& g, const std::vector<PairCondition>& conds, const MomentumVector& k,
                     double gamma) {
  double worst = 0.0;
  for (const auto& pc : conds) worst = std::max(worst, std::abs(pair_determinant(g, pc, k, gamma)));
  return worst;
}

std::vector<PairCondition> pair_conditions(const DihedralGroup& g) {
  const Matrix2 s = scattering_matrix(g.eta);
  std::vector<PairCondition> out;
  std::vector<bool> used(g.order(), false);
  for (std::size_t k = 0; k < g.order(); ++k) {
    if (used[k]) continue;
    const int j = g.find(s * g.elements[k]);
    if (j < 0) throw DomainError("s d_k is not a group element");
    used[k] = used[static_cast<std::size_t>(j)] = true;
    out.push_back({j, static_cast<int>(k)});
  }
  return out;
}

cplx pair_determinant(const DihedralGroup& g, const PairCondition& pc, const MomentumVector& k, double gamma) {
  const PairData d = pair_data(g, pc, k);
  const double c = d.c, g2 = 2.0 * gamma;
  const cplx tjm = 1.0 / d.tjp, tkm = 1.0 / d.tkp;
  Eigen::Matrix4cd M;
  M << I * c, -I * c, -I * c - g2, I * c - g2,
      -I * c * d.tjp, I * c * d.tkp, (I * c - g2) * tjm, (-I * c - g2) * tkm,
      1.0, 1.0, -1.0, -1.0,
      d.tjp, d.tkp, -tjm, -tkm;
  double scale = 1.0;
  for (int r = 0; r < 4; ++r) scale *= M.row(r).norm();
  return scale > 0 ? M.determinant() / scale : cplx(0.0);
}

double probe_residual(const DihedralGroup& g, const MomentumVector& k, double gamma) {
  return residual_over(g, pair_conditions(g), k, gamma);
}

bool probe_degenerate(const DihedralGroup& g, const MomentumVector& k, double tol) {
  const double scale = std::max(1.0, k.norm());
  if (std::abs(k.k1) < tol * scale || std::abs(k.k2) < tol * scale) return true;
  for (const auto& pc : pair_conditions(g)) {
    const PairData d = pair_data(g, pc, k);
    if (std::abs(d.c) < tol * scale) return true;
    if (std::abs(d.tjp * d.tjp - 1.0) < tol || std::abs(d.tkp * d.tkp - 1.0) < tol) return true;
  }
  return false;
}

ProbeReport constraint_rank_probe(double eta, double gamma, const KWindow& w) {
  const auto cls = nonergodicity_classify(eta);
  if (!cls) throw DomainError("probe needs a classified nonergodic mass ratio");
  if (!(gamma > 0) || !std::isfinite(gamma)) throw DomainError("probe gamma must be positive and finite");
  const DihedralGroup g = build_dihedral_group(*cls);
  const auto conds = pair_conditions(g);

  ProbeReport rep;
  rep.eta = eta;
  rep.l = cls->l;
  rep.n = cls->n;
  rep.group = g.name();
  rep.gamma = gamma;
  rep.coefficient_count = static_cast<int>(2 * g.order());
  rep.condition_count = static_cast<int>(conds.size());

  // Rank of the condition set as functions of k, from random samples off the degenerate set.
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uni(0.05 * w.k_max, w.k_max);
  Eigen::MatrixXcd S(w.rank_samples, static_cast<Eigen::Index>(conds.size()));
  for (int r = 0; r < w.rank_samples;) {
    const MomentumVector k{uni(rng), uni(rng)};
    if (probe_degenerate(g, k)) continue;
    for (std::size_t c = 0; c < conds.size(); ++c) S(r, static_cast<Eigen::Index>(c)) = pair_determinant(g, conds[c], k, gamma);
    ++r;
  }
  for (Eigen::Index c = 0; c < S.cols(); ++c) S.col(c).normalize();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(S).singularValues();
  rep.condition_singular_values.assign(sv.data(), sv.data() + sv.size());
  rep.independent_count = static_cast<int>((sv.array() > 1e-8 * sv(0)).count());

  // Residual scan for common zeros of all conditions, refined locally.
  const int n = w.grid;
  const double h = w.k_max / n;
  Eigen::MatrixXd R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = residual_over(g, conds, {(i + 1) * h, (j + 1) * h}, gamma);

  ProbeFunctor f(g, conds, gamma);
  Eigen::NumericalDiff<ProbeFunctor> nd(f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = R(i, j);
      if (v > w.start_threshold) continue;
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di, b = j + dj;
          if ((di || dj) && a >= 0 && b >= 0 && a < n && b < n && R(a, b) < v) {
            local_min = false;
            break;
          }
        }
      if (!local_min) continue;
      Eigen::VectorXd x(2);
      x << (i + 1) * h, (j + 1) * h;
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ProbeFunctor>> lm(nd);
      lm.setMaxfev(400);
      lm.minimize(x);
      const MomentumVector k{x(0), x(1)};
      if (!(k.k1 > 0 && k.k2 > 0 && k.k1 <= w.k_max && k.k2 <= w.k_max)) continue;
      if (probe_degenerate(g, k)) continue;
      const double res = residual_over(g, conds, k, gamma);
      if (res < rep.best_residual) {
        rep.best_residual = res;
        rep.best_k = k;
      }
      if (res < 1e-6) {
        const bool seen = std::any_of(rep.common_roots.begin(), rep.common_roots.end(),
                                      [&](const MomentumVector& q) { return q.approx_equal(k, 1e-6); });
        if (!seen) rep.common_roots.push_back(k);
      }
    }
  }
  rep.common_root_count = static_cast<int>(rep.common_roots.size());
  rep.solvable = rep.common_root_count > 0;
  rep.summary = std::string(rep.solvable ? "solvable" : "overdetermined") + ": " +
                std::to_string(rep.independent_count) + " independent conditions";
  return rep;
}

}  // namespace twobody
