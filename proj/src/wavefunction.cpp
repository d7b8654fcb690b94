#include "twobody/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "twobody/dihedral.hpp"
#include "twobody/errors.hpp"

namespace twobody {

namespace {

constexpr double kEta = 3.0;
constexpr int kNormGrid = 513;
const cplx I{0.0, 1.0};

const DihedralGroup& d6() {
  static const DihedralGroup g = dihedral_group_for(kEta);
  return g;
}

// Groups indices of `keys` whose values agree within tol.
std::vector<std::vector<int>> group_by(const std::vector<double>& keys, double tol) {
  std::vector<std::vector<int>> groups;
  std::vector<double> reps;
  for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
    bool placed = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (std::abs(keys[i] - reps[g]) <= tol) {
        groups[g].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      reps.push_back(keys[i]);
      groups.push_back({i});
    }
  }
  return groups;
}

// Singular values in decreasing order, padded with zeros when the matrix is wide.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  if (s.size() < m.cols()) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(m.cols());
    p.head(s.size()) = s;
    return p;
  }
  return s;
}

NullspaceInfo ratios(const Eigen::VectorXd& s) {
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (!(smax > 0)) return {1.0, 1.0};
  const Eigen::Index n = s.size();
  return {s(n - 1) / smax, n >= 2 ? s(n - 2) / smax : 1.0};
}

void require_in_box(double x1, double x2) {
  if (std::abs(x1) > 0.5 + 1e-15 || std::abs(x2) > 0.5 + 1e-15) throw DomainError("point outside the box");
}

// Separable tables e^{i p1 x_i}, e^{i p2 x_j} on the uniform grid.
struct PlaneWaveTables {
  int res;
  std::vector<cplx> e1, e2;  // [term * res + i]
  PlaneWaveTables(const std::vector<MomentumVector>& p, int res_) : res(res_) {
    e1.resize(p.size() * res);
    e2.resize(p.size() * res);
    for (std::size_t t = 0; t < p.size(); ++t) {
      for (int i = 0; i < res; ++i) {
        const double x = DensityGrid::coordinate(i, res);
        e1[t * res + i] = std::exp(I * (p[t].k1 * x));
        e2[t * res + i] = std::exp(I * (p[t].k2 * x));
      }
    }
  }
};

// Psi on the full grid, region-resolved; out[i * res + j] = Psi(x_i, x_j).
std::vector<cplx> psi_on_grid(const CoefficientSet& c, int res) {
  PlaneWaveTables tab(c.momenta, res);
  std::vector<cplx> out(static_cast<std::size_t>(res) * res);
  const std::size_t nt = c.momenta.size();
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const auto& A = j <= i ? c.plus : c.minus;  // x2 <= x1 is region +
      cplx s = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        if (A[t] != 0.0) s += A[t] * tab.e1[t * res + i] * tab.e2[t * res + j];
      }
      out[static_cast<std::size_t>(i) * res + j] = s;
    }
  }
  return out;
}

double trapezoid_2d(const std::vector<double>& f, int res) {
  const double h = 1.0 / (res - 1);
  double sum = 0.0;
  for (int i = 0; i < res; ++i) {
    const double wi = (i == 0 || i == res - 1) ? 0.5 : 1.0;
    for (int j = 0; j < res; ++j) {
      const double wj = (j == 0 || j == res - 1) ? 0.5 : 1.0;
      sum += wi * wj * f[static_cast<std::size_t>(i) * res + j];
    }
  }
  return sum * h * h;
}

cplx sum_diag(const std::vector<MomentumVector>& p, const std::vector<cplx>& A, double y, bool derivative) {
  cplx s = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (A[t] == 0.0) continue;
    const cplx w = A[t] * std::exp(I * ((p[t].k1 + p[t].k2) * y));
    s += derivative ? I * relative_weight(p[t]) * w : w;
  }
  return s;
}

}  // namespace

double relative_weight(const MomentumVector& p) { return (p.k1 - kEta * p.k2) / (1.0 + kEta); }

cplx phase_prefactor(const MomentumVector& p, int region) {
  return std::exp(-static_cast<double>(region) * I * (p.k2 - p.k1));
}

ConstraintSystem build_constraint_system(const MomentumVector& k, double gamma) {
  if (!k.finite() || !(gamma >= 0) || !std::isfinite(gamma)) throw DomainError("constraint system: bad input");
  const auto& g = d6();
  ConstraintSystem sys;
  const double tol = 1e-9 * std::max(1.0, k.norm());
  for (const auto& d : g.elements) sys.momenta.push_back(apply_element(d, k));
  for (const auto& q : sys.momenta) {
    int idx = -1;
    for (std::size_t j = 0; j < sys.distinct.size(); ++j) {
      if (sys.distinct[j].approx_equal(q, tol)) {
        idx = static_cast<int>(j);
        break;
      }
    }
    if (idx < 0) {
      idx = static_cast<int>(sys.distinct.size());
      sys.distinct.push_back(q);
    }
    sys.column_of.push_back(idx);
  }
  const int m = static_cast<int>(sys.distinct.size());
  std::vector<double> p1, p2, P;
  for (const auto& q : sys.distinct) {
    p1.push_back(q.k1);
    p2.push_back(q.k2);
    P.push_back(q.k1 + q.k2);
  }
  std::vector<Eigen::RowVectorXcd> rows;
  auto blank = [&] { return Eigen::RowVectorXcd::Zero(2 * m).eval(); };

  // Walls x1 = +-1/2: each distinct k2 frequency must cancel.
  for (const auto& grp : group_by(p2, tol)) {
    auto rp = blank(), rm = blank();
    for (int t : grp) {
      rp(t) = std::exp(I * (0.5 * p1[t]));
      rm(m + t) = std::exp(-I * (0.5 * p1[t]));
    }
    rows.push_back(rp);
    rows.push_back(rm);
  }
  // Walls x2 = -+1/2.
  for (const auto& grp : group_by(p1, tol)) {
    auto rp = blank(), rm = blank();
    for (int t : grp) {
      rp(t) = std::exp(-I * (0.5 * p2[t]));
      rm(m + t) = std::exp(I * (0.5 * p2[t]));
    }
    rows.push_back(rp);
    rows.push_back(rm);
  }
  // Diagonal: continuity and the derivative jump, per total momentum.
  for (const auto& grp : group_by(P, tol)) {
    auto rc = blank(), rj = blank();
    for (int t : grp) {
      const double c = relative_weight(sys.distinct[t]);
      rc(t) = 1.0;
      rc(m + t) = -1.0;
      rj(t) = I * c - gamma;
      rj(m + t) = -I * c - gamma;
    }
    rows.push_back(rc);
    rows.push_back(rj);
  }
  sys.matrix.resize(static_cast<Eigen::Index>(rows.size()), 2 * m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double nr = rows[r].norm();
    sys.matrix.row(static_cast<Eigen::Index>(r)) = nr > 0 ? (rows[r] / nr).eval() : rows[r];
  }
  return sys;
}

NullspaceInfo nullspace_info(const MomentumVector& k, double gamma) {
  return ratios(singular_values(build_constraint_system(k, gamma).matrix));
}

bool nullspace_degenerate(const NullspaceInfo& info) {
  return info.second_ratio < std::max(1e-11, 1e4 * info.smallest_ratio);
}

cplx CoefficientSet::psi_plus(double x1, double x2) const {
  cplx s = 0.0;
  for (std::size_t t = 0; t < momenta.size(); ++t) {
    if (plus[t] != 0.0) s += plus[t] * std::exp(I * (momenta[t].k1 * x1 + momenta[t].k2 * x2));
  }
  return s;
}

cplx CoefficientSet::psi_minus(double x1, double x2) const {
  cplx s = 0.0;
  for (std::size_t t = 0; t < momenta.size(); ++t) {
    if (minus[t] != 0.0) s += minus[t] * std::exp(I * (momenta[t].k1 * x1 + momenta[t].k2 * x2));
  }
  return s;
}

CoefficientSet assemble_coefficients(const BetheRoot& root, double gamma) {
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw DomainError("assemble_coefficients: gamma must be finite and >= 0");
  const ConstraintSystem sys = build_constraint_system(root.k(), gamma);
  Eigen::MatrixXcd M = sys.matrix;
  if (M.rows() < M.cols()) {
    M.conservativeResize(M.cols(), Eigen::NoChange);
    M.bottomRows(M.cols() - sys.matrix.rows()).setZero();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const NullspaceInfo info = ratios(svd.singularValues());

  CoefficientSet c;
  c.root = root;
  c.gamma = gamma;
  c.smallest_ratio = info.smallest_ratio;
  c.second_ratio = info.second_ratio;
  if (info.smallest_ratio > 1e-8) throw NullspaceError("empty nullspace: not a root of the coefficient system");
  if (nullspace_degenerate(info)) throw NullspaceError("degenerate nullspace (dimension >= 2)");

  Eigen::VectorXcd v = svd.matrixV().col(M.cols() - 1);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  v *= std::conj(v(imax)) / std::abs(v(imax));
  v(imax) = std::abs(v(imax));
  c.constraint_residual = (sys.matrix * v).norm() / v.norm();

  const int m = static_cast<int>(sys.distinct.size());
  c.momenta = sys.momenta;
  c.plus.assign(sys.momenta.size(), 0.0);
  c.minus.assign(sys.momenta.size(), 0.0);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  for (std::size_t j = 0; j < sys.momenta.size(); ++j) {
    const int col = sys.column_of[j];
    if (used[col]) continue;  // repeated momentum: amplitude carried by its first element
    used[col] = true;
    c.plus[j] = v(col);
    c.minus[j] = v(m + col);
  }

  const auto psi = psi_on_grid(c, kNormGrid);
  std::vector<double> rho(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
  const double integral = trapezoid_2d(rho, kNormGrid);
  if (!(integral > 0)) throw NullspaceError("null vector gives a vanishing wavefunction");
  c.norm = std::sqrt(integral);
  for (auto& a : c.plus) a /= c.norm;
  for (auto& a : c.minus) a /= c.norm;
  return c;
}

cplx evaluate_psi(const CoefficientSet& c, double x1, double x2) {
  require_in_box(x1, x2);
  return x2 <= x1 ? c.psi_plus(x1, x2) : c.psi_minus(x1, x2);
}

double psi_sup_norm(const CoefficientSet& c, int res) {
  double mx = 0.0;
  for (const auto& v : psi_on_grid(c, res)) mx = std::max(mx, std::abs(v));
  return mx;
}

double wall_residual(const CoefficientSet& c, int samples) {
  double mx = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = DensityGrid::coordinate(i, samples);
    mx = std::max({mx, std::abs(c.psi_plus(0.5, y)), std::abs(c.psi_minus(-0.5, y)),
                   std::abs(c.psi_plus(y, -0.5)), std::abs(c.psi_minus(y, 0.5))});
  }
  return mx / psi_sup_norm(c);
}

double continuity_mismatch(const CoefficientSet& c, int samples) {
  double mx = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = DensityGrid::coordinate(i, samples);
    mx = std::max(mx, std::abs(c.psi_plus(y, y) - c.psi_minus(y, y)));
  }
  return mx / psi_sup_norm(c);
}

double jump_condition_check(const CoefficientSet& c, double gamma, int samples) {
  if (samples < 10) throw DomainError("jump_condition_check needs >= 10 samples");
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = -0.5 + (i + 0.5) / samples;
    const cplx dp = sum_diag(c.momenta, c.plus, y, true);
    const cplx dm = sum_diag(c.momenta, c.minus, y, true);
    const cplx psi = 0.5 * (sum_diag(c.momenta, c.plus, y, false) + sum_diag(c.momenta, c.minus, y, false));
    worst = std::max(worst, std::abs(dp - dm - 2.0 * gamma * psi));
    scale = std::max({scale, std::abs(dp), std::abs(dm), 2.0 * gamma * std::abs(psi)});
  }
  return scale > 0 ? worst / scale : 0.0;
}

ParityCheck parity_check(const CoefficientSet& c, int res) {
  const auto psi = psi_on_grid(c, res);
  auto at = [&](int i, int j) { return psi[static_cast<std::size_t>(i) * res + j]; };
  double overlap = 0.0, mx = 0.0;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      overlap += std::real(at(res - 1 - i, res - 1 - j) * std::conj(at(i, j)));
      mx = std::max(mx, std::abs(at(i, j)));
    }
  const int sign = overlap >= 0 ? 1 : -1;
  double mis = 0.0;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) mis = std::max(mis, std::abs(at(res - 1 - i, res - 1 - j) - double(sign) * at(i, j)));
  return {sign, mx > 0 ? mis / mx : 0.0};
}

double DensityGrid::diagonal_suppression() const {
  double dmax = 0.0, gmax = 0.0;
  for (int i = 0; i < resolution; ++i) {
    dmax = std::max(dmax, at(i, i));
    for (int j = 0; j < resolution; ++j) gmax = std::max(gmax, at(i, j));
  }
  return gmax > 0 ? dmax / gmax : 0.0;
}

DensityGrid density_grid(const std::function<double(double, double)>& rho, int resolution) {
  if (resolution < 16) throw DomainError("density resolution must be >= 16");
  DensityGrid d;
  d.resolution = resolution;
  d.values.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      d.values[static_cast<std::size_t>(i) * resolution + j] =
          rho(DensityGrid::coordinate(i, resolution), DensityGrid::coordinate(j, resolution));
  const double z = trapezoid_2d(d.values, resolution);
  if (!(z > 0)) throw DomainError("density integrates to zero");
  for (auto& v : d.values) v /= z;
  d.normalization = trapezoid_2d(d.values, resolution);
  return d;
}

DensityGrid density_grid(const CoefficientSet& c, int resolution) {
  if (resolution < 16) throw DomainError("density resolution must be >= 16");
  const auto psi = psi_on_grid(c, resolution);
  DensityGrid d;
  d.resolution = resolution;
  d.gamma = c.gamma;
  d.values.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) d.values[i] = std::norm(psi[i]);
  const double z = trapezoid_2d(d.values, resolution);
  for (auto& v : d.values) v /= z;
  d.normalization = trapezoid_2d(d.values, resolution);
  return d;
}

double phi(int n, double x) { return std::sqrt(2.0) * std::sin(n * pi * (x + 0.5)); }

double ProductState::operator()(double x1, double x2) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.sign * t.weight * phi(t.n[0], x1) * phi(t.n[1], x2);
  return s;
}

double ProductState::energy() const {
  return terms.empty() ? 0.0 : (terms[0].n[0] * terms[0].n[0] + 3.0 * terms[0].n[1] * terms[0].n[1]) * pi * pi / 8.0;
}

ProductState special_state(int n1, int n2) {
  const auto tp = triple_partners(n1, n2);
  if (!tp) throw DomainError("(n1, n2) is not a triple-degenerate point");
  const std::array<std::array<int, 2>, 3> modes{std::array<int, 2>{n1, n2}, tp->first, tp->second};
  const double w = 1.0 / std::sqrt(3.0);
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      ProductState ps;
      ps.terms = {{modes[0], 1, w}, {modes[1], s1, w}, {modes[2], s2, w}};
      double worst = 0.0;
      for (int i = 0; i < 64; ++i) {
        const double y = -0.5 + (i + 0.5) / 64.0;
        worst = std::max(worst, std::abs(ps(y, y)));
      }
      if (worst < 1e-10) return ps;
    }
  }
  throw SolverError("no sign pattern annihilates the diagonal");
}

cplx hardcore_mode(const MomentumVector& k, double x1, double x2) {
  const double a = k.k1, b = k.k2;
  return std::exp(I * (a * x1 + b * x2)) - std::exp(I * (-b)) * std::exp(I * (a * x1 - b * x2)) -
         std::exp(I * a) * std::exp(I * (-a * x1 + b * x2)) + std::exp(I * (a - b)) * std::exp(-I * (a * x1 + b * x2));
}

cplx HardcoreState::operator()(double x1, double x2) const {
  require_in_box(x1, x2);
  const bool plus = x2 <= x1;
  const double y1 = plus ? x1 : -x1, y2 = plus ? x2 : -x2;
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) s += weights[i] * hardcore_mode(momenta[i], y1, y2);
  return (plus ? 1.0 : double(parity)) * s / norm;
}

HardcoreState hardcore_wavefunction(const MomentumVector& k, int parity) {
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  if (!hardcore_admissible(k)) throw DomainError("momentum does not solve the hard-core limit system");
  const Matrix2 s = scattering_matrix(kEta);
  HardcoreState h;
  h.momenta = {k, apply_element(s, k), apply_element(s * sigma_z(), k)};
  h.parity = parity;
  // Weights from the diagonal condition, sampled.
  Eigen::MatrixXcd D(64, 3);
  for (int i = 0; i < 64; ++i) {
    const double y = -0.5 + (i + 0.5) / 64.0;
    for (int j = 0; j < 3; ++j) D(i, j) = hardcore_mode(h.momenta[j], y, y);
  }
  Eigen::Vector3d colnorm;
  for (int j = 0; j < 3; ++j) {
    colnorm(j) = D.col(j).norm();
    if (colnorm(j) > 0) D.col(j) /= colnorm(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(D, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv(2) > 1e-10 * sv(0)) throw DomainError("momentum does not admit a hard-core state");
  Eigen::Vector3cd w = svd.matrixV().col(2);
  for (int j = 0; j < 3; ++j) w(j) = colnorm(j) > 0 ? w(j) / colnorm(j) : 0.0;
  const Eigen::Index lead = std::abs(w(0)) > 1e-12 ? 0 : (std::abs(w(1)) > 1e-12 ? 1 : 2);
  w /= w(lead);
  for (int j = 0; j < 3; ++j) h.weights[j] = w(j);

  h.norm = 1.0;
  std::vector<double> rho(static_cast<std::size_t>(kNormGrid) * kNormGrid);
  for (int i = 0; i < kNormGrid; ++i)
    for (int j = 0; j < kNormGrid; ++j)
      rho[static_cast<std::size_t>(i) * kNormGrid + j] =
          std::norm(h(DensityGrid::coordinate(i, kNormGrid), DensityGrid::coordinate(j, kNormGrid)));
  h.norm = std::sqrt(trapezoid_2d(rho, kNormGrid));
  return h;
}

}  // namespace twobody
