#include "twobody/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twobody/errors.hpp"

namespace twobody {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxCutoff = 80;

double mode(int n, double x) { return std::sqrt(2.0) * std::sin(n * kPi * (x + 0.5)); }

std::vector<int> sector_indices(const std::vector<BasisState>& basis, int parity_bit) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i)
    if ((basis[i].n1 + basis[i].n2) % 2 == parity_bit) idx.push_back(i);
  return idx;
}

Eigen::MatrixXd sub_block(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = m(idx[i], idx[j]);
  return b;
}

void check_inputs(double gamma, double eta, int cutoff) {
  if (cutoff < 4) throw DomainError("cutoff must be >= 4");
  if (cutoff > kMaxCutoff) throw DomainError("cutoff above 80 exceeds the dense-storage guard");
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw DomainError("gamma must be finite and >= 0");
  if (!(eta > 0) || !std::isfinite(eta)) throw DomainError("eta must be positive and finite");
}

}  // namespace

SimpsonRule SimpsonRule::make(int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw DomainError("Simpson needs an even interval count");
  SimpsonRule r;
  const double h = 1.0 / intervals;
  for (int i = 0; i <= intervals; ++i) {
    r.x.push_back(-0.5 + i * h);
    const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    r.w.push_back(c * h / 3.0);
  }
  return r;
}

double interaction_element(int n1, int n2, int m1, int m2) {
  if (n1 < 1 || n2 < 1 || m1 < 1 || m2 < 1) throw DomainError("mode indices must be >= 1");
  static const SimpsonRule rule = SimpsonRule::make();
  double s = 0.0;
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const double x = rule.x[q];
    s += rule.w[q] * mode(n1, x) * mode(n2, x) * mode(m1, x) * mode(m2, x);
  }
  return s;
}

std::vector<BasisState> product_basis(int cutoff) {
  std::vector<BasisState> b;
  for (int a = 1; a <= cutoff; ++a)
    for (int c = 1; c <= cutoff; ++c) b.push_back({a, c});
  return b;
}

InteractionMatrix InteractionMatrix::build(int cutoff) {
  check_inputs(0.0, 1.0, cutoff);
  const SimpsonRule rule = SimpsonRule::make();
  const auto q = static_cast<Eigen::Index>(rule.x.size());
  Eigen::MatrixXd S(cutoff, q);
  for (int n = 1; n <= cutoff; ++n)
    for (Eigen::Index j = 0; j < q; ++j) S(n - 1, j) = mode(n, rule.x[j]);
  const auto basis = product_basis(cutoff);
  // V = G W G^T with G[(n1, n2), q] = phi_n1(x_q) phi_n2(x_q); all Simpson weights are positive.
  Eigen::MatrixXd G(static_cast<Eigen::Index>(basis.size()), q);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (Eigen::Index j = 0; j < q; ++j)
      G(static_cast<Eigen::Index>(i), j) = S(basis[i].n1 - 1, j) * S(basis[i].n2 - 1, j) * std::sqrt(rule.w[j]);
  InteractionMatrix v;
  v.cutoff = cutoff;
  v.values = Eigen::MatrixXd::Zero(G.rows(), G.rows());
  v.values.selfadjointView<Eigen::Lower>().rankUpdate(G);
  v.values = v.values.selfadjointView<Eigen::Lower>();
  return v;
}

double kinetic_energy(const BasisState& s, double eta) {
  const double m1 = 1.0 + eta, m2 = (1.0 + eta) / eta;
  return s.n1 * s.n1 * kPi * kPi / (2 * m1) + s.n2 * s.n2 * kPi * kPi / (2 * m2);
}

BasisHamiltonian build_hamiltonian(double gamma, double eta, const InteractionMatrix& v) {
  check_inputs(gamma, eta, v.cutoff);
  BasisHamiltonian h;
  h.cutoff = v.cutoff;
  h.gamma = gamma;
  h.eta = eta;
  h.basis = product_basis(v.cutoff);
  h.matrix = gamma * v.values;
  for (std::size_t i = 0; i < h.basis.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    h.matrix(ii, ii) += kinetic_energy(h.basis[i], eta);
  }
  return h;
}

BasisHamiltonian build_hamiltonian(double gamma, double eta, int cutoff) {
  check_inputs(gamma, eta, cutoff);
  if (gamma == 0.0) {
    InteractionMatrix zero;
    zero.cutoff = cutoff;
    zero.values = Eigen::MatrixXd::Zero(cutoff * cutoff, cutoff * cutoff);
    return build_hamiltonian(gamma, eta, zero);
  }
  return build_hamiltonian(gamma, eta, InteractionMatrix::build(cutoff));
}

EdEigenstates eigenstates(const BasisHamiltonian& h, int count) {
  const auto n = static_cast<int>(h.basis.size());
  if (count < 1 || count > n) throw DomainError("count must lie in [1, N^2]");
  struct Pair {
    double e;
    Eigen::VectorXd v;
  };
  std::vector<Pair> all;
  for (int bit : {0, 1}) {
    const auto idx = sector_indices(h.basis, bit);
    if (idx.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub_block(h.matrix, idx));
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    const int take = std::min<int>(count, static_cast<int>(idx.size()));
    for (int c = 0; c < take; ++c) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
      for (std::size_t i = 0; i < idx.size(); ++i) full(idx[i]) = es.eigenvectors()(static_cast<Eigen::Index>(i), c);
      all.push_back({es.eigenvalues()(c), full});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Pair& a, const Pair& b) { return a.e < b.e; });
  EdEigenstates out;
  out.basis = h.basis;
  out.values.resize(count);
  out.vectors.resize(n, count);
  for (int c = 0; c < count; ++c) {
    out.values(c) = all[c].e;
    out.vectors.col(c) = all[c].v;
  }
  return out;
}

std::vector<double> spectrum(const BasisHamiltonian& h, int count) {
  const auto n = static_cast<int>(h.basis.size());
  if (count < 1 || count > n) throw DomainError("count must lie in [1, N^2]");
  std::vector<double> all;
  for (int bit : {0, 1}) {
    const auto idx = sector_indices(h.basis, bit);
    if (idx.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub_block(h.matrix, idx), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) all.push_back(es.eigenvalues()(i));
  }
  std::sort(all.begin(), all.end());
  all.resize(static_cast<std::size_t>(count));
  return all;
}

std::vector<double> spectrum(double gamma, double eta, int cutoff, int count) {
  return spectrum(build_hamiltonian(gamma, eta, cutoff), count);
}

double EdEigenstates::wavefunction(int level, double x1, double x2) const {
  double s = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double c = vectors(static_cast<Eigen::Index>(i), level);
    if (c != 0.0) s += c * mode(basis[i].n1, x1) * mode(basis[i].n2, x2);
  }
  return s;
}

Extrapolation extrapolate(const std::vector<std::pair<int, double>>& values) {
  if (values.size() < 3) throw ExtrapolationError("extrapolation needs at least 3 cutoffs");
  Eigen::MatrixXd A(static_cast<Eigen::Index>(values.size()), 2);
  Eigen::VectorXd y(A.rows());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first < 1) throw ExtrapolationError("cutoffs must be positive");
    A(static_cast<Eigen::Index>(i), 0) = 1.0;
    A(static_cast<Eigen::Index>(i), 1) = 1.0 / values[i].first;
    y(static_cast<Eigen::Index>(i)) = values[i].second;
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd r = A * c - y;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(r(i)) / std::max(std::abs(y(i)), 1e-300));
  if (!std::isfinite(c(0)) || worst > 1e-2) throw ExtrapolationError("poor 1/N fit: relative residual " + std::to_string(worst));
  return {c(0), c(1), worst};
}

bool ValidationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ValidationEntry& e) { return e.pass; });
}

double validation_tolerance(double gamma) { return gamma <= 1.0 ? 1e-3 : 1e-2; }

namespace {

ValidationReport compare(double gamma, const std::vector<double>& bethe, const std::vector<std::array<int, 3>>& labels,
                         const std::vector<int>& cutoffs, const std::vector<std::vector<double>>& ed) {
  ValidationReport rep;
  rep.gamma = gamma;
  rep.cutoffs = cutoffs;
  const double tol = validation_tolerance(gamma);
  for (std::size_t i = 0; i < bethe.size(); ++i) {
    std::vector<std::pair<int, double>> pts;
    for (std::size_t c = 0; c < cutoffs.size(); ++c) pts.emplace_back(cutoffs[c], ed[c][i]);
    const double e = extrapolate(pts).value;
    ValidationEntry v{};
    v.index = static_cast<int>(i);
    if (i < labels.size()) {
      v.n1 = labels[i][0];
      v.n2 = labels[i][1];
      v.parity = labels[i][2];
    }
    v.bethe = bethe[i];
    v.ed = e;
    v.abs_dev = std::abs(e - bethe[i]);
    v.rel_dev = v.abs_dev / std::abs(bethe[i]);
    v.tolerance = tol;
    v.pass = v.rel_dev <= tol;
    rep.entries.push_back(v);
  }
  return rep;
}

}  // namespace

ValidationReport validate_energies(double gamma, const std::vector<double>& bethe,
                                   const std::vector<std::array<int, 3>>& labels, const std::vector<int>& cutoffs) {
  if (bethe.empty()) throw DomainError("nothing to validate");
  const int count = static_cast<int>(bethe.size());
  std::vector<std::vector<double>> ed;
  for (int n : cutoffs) ed.push_back(spectrum(gamma, 3.0, n, count));
  return compare(gamma, bethe, labels, cutoffs, ed);
}

ValidationReport validate_energies(double gamma, const std::vector<double>& bethe,
                                   const std::vector<std::array<int, 3>>& labels,
                                   const std::vector<const InteractionMatrix*>& interactions) {
  if (bethe.empty()) throw DomainError("nothing to validate");
  const int count = static_cast<int>(bethe.size());
  std::vector<int> cutoffs;
  std::vector<std::vector<double>> ed;
  for (const auto* v : interactions) {
    cutoffs.push_back(v->cutoff);
    ed.push_back(spectrum(build_hamiltonian(gamma, 3.0, *v), count));
  }
  return compare(gamma, bethe, labels, cutoffs, ed);
}

}  // namespace twobody
