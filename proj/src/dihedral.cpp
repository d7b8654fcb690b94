#include "twobody/dihedral.hpp"

#include <algorithm>
#include <numeric>

#include "twobody/errors.hpp"

namespace twobody {

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("mass ratio must be positive and finite, got " + std::to_string(eta));
  }
}

// Sign s with (s * s(eta) sigma_z) of order exactly 2n.
int generator_sign_for(const Matrix2& r_plus, int n) {
  const Matrix2 id = Matrix2::Identity();
  for (int sign : {1, -1}) {
    const Matrix2 r = sign * r_plus;
    Matrix2 p = id;
    int order = 0;
    for (int j = 1; j <= 2 * n; ++j) {
      p = p * r;
      if (near(p, id, 1e-9)) {
        order = j;
        break;
      }
    }
    if (order == 2 * n) return sign;
  }
  return 0;
}

}  // namespace

double MassRatioClass::exact_eta() const {
  const double t = std::tan(l * pi / (2.0 * n));
  return t * t;
}

int DihedralGroup::find(const Matrix2& m, double tol) const {
  for (std::size_t j = 0; j < elements.size(); ++j) {
    if (near(elements[j], m, tol)) return static_cast<int>(j);
  }
  return -1;
}

Matrix2 scattering_matrix(double eta) {
  require_eta(eta);
  const double d = eta + 1.0;
  Matrix2 s;
  s << (eta - 1.0) / d, 2.0 * eta / d, 2.0 / d, (1.0 - eta) / d;
  return s;
}

MomentumVector apply_element(const Matrix2& d, const MomentumVector& k) {
  if (!k.finite() || !d.allFinite()) throw DomainError("apply_element: non-finite input");
  return MomentumVector::from(d * k.vec());
}

double rescaled_norm_sq(const MomentumVector& k, double eta) { return k.k1 * k.k1 + eta * k.k2 * k.k2; }

std::vector<MassRatioClass> nonergodicity_matches(double eta, int n_max, double tol) {
  require_eta(eta);
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  std::vector<MassRatioClass> out;
  for (int n = 1; n <= n_max; ++n) {
    for (int l = 1; l <= n; ++l) {
      if (std::gcd(l, n) != 1 || l == n) continue;  // l = n puts tan at its pole
      MassRatioClass c{eta, l, n, true};
      if (std::abs(eta - c.exact_eta()) < tol) out.push_back(c);
    }
  }
  return out;
}

std::optional<MassRatioClass> nonergodicity_classify(double eta, int n_max, double tol) {
  auto all = nonergodicity_matches(eta, n_max, tol);
  if (all.empty()) return std::nullopt;
  return all.front();
}

DihedralGroup build_dihedral_group(const MassRatioClass& cls) {
  if (cls.n < 1 || cls.l < 1 || cls.l > cls.n || std::gcd(cls.l, cls.n) != 1) {
    throw DomainError("invalid classification (l, n)");
  }
  if (cls.n == 1) throw DomainError("eta = 0 or infinity is the trivial one-particle case");
  // Built from the exact family member so that r^(2n) = I holds to rounding.
  const double eta = cls.exact_eta();
  const Matrix2 r_plus = scattering_matrix(eta) * sigma_z();
  const int sign = generator_sign_for(r_plus, cls.n);
  if (sign == 0) throw DomainError("no generator of order 2n for this classification");

  DihedralGroup g;
  g.n = cls.n;
  g.eta = eta;
  g.generator_sign = sign;
  g.generator_r = sign * r_plus;
  g.generator_sigma = sigma_z();
  Matrix2 p = Matrix2::Identity();
  std::vector<Matrix2> rot;
  for (int j = 0; j < 2 * cls.n; ++j) {
    rot.push_back(p);
    p = p * g.generator_r;
  }
  if (!near(p, Matrix2::Identity(), 1e-10)) throw DomainError("r^(2n) != I");
  g.elements = rot;
  for (const auto& m : rot) g.elements.push_back(m * sigma_z());
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < g.elements.size(); ++j) {
      if (max_norm_distance(g.elements[i], g.elements[j]) <= 1e-9) {
        throw DomainError("group elements are not distinct");
      }
    }
  }
  return g;
}

DihedralGroup dihedral_group_for(double eta) {
  auto cls = nonergodicity_classify(eta);
  if (!cls) throw DomainError("mass ratio is not on the nonergodic family");
  return build_dihedral_group(*cls);
}

std::vector<MomentumVector> momentum_orbit(const MomentumVector& k, const DihedralGroup& g, double tol) {
  if (!k.finite()) throw DomainError("momentum_orbit: non-finite k");
  const double scale = tol * std::max(k.norm(), 1e-300);
  std::vector<MomentumVector> out;
  for (const auto& d : g.elements) {
    const MomentumVector q = apply_element(d, k);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const MomentumVector& o) { return o.approx_equal(q, scale); });
    if (!seen) out.push_back(q);
  }
  return out;
}

Matrix2 naive_power(const Matrix2& m, int n) {
  if (n < 0) throw DomainError("negative power");
  Matrix2 p = Matrix2::Identity();
  for (int j = 0; j < n; ++j) p = p * m;
  return p;
}

ChebyshevPower chebyshev_power(const Matrix2& m, int n) {
  if (!m.allFinite()) throw DomainError("chebyshev_power: non-finite matrix");
  if (std::abs(m.determinant() - 1.0) >= 1e-10) throw DomainError("chebyshev_power: det != 1");
  const double tr = m.trace();
  if (std::abs(tr) > 2.0 + 1e-12) throw DomainError("chebyshev_power: |trace| > 2");
  if (n < 0) throw DomainError("negative power");

  ChebyshevPower out;
  out.base = m;
  out.power = n;
  out.q = std::acos(std::clamp(tr / 2.0, -1.0, 1.0));
  const double sq = std::sin(out.q);
  if (std::abs(sq) < 1e-8) {
    out.used_fallback = true;
    out.result = naive_power(m, n);
    return out;
  }
  auto U = [&](int j) { return std::sin((j + 1) * out.q) / sq; };
  const double u1 = U(n - 1);
  const double u2 = U(n - 2);
  out.result << m(0, 0) * u1 - u2, m(0, 1) * u1, m(1, 0) * u1, m(1, 1) * u1 - u2;
  return out;
}

Matrix2 rotation_form(const MassRatioClass& cls) {
  if (cls.n < 1 || cls.l < 1 || cls.l > cls.n) throw DomainError("invalid classification (l, n)");
  const double eta = cls.exact_eta();
  const double se = std::sqrt(eta);
  Matrix2 u = Matrix2::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = se;
  Matrix2 uinv = Matrix2::Zero();
  uinv(0, 0) = 1.0;
  uinv(1, 1) = 1.0 / se;
  return u * scattering_matrix(eta) * sigma_z() * uinv;
}

}  // namespace twobody
