#include <doctest.h>

#include <twobody/bethe.hpp>
#include <twobody/errors.hpp>
#include <twobody/wavefunction.hpp>

#include <map>

#include "oracles.hpp"

using namespace twobody;

namespace {

const Spectrum& spectrum_at(double g) {
  static std::map<double, Spectrum> cache;
  auto it = cache.find(g);
  if (it == cache.end()) it = cache.emplace(g, enumerate_spectrum(g, 3)).first;
  return it->second;
}

}  // namespace

TEST_CASE("phi is orthonormal on the box") {
  // midpoint rule is exact enough for low modes
  const int N = 20000;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      double s = 0;
      for (int i = 0; i < N; ++i) {
        const double x = -0.5 + (i + 0.5) / N;
        s += phi(a, x) * phi(b, x) / N;
      }
      CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0).epsilon(1e-8));
    }
  CHECK(phi(3, -0.5) == doctest::Approx(0.0).scale(1.0));
  CHECK(phi(3, 0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("hard-core mode equals its product form") {
  for (int i = 0; i < 50; ++i) {
    const MomentumVector k{oracle::uniform(0.5, 10), oracle::uniform(0.5, 10)};
    const double x2 = oracle::uniform(-0.5, 0.5), x1 = oracle::uniform(x2, 0.5);
    const cplx ref = 4.0 * std::exp(cplx(0, (k.k1 - k.k2) / 2)) * std::sin(k.k1 * (0.5 - x1)) *
                     std::sin(k.k2 * (0.5 + x2));
    CHECK(std::abs(hardcore_mode(k, x1, x2) - ref) < 1e-12);
  }
}

TEST_CASE("hard-core state vanishes on the diagonal and at the walls") {
  const auto h = hardcore_wavefunction({pi, 5 * pi / 3});
  CHECK(std::abs(h.weights[0] - 1.0) < 1e-12);
  double diag = 0, wall = 0, peak = 0;
  for (int i = 0; i <= 100; ++i) {
    const double y = -0.5 + i / 100.0;
    diag = std::max(diag, std::abs(h(y, y)));
    wall = std::max({wall, std::abs(h(0.5, y)), std::abs(h(y, -0.5))});
    for (int j = 0; j <= 100; ++j) peak = std::max(peak, std::abs(h(y, -0.5 + j / 100.0)));
  }
  CHECK(diag < 1e-12 * peak);
  CHECK(wall < 1e-12 * peak);
}

TEST_CASE("hard-core state rejects non-admissible momenta") {
  CHECK_THROWS(hardcore_wavefunction({pi, pi}));
}

TEST_CASE("special triple state vanishes on the diagonal") {
  const auto s = special_state(5, 1);
  CHECK(s.terms.size() == 3);
  CHECK(s.energy() == doctest::Approx(3.5 * pi * pi).epsilon(1e-14));
  for (int i = 0; i <= 64; ++i) {
    const double y = -0.5 + i / 64.0;
    CHECK(std::abs(s(y, y)) < 1e-10);
  }
  CHECK_THROWS(special_state(1, 1));
  // closed form (phi5 phi1 - phi4 phi2 + phi1 phi3) / sqrt 3, up to a global sign
  auto ref = [](double a, double b) {
    auto f = [](int n, double x) { return std::sqrt(2.0) * std::sin(n * pi * (x + 0.5)); };
    return (f(5, a) * f(1, b) - f(4, a) * f(2, b) + f(1, a) * f(3, b)) / std::sqrt(3.0);
  };
  const double sign = s(0.3, -0.2) / ref(0.3, -0.2) > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 20; ++i) {
    const double a = oracle::uniform(-0.5, 0.5), b = oracle::uniform(-0.5, 0.5);
    CHECK(s(a, b) == doctest::Approx(sign * ref(a, b)).scale(1.0).epsilon(1e-12));
  }
  const auto t = special_state(2, 4);
  CHECK(t.energy() == doctest::Approx(6.5 * pi * pi).epsilon(1e-14));
  for (int i = 0; i <= 64; ++i) CHECK(std::abs(t(-0.5 + i / 64.0, -0.5 + i / 64.0)) < 1e-10);
}

TEST_CASE("free ground state has vanishing off-orbit amplitudes") {
  const auto c = assemble_coefficients(BetheRoot::make(Branch::cot, {1, 1}, {0, 0}, 0.0), 0.0);
  for (std::size_t j = 0; j < c.momenta.size(); ++j)
    if (std::abs(std::abs(c.momenta[j].k1) - 2 * pi) < 1e-9 && std::abs(c.momenta[j].k2) < 1e-9) {
      CHECK(std::abs(c.plus[j]) < 1e-12);
      CHECK(std::abs(c.minus[j]) < 1e-12);
    }
  CHECK(wall_residual(c) < 1e-10);
}

TEST_CASE("lowest three levels satisfy the boundary and matching conditions") {
  for (double g : {0.1, 1.0, 10.0}) {
    const auto& sp = spectrum_at(g);
    REQUIRE(sp.levels.size() >= 3);
    for (int i = 0; i < 3; ++i) {
      CAPTURE(g);
      CAPTURE(i);
      const auto c = assemble_coefficients(sp.levels[i].root, g);
      CHECK(wall_residual(c) < 1e-10);
      CHECK(continuity_mismatch(c) < 1e-10);
      CHECK(jump_condition_check(c, g, 64) < 1e-8);
      const auto p = parity_check(c);
      CHECK(p.mismatch < 1e-8);
      CHECK(p.sign == sp.levels[i].parity);
    }
  }
}

TEST_CASE("a perturbed momentum does not yield coefficients") {
  const auto& sp = spectrum_at(1.0);
  auto r = sp.levels[0].root;
  r = BetheRoot::make(r.branch, r.anchor, {r.offset[0] + 0.02, r.offset[1]}, 1.0);
  CHECK_THROWS_AS(assemble_coefficients(r, 1.0), NullspaceError);
}

TEST_CASE("density is normalized and the diagonal is suppressed with gamma") {
  double prev = 2.0;
  for (double g : {0.1, 1.0, 10.0}) {
    const auto d = density_grid(assemble_coefficients(spectrum_at(g).levels[0].root, g), 101);
    CHECK(d.normalization == doctest::Approx(1.0).epsilon(1e-9));
    double integral = 0;
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j) {
        const double wi = (i == 0 || i == 100) ? 0.5 : 1.0, wj = (j == 0 || j == 100) ? 0.5 : 1.0;
        integral += wi * wj * d.at(i, j) * 1e-4;
      }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
    const double s = d.diagonal_suppression();
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("strong coupling density approaches the hard-core density") {
  const auto sp = enumerate_spectrum(1e4, 1);
  const auto c = assemble_coefficients(sp.levels[0].root, 1e4);
  const auto hk = hardcore_levels(1)[0];
  const auto h = hardcore_wavefunction(hk.root.k(), hk.parity);
  const auto a = density_grid(c, 101);
  const auto b = density_grid([&](double x1, double x2) { return std::norm(h(x1, x2)); }, 101);
  double diff = 0, peak = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    peak = std::max(peak, b.values[i]);
  }
  CHECK(diff < 1e-2 * peak);
}

TEST_CASE("evaluation outside the box throws") {
  const auto c = assemble_coefficients(spectrum_at(1.0).levels[0].root, 1.0);
  CHECK_THROWS_AS(evaluate_psi(c, 0.6, 0.0), DomainError);
}
