#include <doctest.h>

#include <twobody/bethe.hpp>
#include <twobody/dihedral.hpp>
#include <twobody/errors.hpp>
#include <twobody/probe.hpp>
#include <twobody/wavefunction.hpp>

#include "oracles.hpp"

using namespace twobody;

namespace {

// ground-state root at gamma = 1 and its two partners, in units of pi (5 digits)
constexpr double kRoot[3][2] = {{0.93667, 1.17904}, {1.30023, 1.05786}, {2.2369, 0.12119}};

bool close_pi(const MomentumVector& k, const double ref[2], double tol) {
  return std::abs(k.k1 / pi - ref[0]) < tol && std::abs(k.k2 / pi - ref[1]) < tol;
}

}  // namespace

TEST_CASE("anchored residual agrees with the plain trig formulas") {
  for (int i = 0; i < 200; ++i) {
    const double k1 = oracle::uniform(0.05, 6.0), k2 = oracle::uniform(0.05, 6.0), g = oracle::uniform(0.0, 5.0);
    const auto a = residual(Branch::cot, k1, k2, g);
    const auto b = oracle::ba_cot(k1, k2, g);
    const auto c = residual(Branch::tan, k1, k2, g);
    const auto d = oracle::ba_tan(k1, k2, g);
    const double scale = 1.0 + 2.0 * g * 1e3;
    if (std::abs(b[0]) + std::abs(b[1]) < scale) {
      CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-9).scale(1.0));
      CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-9).scale(1.0));
    }
    if (std::abs(d[0]) + std::abs(d[1]) < scale) {
      CHECK(c[0] == doctest::Approx(d[0]).epsilon(1e-9).scale(1.0));
      CHECK(c[1] == doctest::Approx(d[1]).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("residual throws at a pole") {
  CHECK_THROWS_AS(residual(Branch::cot, pi, pi, 1.0), PoleError);
  CHECK_THROWS_AS(residual(Branch::tan, pi, pi / 2, 1.0), PoleError);
}

TEST_CASE("gamma = 1 root and partners") {
  const auto r = solve_root(Branch::cot, {0.94 * pi, 1.18 * pi}, 1.0);
  CHECK(close_pi(r.k(), kRoot[0], 5e-5));
  const auto [a, b] = orbit_partners(r.k());
  CHECK(close_pi(a, kRoot[1], 5e-5));
  CHECK(close_pi(b, kRoot[2], 5e-5));
  CHECK(r.residual_norm < 1e-10);
  for (const auto& p : std::array<MomentumVector, 2>{a, b}) {
    const auto f = oracle::ba_cot(p.k1, p.k2, 1.0);
    CHECK(std::abs(f[0]) < 1e-10);
    CHECK(std::abs(f[1]) < 1e-10);
  }
  CHECK(energy(r.k()) / (pi * pi) == doctest::Approx(0.63097).epsilon(1e-5));
}

TEST_CASE("continued ground level lands on the same root") {
  const auto r = canonicalize(continue_level(1, 1, 1.0));
  const auto [a, b] = orbit_partners(r.k());
  bool hit = close_pi(r.k(), kRoot[0], 5e-5) || close_pi(a, kRoot[0], 5e-5) || close_pi(b, kRoot[0], 5e-5);
  CHECK(hit);
}

TEST_CASE("a Bethe root is a root of the full coefficient system") {
  const auto r = solve_root(Branch::cot, {0.94 * pi, 1.18 * pi}, 1.0);
  CHECK(is_genuine_root(r.k(), 1.0));
  const auto info = nullspace_info(r.k(), 1.0);
  CHECK(info.smallest_ratio < 1e-12);
  CHECK_FALSE(nullspace_degenerate(info));
  CHECK(probe_residual(dihedral_group_for(3.0), r.k(), 1.0) < 1e-12);
  // a nearby non-root point is not
  CHECK_FALSE(is_genuine_root({r.k1 + 0.01, r.k2}, 1.0));
  CHECK(probe_residual(dihedral_group_for(3.0), {r.k1 + 0.01, r.k2}, 1.0) > 1e-4);
}

TEST_CASE("weak coupling seeds sit next to the free momenta") {
  for (auto [n1, n2] : {std::pair{1, 1}, std::pair{2, 1}}) {
    const auto seeds = seed_roots(n1, n2, 1e-4);
    REQUIRE_FALSE(seeds.empty());
    for (const auto& s : seeds) {
      CHECK(std::abs(s.k1 - n1 * pi) < 1e-3 * pi);
      CHECK(std::abs(s.k2 - n2 * pi) < 1e-3 * pi);
    }
  }
}

TEST_CASE("seeds at n1 = 3 n2 split like sqrt(gamma)") {
  // s-fixed free momenta: first-order perturbation is degenerate and the shift scales as sqrt(gamma)
  const auto a = seed_roots(3, 1, 1e-6);
  const auto b = seed_roots(3, 1, 1e-4);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  const double da = std::hypot(a[0].k1 - 3 * pi, a[0].k2 - pi);
  const double db = std::hypot(b[0].k1 - 3 * pi, b[0].k2 - pi);
  CHECK(db / da == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("ground energy grows with gamma") {
  double prev = 0.5;
  for (double g : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double e = energy(continue_level(1, 1, g).k()) / (pi * pi);
    CHECK(e > prev);
    CHECK(e < 7.0 / 6.0);
    prev = e;
  }
}

TEST_CASE("continuation to a negative gamma is rejected") {
  const auto s = seed_roots(1, 1, 1e-4);
  REQUIRE_FALSE(s.empty());
  CHECK_THROWS(continue_root(s.front(), -1.0));
}

TEST_CASE("free spectrum") {
  const auto sp = enumerate_spectrum(0.0, 4);
  REQUIRE(sp.levels.size() >= 4);
  CHECK(sp.levels[0].energy == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(sp.levels[1].energy == doctest::Approx(7 * pi * pi / 8).epsilon(1e-14));
  CHECK(sp.levels[0].parity == 1);
  CHECK(sp.levels[1].parity == -1);
}

TEST_CASE("triple partners") {
  const auto t = triple_partners(5, 1);
  REQUIRE(t.has_value());
  CHECK(t->first == std::array<int, 2>{4, 2});
  CHECK(t->second == std::array<int, 2>{1, 3});
  const auto u = triple_partners(2, 4);
  REQUIRE(u.has_value());
  CHECK(u->first == std::array<int, 2>{7, 1});
  CHECK(u->second == std::array<int, 2>{5, 3});
  CHECK_FALSE(triple_partners(1, 1).has_value());
  CHECK_FALSE(triple_partners(2, 1).has_value());
  CHECK_FALSE(triple_partners(3, 1).has_value());
  // brute force: every triple shares the free energy n1^2 + 3 n2^2
  for (int a = 1; a <= 12; ++a)
    for (int b = 1; b <= 12; ++b)
      if (auto p = triple_partners(a, b)) {
        const int e = a * a + 3 * b * b;
        CHECK(p->first[0] * p->first[0] + 3 * p->first[1] * p->first[1] == e);
        CHECK(p->second[0] * p->second[0] + 3 * p->second[1] * p->second[1] == e);
      }
}

TEST_CASE("interaction-independent level at 7 pi^2 / 2") {
  const auto sp = enumerate_spectrum(1.0, 8);
  bool found = false;
  for (const auto& l : sp.levels)
    if (l.root.branch == Branch::independent) {
      CHECK(l.energy == doctest::Approx(3.5 * pi * pi).epsilon(1e-12));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("canonical representative is an orbit invariant") {
  const auto g = dihedral_group_for(3.0);
  const MomentumVector k{0.93666970 * pi, 1.17904064 * pi};
  const auto c = canonical_representative(k);
  for (const auto& p : momentum_orbit(k, g)) CHECK(canonical_representative(p).approx_equal(c, 1e-9));
}

TEST_CASE("hard-core levels") {
  const auto lv = hardcore_levels(4);
  REQUIRE(lv.size() == 4);
  CHECK(lv[0].energy == doctest::Approx(7 * pi * pi / 6).epsilon(1e-13));
  CHECK(lv[1].energy == doctest::Approx(7 * pi * pi / 6).epsilon(1e-13));
  CHECK(lv[0].parity != lv[1].parity);
  CHECK(lv[2].energy == doctest::Approx(13 * pi * pi / 6).epsilon(1e-13));
  for (const auto& l : lv) CHECK(hardcore_admissible(l.root.k()));
  CHECK(hardcore_admissible({pi, 5 * pi / 3}));
  CHECK_FALSE(hardcore_admissible({pi, pi}));
}

TEST_CASE("strong coupling approaches the hard-core pair from below") {
  const auto sp = enumerate_spectrum(1e4, 2);
  REQUIRE(sp.levels.size() >= 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(sp.levels[i].energy < 7 * pi * pi / 6);
    CHECK(std::abs(sp.levels[i].energy - 7 * pi * pi / 6) / (7 * pi * pi / 6) < 1e-3);
  }
  CHECK(sp.levels[1].energy - sp.levels[0].energy < 1e-2);
}
