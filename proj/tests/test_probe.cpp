#include <doctest.h>

#include <twobody/bethe.hpp>
#include <twobody/dihedral.hpp>
#include <twobody/errors.hpp>
#include <twobody/probe.hpp>

#include "oracles.hpp"

using namespace twobody;

TEST_CASE("pair conditions pair every element with its s-image") {
  for (double eta : {1.0, 3.0, 3.0 - 2.0 * std::sqrt(2.0)}) {
    const auto g = dihedral_group_for(eta);
    const auto conds = pair_conditions(g);
    CHECK(conds.size() == static_cast<std::size_t>(2 * g.n));
    const Matrix2 s = scattering_matrix(g.eta);
    std::vector<int> used(g.order(), 0);
    for (const auto& c : conds) {
      CHECK(max_norm_distance(g.elements[c.j], s * g.elements[c.k]) < 1e-10);
      used[c.j]++;
      used[c.k]++;
    }
    for (int u : used) CHECK(u == 1);
  }
}

TEST_CASE("eta = 3 is solvable with 3 independent conditions") {
  const auto r = constraint_rank_probe(3.0);
  CHECK(r.group == "D6");
  CHECK(r.coefficient_count == 24);
  CHECK(r.condition_count == 6);
  CHECK(r.independent_count == 3);
  CHECK(r.solvable);
  CHECK(r.summary == "solvable: 3 independent conditions");
  CHECK(r.best_residual < 1e-6);
  // the gamma = 1 ground root is among the common roots, up to the orbit
  const auto root = solve_root(Branch::cot, {0.94 * pi, 1.18 * pi}, 1.0);
  const auto g = dihedral_group_for(3.0);
  const auto orbit = momentum_orbit(root.k(), g);
  bool hit = false;
  for (const auto& c : r.common_roots)
    for (const auto& o : orbit) hit = hit || (std::abs(c.k1 - std::abs(o.k1)) < 1e-6 && std::abs(c.k2 - std::abs(o.k2)) < 1e-6);
  CHECK(hit);
}

TEST_CASE("eta = 3 - 2 sqrt 2 is overdetermined with no common root") {
  const auto r = constraint_rank_probe(3.0 - 2.0 * std::sqrt(2.0));
  CHECK(r.group == "D8");
  CHECK(r.independent_count == 4);
  CHECK_FALSE(r.solvable);
  CHECK(r.common_root_count == 0);
  CHECK(r.best_residual > 1e-6);
  CHECK(r.summary == "overdetermined: 4 independent conditions");
}

TEST_CASE("duality maps the probe of eta to that of 1 / eta") {
  CHECK(constraint_rank_probe(1.0 / 3.0).independent_count == 3);
}

TEST_CASE("degenerate points are recognized") {
  const auto g = dihedral_group_for(3.0);
  CHECK(probe_degenerate(g, {pi, 0.0}));
  CHECK(probe_degenerate(g, {2 * pi, 2 * pi}));
  CHECK_FALSE(probe_degenerate(g, {0.93666970 * pi, 1.17904064 * pi}));
}

TEST_CASE("unclassified mass ratio is rejected") {
  CHECK_THROWS_AS(constraint_rank_probe(2.0), DomainError);
}
