#include <doctest.h>

#include <twobody/bethe.hpp>
#include <twobody/ed_oracle.hpp>
#include <twobody/errors.hpp>

#include <algorithm>
#include <set>

#include "oracles.hpp"

using namespace twobody;

TEST_CASE("interaction element (1,1,1,1) = 3/2") {
  CHECK(interaction_element(1, 1, 1, 1) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("interaction elements agree with the closed form") {
  for (int i = 0; i < 400; ++i) {
    const int hi = i < 300 ? 20 : 64;
    auto pick = [&] { return 1 + static_cast<int>(oracle::uniform(0, hi)); };
    const int a = pick(), b = pick(), c = pick(), d = pick();
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(d);
    CHECK(interaction_element(a, b, c, d) == doctest::Approx(oracle::quartic_overlap(a, b, c, d)).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("parity selection and symmetry of interaction elements") {
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c)
        for (int d = 1; d <= 6; ++d) {
          const double v = interaction_element(a, b, c, d);
          if ((a + b + c + d) % 2) CHECK(std::abs(v) < 1e-12);
          CHECK(v == doctest::Approx(interaction_element(c, d, a, b)).scale(1.0).epsilon(1e-13));
        }
  CHECK_THROWS_AS(interaction_element(0, 1, 1, 1), DomainError);
}

TEST_CASE("Hamiltonian is symmetric with the kinetic diagonal") {
  const auto h = build_hamiltonian(1.0, 3.0, 8);
  CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const auto h0 = build_hamiltonian(0.0, 3.0, 8);
  for (std::size_t i = 0; i < h0.basis.size(); ++i) {
    const auto& s = h0.basis[i];
    CHECK(h0.matrix(i, i) == doctest::Approx((s.n1 * s.n1 + 3.0 * s.n2 * s.n2) * pi * pi / 8).epsilon(1e-14));
  }
}

TEST_CASE("coupling between opposite parity sectors vanishes") {
  const auto h = build_hamiltonian(3.0, 3.0, 10);
  for (std::size_t i = 0; i < h.basis.size(); ++i)
    for (std::size_t j = 0; j < h.basis.size(); ++j)
      if ((h.basis[i].n1 + h.basis[i].n2 + h.basis[j].n1 + h.basis[j].n2) % 2) CHECK(std::abs(h.matrix(i, j)) < 1e-12);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(build_hamiltonian(1.0, 3.0, 3), DomainError);
  CHECK_THROWS_AS(build_hamiltonian(1.0, 3.0, 81), DomainError);
  CHECK_THROWS_AS(build_hamiltonian(-1.0, 3.0, 8), DomainError);
  CHECK_THROWS_AS(spectrum(1.0, 3.0, 4, 17), DomainError);
}

TEST_CASE("free spectrum is the sorted kinetic list") {
  std::vector<double> ref;
  for (int a = 1; a <= 12; ++a)
    for (int b = 1; b <= 12; ++b) ref.push_back((a * a + 3.0 * b * b) * pi * pi / 8);
  std::sort(ref.begin(), ref.end());
  const auto e = spectrum(0.0, 3.0, 12, 10);
  for (int i = 0; i < 10; ++i) CHECK(e[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  CHECK(e[0] == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(7 * pi * pi / 8).epsilon(1e-14));
  CHECK(e[2] == doctest::Approx(3 * pi * pi / 2).epsilon(1e-14));
}

TEST_CASE("eigenvalues do not increase with the cutoff") {
  const auto a = spectrum(1.0, 3.0, 10, 6);
  const auto b = spectrum(1.0, 3.0, 14, 6);
  const auto c = spectrum(1.0, 3.0, 18, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(b[i] <= a[i] + 1e-12);
    CHECK(c[i] <= b[i] + 1e-12);
  }
}

TEST_CASE("7 pi^2 / 2 is in the spectrum for every gamma") {
  for (double g : {0.0, 1.0, 10.0}) {
    const auto e = spectrum(g, 3.0, 16, 40);
    double best = 1e9;
    for (double v : e) best = std::min(best, std::abs(v - 3.5 * pi * pi));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("gamma-independent eigenvalues below 10 pi^2 match the triple count") {
  // triples: each D6 orbit of three free pairs contributes one state
  int triples = 0;
  for (int a = 1; a <= 12; ++a)
    for (int b = 1; b <= 12; ++b)
      if (a * a + 3 * b * b < 80 && triple_partners(a, b)) ++triples;
  REQUIRE(triples % 3 == 0);
  triples /= 3;

  const auto ea = spectrum(1.0, 3.0, 16, 120);
  const auto eb = spectrum(5.0, 3.0, 16, 120);
  int fixed = 0;
  for (double v : ea) {
    if (v >= 10 * pi * pi) break;
    for (double w : eb)
      if (std::abs(v - w) < 1e-8) {
        ++fixed;
        break;
      }
  }
  CHECK(triples >= 2);
  CHECK(fixed == triples);
}

TEST_CASE("the oracle spectrum exists for eta = 3 - 2 sqrt 2") {
  const double eta = 3.0 - 2.0 * std::sqrt(2.0);
  const auto e0 = spectrum(0.0, eta, 14, 6);
  const auto e = spectrum(1.0, eta, 14, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::isfinite(e[i]));
    CHECK(e[i] >= e0[i] - 1e-12);
    if (i) CHECK(e[i] >= e[i - 1]);
  }
}

TEST_CASE("extrapolation") {
  std::vector<std::pair<int, double>> lin{{20, 5.05}, {30, 5.0 + 1.0 / 30}, {40, 5.025}};
  CHECK(extrapolate(lin).value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(extrapolate(lin).slope == doctest::Approx(1.0).epsilon(1e-9));
  std::vector<std::pair<int, double>> flat{{20, 2.5}, {30, 2.5}, {40, 2.5}};
  CHECK(extrapolate(flat).value == doctest::Approx(2.5).epsilon(1e-14));
  std::vector<std::pair<int, double>> noisy{{20, 1.0}, {30, 1.3}, {40, 0.9}};
  CHECK(extrapolate({{20, 1.0}, {30, 1.01}, {40, 0.995}}).value ==
        doctest::Approx(oracle::fit_intercept({{20, 1.0}, {30, 1.01}, {40, 0.995}})).epsilon(1e-12));
  CHECK_THROWS_AS(extrapolate(noisy), ExtrapolationError);
  CHECK_THROWS_AS(extrapolate({{20, 1.0}, {30, 1.0}}), ExtrapolationError);
}

TEST_CASE("validation at gamma = 0 passes exactly") {
  const auto rep = validate_energies(0.0, {pi * pi / 2, 7 * pi * pi / 8}, {{1, 1, 1}, {2, 1, -1}}, {8, 10, 12});
  CHECK(rep.all_pass());
  for (const auto& e : rep.entries) CHECK(e.rel_dev < 1e-12);
  CHECK(validation_tolerance(1.0) == 1e-3);
  CHECK(validation_tolerance(10.0) == 1e-2);
}

TEST_CASE("ED eigenvectors are real-normalized wavefunctions") {
  const auto h = build_hamiltonian(1.0, 3.0, 10);
  const auto es = eigenstates(h, 3);
  const auto e = spectrum(h, 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(es.values(i) == doctest::Approx(e[i]).epsilon(1e-12));
    CHECK(es.vectors.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(es.wavefunction(i, 0.5, 0.1)) < 1e-12);
  }
}
