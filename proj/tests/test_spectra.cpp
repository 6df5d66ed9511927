#include <catch_amalgamated.hpp>

#include <cmath>

#include "blocksep/error.hpp"
#include "blocksep/spectra.hpp"

using namespace blocksep;

namespace {

SpectrumQuery free_oscillator(std::vector<int> blocks, std::vector<int> k) {
  SpectrumQuery q;
  q.model = ModelSpec::oscillator_model1(blocks);
  for (auto& p : q.model.potentials) p = AngularPotentialSpec::zero();
  q.params = {{"omega2", 1.0}};
  for (int d : blocks) q.levels.push_back(zonal_levels(d, 0));
  q.k = std::move(k);
  return q;
}

SpectrumQuery coulomb22(int nr, int j) {
  SpectrumQuery q;
  q.model = ModelSpec::coulomb_model1({2, 2});
  q.params = {{"eta", 1.0}, {"alpha1", 1.0}};
  q.levels = {zonal_levels(2, 1), zonal_levels(2, 0)};
  q.Nr = nr;
  q.J = {j};
  return q;
}

}  // namespace

TEST_CASE("lambda chain closed forms") {
  const std::map<std::string, double> none;
  CHECK(lambda_chain(AngularPotentialSpec::zero(), 3, zonal_levels(3, 1), none) == Catch::Approx(2));
  CHECK(lambda_chain(AngularPotentialSpec::zero(), 2, zonal_levels(2, 2), none) == Catch::Approx(4));
  CHECK(lambda_chain(AngularPotentialSpec::model2(2, {4, 1}), 2, {1}, none) == Catch::Approx(49));
}

TEST_CASE("oscillator energies: printed formula and oracle") {
  auto q = free_oscillator({1, 1}, {0, 0});
  CHECK(oscillator_energy_printed(q) == Catch::Approx(3));
  CHECK(oscillator_energy_oracle(q) == Catch::Approx(6));
  auto q22 = free_oscillator({2, 2}, {0, 0});
  CHECK(oscillator_energy_printed(q22) == Catch::Approx(2));
  CHECK(oscillator_energy_oracle(q22) == Catch::Approx(4));
  q22.k = {1, 0};
  CHECK(oscillator_energy_printed(q22) == Catch::Approx(4));
  // inverse-square coefficient -1/4 on both blocks
  auto r22 = adjudicate(q22);
  INFO("c = -1/4 rel " << r22.numeric_rel_error);
  CHECK(r22.agree);

  auto r = adjudicate(free_oscillator({1, 1}, {1, 2}));
  REQUIRE(r.exact_ratio.has_value());
  CHECK(*r.exact_ratio == 2);
  CHECK(r.agree);
}

TEST_CASE("per-block eigensolver calibration") {
  for (double c : {0.0, 2.0, 3.75}) {
    const double gamma = 0.5 * (1 + std::sqrt(1 + 4 * c));
    Eigensolve1DProblem p;
    p.potential = [c](double r) { return r * r + c / (r * r); };
    p.length = 9.0;
    p.count = 4;
    auto e = eigensolve_1d(p);
    for (int k = 0; k < 4; ++k) {
      const double exact = 4 * k + 2 * gamma + 1;
      CHECK(std::abs(e[k] - exact) <= 1e-6 * exact);
    }
  }
}

TEST_CASE("oracle consistency over k and beta") {
  SpectrumQuery base;
  base.model = ModelSpec::oscillator_model1({2, 3});
  base.params = {{"omega2", 1.5}, {"beta1", 2.0}, {"beta2", 0.5}};
  base.levels = {zonal_levels(2, 1), zonal_levels(3, 1)};
  auto qs = enumerate_oscillator(base, 3);
  CHECK(qs.size() == 10);
  for (const auto& q : qs) {
    auto r = adjudicate(q);
    INFO("k " << q.k[0] << "," << q.k[1] << " rel " << r.numeric_rel_error);
    CHECK(r.agree);
    CHECK(r.exact_ratio == Rational(2));
  }
  // energies depend on k only through sum k
  for (const auto& a : qs)
    for (const auto& b : qs)
      if (a.k[0] + a.k[1] == b.k[0] + b.k[1])
        CHECK(oscillator_energy_oracle(a) == Catch::Approx(oscillator_energy_oracle(b)));
}

TEST_CASE("oscillator monotonicity") {
  auto q = free_oscillator({2, 1}, {0, 0});
  const double e0 = oscillator_energy_oracle(q);
  q.k = {1, 0};
  CHECK(oscillator_energy_oracle(q) > e0);
  q.k = {0, 0};
  q.levels = {zonal_levels(2, 1), {}};
  CHECK(oscillator_energy_oracle(q) > e0);
}

TEST_CASE("Coulomb energies") {
  SpectrumQuery hyd;
  hyd.model = ModelSpec::coulomb_model1({3});
  hyd.params = {{"eta", 2.0}};
  hyd.levels = {zonal_levels(3, 0)};
  CHECK(coulomb_energy(hyd) == Catch::Approx(-1.0));
  auto rh = adjudicate(hyd);
  CHECK(rh.agree);

  double prev = -1e300;
  for (int nr = 0; nr <= 2; ++nr) {
    for (int j = 0; j <= 1; ++j) {
      auto q = coulomb22(nr, j);
      const auto [printed, twice] = coulomb_denominator_forms(q);
      CHECK(printed == twice);
      auto r = adjudicate(q);
      INFO("Nr " << nr << " J " << j << " rel " << r.numeric_rel_error);
      CHECK(r.agree);
      CHECK(r.exact_ratio == Rational(1));
    }
    const double e = coulomb_energy(coulomb22(nr, 0));
    CHECK(e > prev);
    CHECK(e < 0);
    prev = e;
  }
  auto q3 = coulomb22(0, 0);
  q3.model = ModelSpec::coulomb_model1({1, 2, 1});
  q3.params = {{"eta", 1.0}, {"alpha1", 0.5}, {"alpha2", 0.25}};
  q3.levels = {{}, zonal_levels(2, 1), {}};
  q3.J = {1, 2};
  const auto [p3, t3] = coulomb_denominator_forms(q3);
  CHECK(p3 == t3);
}

TEST_CASE("inadmissible queries") {
  auto q = free_oscillator({1, 1}, {0});
  CHECK_THROWS_AS(oscillator_energy_oracle(q), Error);
  auto c = coulomb22(0, 0);
  c.J = {};
  CHECK_THROWS_AS(coulomb_energy(c), Error);
}
