#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "blocksep/error.hpp"
#include "blocksep/models.hpp"

using namespace blocksep;
using namespace blocksep::opalg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("oscillator [1,1] with zero potential") {
  ModelSpec s;
  s.partition = make_partition({1, 1});
  s.coupling = Scalar::number(1);
  s.potentials = {AngularPotentialSpec::zero(), AngularPotentialSpec::zero()};
  Model m(s, Mode::symbolic);
  DiffOp expected = -(m.p(1) * m.p(1)) - m.p(2) * m.p(2) + m.x(1) * m.x(1) + m.x(2) * m.x(2);
  CHECK(m.hamiltonian() == expected);
}

TEST_CASE("Model 1 potential operators") {
  auto s = ModelSpec::oscillator_model1({2, 1});
  Model m(s, Mode::symbolic);
  auto& ctx = *m.ring();
  auto beta1 = Coefficient(Poly::variable(ctx.require_param("beta1")));
  auto expected = DiffOp::multiply(m.ring(), over_atom(beta1, *ctx.find_atom({0, 1})));
  CHECK(m.potential_operator(1) == expected);
  auto beta2 = Coefficient(Poly::variable(ctx.require_param("beta2")));
  CHECK(m.potential_operator(2) == DiffOp::multiply(m.ring(), over_atom(beta2, *ctx.find_atom({2}), 2)));

  ModelSpec z = s;
  z.potentials[0] = AngularPotentialSpec::zero();
  CHECK(Model(z, Mode::symbolic).potential_operator(1).is_zero());
  CHECK(formal_transpose(m.hamiltonian()) == m.hamiltonian());
}

TEST_CASE("Coulomb [1,1,1] hamiltonian") {
  auto s = ModelSpec::coulomb_model1({1, 1, 1});
  Model m(s, Mode::symbolic);
  const auto& ctx = *m.ring();
  auto h = m.hamiltonian();
  CHECK(formal_transpose(h) == h);
  // numeric spot value: H applied to 1 is the potential
  std::vector<double> x{0.3, -0.7, 1.1};
  std::map<std::string, double> pv{{"eta", 2}, {"alpha1", 0.5}, {"alpha2", 3}};
  auto vals = m.ring_values(x, pv);
  const auto& c = h.terms().at(DIdx{});
  double r = std::sqrt(0.09 + 0.49 + 1.21);
  CHECK_THAT(evaluate(c, ctx, vals), WithinRel(-2 / r + 0.5 / 0.09 + 3 / 0.49, 1e-13));
}

TEST_CASE("angular potential evaluation") {
  CHECK(eval_angular_potential(AngularPotentialSpec::constant_of(Scalar::number(5)), {}) == 5);
  LevelSpec c;
  c.kind = LevelSpec::Kind::constant;
  c.constant = Scalar::number(3);
  auto h = AngularPotentialSpec::hierarchy({c, LevelSpec{}});
  std::vector<double> ang{0.4, 1.1};
  CHECK_THAT(eval_angular_potential(h, ang), WithinRel(3 / std::pow(std::sin(1.1), 2), 1e-14));
  std::vector<double> bad{0.4, 0.0};
  try {
    eval_angular_potential(h, bad);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::evaluation_singularity);
  }
  CHECK_THAT(model2_potential({4, 1}, 0.0), WithinRel(197.0 / 25.0, 1e-14));
  CHECK_THROWS_AS(model2_potential({4, 1}, std::acos(-1.0) / 6), Error);
}

TEST_CASE("Model 2 jets match finite differences") {
  Model2Params p{4, 1};
  std::vector<double> jets(6);
  const double phi = 0.37, h = 1e-3;
  model2_potential_jets(p, phi, jets);
  auto f = [&](double t) { return model2_potential(p, t); };
  CHECK_THAT(jets[1], WithinRel((f(phi + h) - f(phi - h)) / (2 * h), 1e-5));
  CHECK_THAT(jets[2], WithinRel((f(phi + h) - 2 * f(phi) + f(phi - h)) / (h * h), 1e-5));
}

TEST_CASE("Model 2 is rejected symbolically and carried numerically") {
  ModelSpec s;
  s.partition = make_partition({2, 1});
  s.potentials = {AngularPotentialSpec::model2(2, {4, 1}), AngularPotentialSpec::zero()};
  try {
    Model(s, Mode::symbolic);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_symbolic_potential);
  }
  Model m(s, Mode::numeric);
  std::vector<double> x{0.6, 0.9, 0.4};
  auto vals = m.ring_values(x, {{"omega2", 1.0}});
  const auto h = m.hamiltonian();
  const auto& c = h.terms().at(DIdx{});
  double phi = std::atan2(0.6, 0.9);
  double expected = 0.36 + 0.81 + 0.16 + model2_potential({4, 1}, phi) / (0.36 + 0.81);
  CHECK_THAT(evaluate(c, *m.ring(), vals), WithinRel(expected, 1e-13));
}

TEST_CASE("hierarchy constants agree with the angular evaluator") {
  ModelSpec s;
  s.partition = make_partition({3, 1});
  LevelSpec g1, g2;
  g1.kind = g2.kind = LevelSpec::Kind::constant;
  g1.constant = Scalar::named("c1");
  g2.constant = Scalar::number(Rational(7, 3));
  s.potentials = {AngularPotentialSpec::hierarchy({g1, g2}),
                  AngularPotentialSpec::constant_of(Scalar::number(2))};
  Model m(s, Mode::symbolic);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  std::map<std::string, double> pv{{"omega2", 1.3}, {"c1", 0.75}};
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x{u(rng), -u(rng), u(rng), u(rng)};
    auto bp = to_block_spherical(x, s.partition);
    double f = eval_angular_potential(s.potentials[0], bp.angles[0], pv);
    auto vals = m.ring_values(x, pv);
    CHECK_THAT(evaluate(m.potential_function(1), *m.ring(), vals), WithinRel(f, 1e-12));
  }
}
