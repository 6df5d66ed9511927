#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "blocksep/error.hpp"
#include "blocksep/specfun.hpp"

using namespace blocksep;


TEST_CASE("Laguerre and Jacobi low degrees") {
  CHECK(laguerre(0, 0.7, 2.3) == 1.0);
  CHECK(laguerre(1, 0.7, 2.3) == Catch::Approx(1 + 0.7 - 2.3));
  CHECK(jacobi(1, 0.3, 1.2, 0.4) == Catch::Approx(1.3 + 3.5 * (0.4 - 1) / 2));
  for (int n = 0; n <= 6; ++n)
    for (unsigned a = 0; a <= 2; ++a)
      CHECK(laguerre(n, a, 1.7) == Catch::Approx(std::assoc_laguerre(n, a, 1.7)).epsilon(1e-12));
  const Rational al(1, 3), be(-1, 2);
  for (int n = 0; n <= 6; ++n) {
    CHECK(eval_poly(jacobi_poly(n, al, be), 0.3) == Catch::Approx(jacobi(n, 1.0 / 3, -0.5, 0.3)).epsilon(1e-12));
    CHECK(eval_poly(laguerre_poly(n, al), 0.9) == Catch::Approx(laguerre(n, 1.0 / 3, 0.9)).epsilon(1e-12));
  }
  // exact rational value at a rational argument
  CHECK(eval_poly(laguerre_poly(2, Rational(0)), Rational(1)) == Rational(-1, 2));
}

TEST_CASE("orthogonality spot checks") {
  // Gauss-Laguerre and Gauss-Jacobi nodes from the Golub-Welsch matrices would
  // need an eigensolver; a fine composite rule on a mapped grid is enough here.
  const double alpha = 0.5;
  for (int m = 0; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n) {
      double s = 0;
      const int M = 200000;
      const double L = 60;
      for (int i = 0; i < M; ++i) {
        const double t = (i + 0.5) / M;
        const double x = L * t * t, dx = 2 * L * t / M;
        s += laguerre(m, alpha, x) * laguerre(n, alpha, x) * std::pow(x, alpha) * std::exp(-x) * dx;
      }
      CHECK(std::abs(s) < 1e-8);
    }
  const double a = 1.0, b = 2.0;
  for (int m = 0; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n) {
      double s = 0;
      const int M = 20000;
      for (int i = 0; i < M; ++i) {
        const double th = std::numbers::pi * (i + 0.5) / M, x = std::cos(th);
        s += jacobi(m, a, b, x) * jacobi(n, a, b, x) * std::pow(1 - x, a) * std::pow(1 + x, b) * std::sin(th) *
             std::numbers::pi / M;
      }
      CHECK(std::abs(s) < 1e-8);
    }
}

TEST_CASE("X1 Jacobi polynomials are exact eigenpolynomials") {
  const std::vector<std::pair<Rational, Rational>> params{
      {Rational(1, 2), Rational(7, 6)}, {Rational(0), Rational(1)}, {Rational(3, 2), Rational(-1, 2)}};
  for (const auto& [al, be] : params)
    for (int n = 1; n <= 6; ++n) {
      auto p = x1_jacobi_poly(n, al, be);
      CHECK(p.size() == static_cast<std::size_t>(n + 1));
      auto lhs = x1_operator_times_denominator(p, al, be);
      const Rational b = (be + al) / (be - al);
      const Rational ev = Rational(n - 1) * (n + al + be);
      // ev (b - x) p
      RationalPoly rhs(p.size() + 1, Rational(0));
      for (std::size_t i = 0; i < p.size(); ++i) {
        rhs[i] += ev * b * p[i];
        rhs[i + 1] -= ev * p[i];
      }
      lhs.resize(std::max(lhs.size(), rhs.size()), Rational(0));
      rhs.resize(lhs.size(), Rational(0));
      CHECK(lhs == rhs);
    }
  CHECK_THROWS_AS(x1_jacobi_poly(2, Rational(1), Rational(1)), Error);
  CHECK_THROWS_AS(x1_jacobi_poly(2, Rational(-1), Rational(1)), Error);
  CHECK_THROWS_AS(x1_jacobi_poly(0, Rational(0), Rational(1)), Error);
}

TEST_CASE("exceptional level-1 functions solve the angular equation") {
  const Model2Params p{4, 1};
  for (int J = 0; J <= 3; ++J) {
    const double E = std::pow(4 + 3 * J, 2);
    const double good = model2_level1_residual(p, J, E);
    const double bad = model2_level1_residual(p, J, E + 1);
    INFO("J " << J << " residual " << good << " perturbed " << bad);
    CHECK(good <= 1e-8);
    CHECK(bad >= 1e-2);
    // the closed-form jet agrees with finite differences
    ScalarField h = [&](std::span<const double> t) { return model2_angular(p, J, t[0]); };
    std::vector<double> x{0.1};
    std::vector<int> two{2};
    const Jet2 jet = model2_angular_jet(p, J, 0.1);
    CHECK(jet.value == Catch::Approx(h(x)));
    CHECK(jet.d2 == Catch::Approx(partial_derivative(h, x, two)).epsilon(1e-6));
  }
}

TEST_CASE("angular chain eigenvalues") {
  const std::map<std::string, double> none;
  CHECK(block_angular(AngularPotentialSpec::zero(), 3, zonal_levels(3, 1), none).lambda == Catch::Approx(2));
  CHECK(block_angular(AngularPotentialSpec::zero(), 2, zonal_levels(2, 2), none).lambda == Catch::Approx(4));
  CHECK(block_angular(AngularPotentialSpec::model2(2, {4, 1}), 2, {1}, none).lambda == Catch::Approx(49));
  auto beta = AngularPotentialSpec::constant_of(Scalar::named("b"));
  CHECK(block_angular(beta, 4, zonal_levels(4, 2), {{"b", 0.5}}).lambda == Catch::Approx(2 * 4 + 0.5));
  CHECK(block_angular(beta, 1, {}, {{"b", 0.5}}).lambda == Catch::Approx(0.5));
  CHECK_THROWS_AS(block_angular(beta, 3, {1}, {{"b", 0.5}}), Error);
}

TEST_CASE("oscillator eigenfunctions") {
  EigenfunctionSpec es;
  es.model = ModelSpec::oscillator_model1({1, 1});
  es.model.potentials = {AngularPotentialSpec::zero(), AngularPotentialSpec::zero()};
  es.params = {{"omega2", 1.0}};
  es.levels = {{}, {}};
  es.k = {0, 0};
  auto ef = assemble_eigenfunction(es);
  CHECK(ef.energy == Catch::Approx(6));
  const std::vector<double> x{0.3, -0.7};
  CHECK(ef.psi(x) == Catch::Approx(std::abs(0.3 * 0.7) * std::exp(-(0.09 + 0.49) / 2)));

  EigenfunctionSpec m1;
  m1.model = ModelSpec::oscillator_model1({2, 2});
  m1.params = {{"omega2", 1.0}, {"beta1", 1.0}, {"beta2", 2.0}};
  m1.levels = {zonal_levels(2, 1), zonal_levels(2, 0)};
  m1.k = {0, 1};
  const std::vector<double> half(4, 0.5);
  CHECK(std::isfinite(assemble_eigenfunction(m1).psi(half)));
  auto c = check_eigenfunction(m1, 10, 5);
  INFO("mean " << c.mean << " spread " << c.rel_spread);
  CHECK(c.rel_spread <= 1e-6);
  CHECK(c.rel_error <= 1e-6);

  EigenfunctionSpec m3;
  m3.model = ModelSpec::oscillator_model1({3, 2});
  m3.params = {{"omega2", 1.3}, {"beta1", 0.4}, {"beta2", 0.0}};
  m3.levels = {zonal_levels(3, 2), zonal_levels(2, 1)};
  m3.k = {1, 0};
  auto c3 = check_eigenfunction(m3, 10, 2);
  CHECK(c3.rel_spread <= 1e-6);
  CHECK(c3.rel_error <= 1e-6);

  EigenfunctionSpec h;
  h.model = ModelSpec::oscillator_model1({3});
  h.model.potentials = {AngularPotentialSpec::hierarchy(
      {LevelSpec{LevelSpec::Kind::constant, Scalar::named("c1"), {}},
       LevelSpec{LevelSpec::Kind::constant, Scalar::named("c2"), {}}})};
  h.params = {{"omega2", 0.8}, {"c1", 0.6}, {"c2", 1.1}};
  h.levels = {{2, 1}};
  h.k = {1};
  auto ch = check_eigenfunction(h, 10, 3);
  CHECK(ch.rel_spread <= 1e-6);
  CHECK(ch.rel_error <= 1e-6);
}

TEST_CASE("Model 2 oscillator eigenfunction") {
  EigenfunctionSpec es;
  es.model = ModelSpec::oscillator_model1({2, 1});
  es.model.potentials = {AngularPotentialSpec::model2(2, {4, 1}), AngularPotentialSpec::zero()};
  es.params = {{"omega2", 1.0}};
  es.levels = {{1}, {}};
  es.k = {0, 1};
  auto c = check_eigenfunction(es, 10, 7);
  INFO("mean " << c.mean << " spread " << c.rel_spread);
  CHECK(c.rel_spread <= 1e-5);
  CHECK(c.rel_error <= 1e-5);
}

TEST_CASE("Coulomb eigenfunctions") {
  for (int Nr = 0; Nr <= 1; ++Nr)
    for (int J = 0; J <= 1; ++J) {
      EigenfunctionSpec es;
      es.model = ModelSpec::coulomb_model1({2, 2});
      es.params = {{"eta", 1.5}, {"alpha1", 1.0}};
      es.levels = {zonal_levels(2, 1), zonal_levels(2, 1)};
      es.Nr = Nr;
      es.J = {J};
      auto c = check_eigenfunction(es, 10, 9);
      INFO("Nr " << Nr << " J " << J << " mean " << c.mean << " spread " << c.rel_spread);
      CHECK(c.rel_spread <= 1e-6);
      CHECK(c.rel_error <= 1e-6);
    }
  EigenfunctionSpec three;
  three.model = ModelSpec::coulomb_model1({1, 1, 2});
  three.params = {{"eta", 4.0}, {"alpha1", 0.5}, {"alpha2", 0.3}};
  three.levels = {{}, {}, zonal_levels(2, 1)};
  three.Nr = 1;
  three.J = {1, 0};
  FDScheme fine;
  fine.richardson = true;
  auto c = check_eigenfunction(three, 10, 4, fine);
  CHECK(c.rel_spread <= 1e-6);
  CHECK(c.rel_error <= 1e-6);

  EigenfunctionSpec hyd;
  hyd.model = ModelSpec::coulomb_model1({3});
  hyd.params = {{"eta", 2.0}};
  hyd.levels = {zonal_levels(3, 0)};
  CHECK(assemble_eigenfunction(hyd).energy == Catch::Approx(-1.0));
}
