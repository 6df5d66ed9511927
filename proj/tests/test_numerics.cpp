#include <catch_amalgamated.hpp>

#include <cmath>

#include "blocksep/error.hpp"
#include "blocksep/numerics.hpp"

using namespace blocksep;
using opalg::DiffOp;

namespace {

ModelSpec model2_oscillator() {
  ModelSpec spec = ModelSpec::oscillator_model1({2, 1});
  spec.potentials[0] = AngularPotentialSpec::model2(2, {4, 1});
  spec.potentials[1] = AngularPotentialSpec::zero();
  return spec;
}

}  // namespace

TEST_CASE("stencil weights") {
  auto w = central_weights(2, 2);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Catch::Approx(1.0));
  CHECK(w[1] == Catch::Approx(-2.0));
  auto w1 = central_weights(1, 4);
  REQUIRE(w1.size() == 5);
  CHECK(w1[0] == Catch::Approx(1.0 / 12));
  CHECK(w1[1] == Catch::Approx(-2.0 / 3));
  // weights of derivative k annihilate polynomials of lower degree
  for (int k = 1; k <= 6; ++k) {
    auto wk = central_weights(k, 8);
    const int m = static_cast<int>(wk.size() / 2);
    for (int deg = 0; deg < k; ++deg) {
      double s = 0;
      for (int i = -m; i <= m; ++i) s += wk[i + m] * std::pow(i, deg);
      CHECK(std::abs(s) < 1e-9);
    }
  }
}

TEST_CASE("apply_numeric on simple operators") {
  auto ring = opalg::Context::Builder(3).build();
  auto ctx = numeric_context(ring, {});
  ScalarField sq = [](std::span<const double> x) { return x[0] * x[0]; };
  std::vector<double> x{1.0, 1.0, 1.0};
  CHECK(std::abs(apply_numeric(DiffOp::partial(ring, 0), sq, x, ctx) - 2.0) < 1e-10);

  DiffOp lap = DiffOp::zero(ring);
  for (int a = 0; a < 3; ++a) lap += DiffOp::partial(ring, a) * DiffOp::partial(ring, a);
  ScalarField g = [](std::span<const double> y) { return std::exp(-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])); };
  std::vector<double> p{0.3, 0.3, 0.3};
  const double r2 = 0.27;
  const double exact = (4 * r2 - 6) * std::exp(-r2);
  CHECK(std::abs(apply_numeric(lap, g, p, ctx) - exact) < 1e-8 * std::abs(exact));

  std::vector<double> bad{0.01, 1.0, 1.0};
  try {
    apply_numeric(lap, g, bad, ctx);
    FAIL("expected singular sample");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_sample);
  }
}

TEST_CASE("finite differences converge at the stencil order") {
  ScalarField f = [](std::span<const double> x) { return std::exp(std::sin(x[0])); };
  std::vector<double> x{0.4};
  const double exact = std::cos(0.4) * std::exp(std::sin(0.4));
  for (int order : {4, 6, 8}) {
    std::vector<int> alpha{1};
    FDScheme a{order, 0.2}, b{order, 0.1};
    const double ea = std::abs(partial_derivative(f, x, alpha, a) - exact);
    const double eb = std::abs(partial_derivative(f, x, alpha, b) - exact);
    const double measured = std::log2(ea / eb);
    INFO("order " << order << " measured " << measured);
    CHECK(std::abs(measured - order) < 0.5);
  }
}

TEST_CASE("Model 2 Hamiltonian matches a direct evaluation") {
  const std::map<std::string, double> params{{"omega2", 1.7}};
  Model m(model2_oscillator(), Mode::numeric);
  auto ctx = numeric_context(m, params);
  auto h = m.hamiltonian();
  std::mt19937_64 rng(11);
  const Model2Params mp{4, 1};
  for (int k = 0; k < 5; ++k) {
    auto probe = ProbeFunction::random(3, rng);
    auto x = sample_points(ctx, 3, 1, rng)[0];
    const ScalarField f = probe.field();
    double lap = 0;
    for (int a = 0; a < 3; ++a) {
      std::vector<int> alpha(3, 0);
      alpha[a] = 2;
      lap += partial_derivative(f, x, alpha);
    }
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double pot = model2_potential(mp, std::atan2(x[0], x[1])) / (x[0] * x[0] + x[1] * x[1]);
    const double direct = -lap + (1.7 * r2 + pot) * f(x);
    const double via_ring = apply_numeric(h, f, x, ctx);
    CHECK(std::abs(direct - via_ring) <= 1e-7 * (1 + std::abs(direct)));
  }
}

TEST_CASE("numeric relation residuals agree with exact results") {
  const auto spec = ModelSpec::oscillator_model1({2, 2});
  auto rs = catalog_oscillator(spec, Mode::numeric);
  auto model = std::static_pointer_cast<const ModelResolver>(rs.resolver);
  auto ctx = numeric_context(model->model(), {{"omega2", 1.3}, {"beta1", 0.7}, {"beta2", 2.1}});
  NumericOptions opt;
  opt.probes = 2;
  opt.points = 3;
  auto rep = verify_numeric(rs, ctx, 4, opt, 4);
  for (const auto& r : rep.results) {
    INFO(r.name << " max " << r.stats.max);
    CHECK(r.pass);
  }
  auto neg = catalog_negative_controls(spec);
  auto nctx = numeric_context(std::static_pointer_cast<const ModelResolver>(neg.resolver)->model(),
                              {{"omega2", 1.3}, {"beta1", 0.7}, {"beta2", 2.1}});
  auto nrep = verify_numeric(neg, nctx, 4, opt);
  for (const auto& r : nrep.results) {
    INFO(r.name << " max " << r.stats.max);
    CHECK(r.stats.max >= 1e-2);
  }
}

TEST_CASE("numeric residuals are seed deterministic") {
  auto rs = catalog_oscillator(ModelSpec::oscillator_model1({1, 1}), Mode::numeric);
  auto ctx = numeric_context(std::static_pointer_cast<const ModelResolver>(rs.resolver)->model(),
                             {{"omega2", 1.0}, {"beta1", 0.5}, {"beta2", 1.5}});
  NumericOptions opt;
  opt.probes = 2;
  opt.points = 2;
  auto a = verify_numeric(rs, ctx, 2, opt), b = verify_numeric(rs, ctx, 2, opt, 3);
  for (std::size_t i = 0; i < a.results.size(); ++i) CHECK(a.results[i].stats.max == b.results[i].stats.max);
}

TEST_CASE("eigensolve_1d oracles") {
  auto osc = [](double c) {
    Eigensolve1DProblem p;
    p.potential = [c](double r) { return r * r + c / (r * r); };
    p.length = 9.0;
    p.grid = 400;
    p.count = 4;
    return eigensolve_1d(p);
  };
  auto e0 = osc(0);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e0[k] - (4 * k + 3)) < 1e-6 * (4 * k + 3));
  auto e2 = osc(2);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e2[k] - (4 * k + 5)) < 1e-6 * (4 * k + 5));

  Eigensolve1DProblem flat;
  flat.potential = [](double r) { return r * r - 0.25 / (r * r); };
  flat.length = 9.0;
  flat.count = 3;
  flat.sqrt_origin = true;
  auto ef = eigensolve_1d(flat);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(ef[k] - (4 * k + 2)) < 1e-6 * (4 * k + 2));

  Eigensolve1DProblem hyd;
  hyd.potential = [](double r) { return -2.0 / r; };
  hyd.length = 40.0;
  hyd.grid = 2000;
  hyd.count = 1;
  CHECK(std::abs(eigensolve_1d(hyd)[0] + 1.0) < 1e-6);

  Eigensolve1DProblem bad;
  bad.grid = 10;
  CHECK_THROWS_AS(eigensolve_1d(bad), Error);
}
