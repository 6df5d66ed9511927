#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "blocksep/numerics.hpp"

using namespace blocksep;
using opalg::DiffOp;

namespace {

// Random operator of order <= 2 mixing coordinates, partials, parameters and
// the rational potential atoms of a [2,1] Model-1 ring.
DiffOp random_op(const Model& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(1, m.dimension()), kind(0, 4), nterms(1, 3), nfac(1, 2), num(-3, 3);
  DiffOp out = DiffOp::zero(m.ring());
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    DiffOp term = DiffOp::scalar(m.ring(), Rational(num(rng)) / 2 + 1);
    const int factors = nfac(rng);
    for (int f = 0; f < factors; ++f) {
      switch (kind(rng)) {
        case 0: term = term * m.x(coord(rng)); break;
        case 1: term = term * m.p(coord(rng)); break;
        case 2: term = term * DiffOp::param(m.ring(), "beta1"); break;
        case 3: term = term * m.potential_operator(1); break;
        default: term = term * m.L(1, 3); break;
      }
    }
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("operator products are associative") {
  Model m(ModelSpec::oscillator_model1({2, 1}), Mode::symbolic);
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const DiffOp a = random_op(m, rng), b = random_op(m, rng), c = random_op(m, rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("commutators satisfy the Jacobi identity") {
  Model m(ModelSpec::oscillator_model1({2, 1}), Mode::symbolic);
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const DiffOp a = random_op(m, rng), b = random_op(m, rng), c = random_op(m, rng);
    using opalg::commutator;
    const DiffOp j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    CHECK(j.is_zero());
  }
}

TEST_CASE("angular momenta close into so(d)") {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = dim(rng);
    Model m(ModelSpec::oscillator_model1({d}), Mode::symbolic);
    std::uniform_int_distribution<int> idx(1, d);
    const int i = idx(rng), j = idx(rng), k = idx(rng), l = idx(rng);
    auto delta = [](int a, int b) { return a == b ? 1 : 0; };
    DiffOp rhs = m.L(i, l) * Rational(delta(j, k)) - m.L(j, l) * Rational(delta(i, k)) -
                 m.L(i, k) * Rational(delta(j, l)) + m.L(j, k) * Rational(delta(i, l));
    CHECK(opalg::commutator(m.L(i, j), m.L(k, l)) == rhs);
  }
}

TEST_CASE("finite differences converge at their nominal order") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> cu(0.5, 1.5), xu(-1, 1);
  std::uniform_int_distribution<int> dim(1, 3), ord(1, 3), der(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int D = dim(rng);
    std::vector<double> c(D), x(D);
    for (int a = 0; a < D; ++a) {
      c[a] = cu(rng);
      x[a] = xu(rng);
    }
    std::vector<int> alpha(D);
    int total = 0;
    for (auto& v : alpha) total += (v = der(rng));
    if (total == 0) alpha[0] = total = 1;
    const int order = 2 * ord(rng);
    // with h = 0.1 a sixth derivative at order 6 sits on the roundoff floor
    ScalarField f = [c](std::span<const double> y) {
      double s = 0;
      for (std::size_t a = 0; a < c.size(); ++a) s += c[a] * y[a];
      return std::exp(s);
    };
    double exact = f(x);
    for (int a = 0; a < D; ++a) exact *= std::pow(c[a], alpha[a]);
    const double e1 = std::abs(partial_derivative(f, x, alpha, FDScheme{order, 0.4}) - exact);
    const double e2 = std::abs(partial_derivative(f, x, alpha, FDScheme{order, 0.2}) - exact);
    const double measured = std::log2(e1 / e2);
    INFO("order " << order << " alpha total " << total << " measured " << measured);
    CHECK(std::abs(measured - order) < 0.6);
  }
}
