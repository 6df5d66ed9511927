#include <catch_amalgamated.hpp>

#include "blocksep/error.hpp"
#include "blocksep/integrals.hpp"

using namespace blocksep;
using namespace blocksep::opalg;
using K = IntegralName::Kind;

namespace {
IntegralName I(K k, int i = 0, int j = 0) { return IntegralName::make(k, i, j); }
}  // namespace

TEST_CASE("integral names") {
  for (std::string s : {"H[1]", "T[2]", "G[1,2]", "Z[3]", "X[4]", "S[3]", "Y[1]", "J[3]", "sigmaS[3]", "H"})
    CHECK(to_string(parse_integral_name(s)) == s);
  CHECK_THROWS_AS(parse_integral_name("G[1]"), Error);
  CHECK_THROWS_AS(parse_integral_name("Q[1]"), Error);
}

TEST_CASE("oscillator integrals") {
  Model m(ModelSpec::oscillator_model1({1, 1}), Mode::symbolic);
  const auto& ctx = *m.ring();
  auto beta = [&](int i) { return Coefficient(Poly::variable(ctx.require_param("beta" + std::to_string(i)))); };
  // T_i = L_i^2 - beta_i; for one-coordinate blocks L_i^2 = 0
  CHECK(build_integral(I(K::T, 1), m) == -DiffOp::multiply(m.ring(), beta(1)));
  // Z_2 = L12^2 - (x1^2+x2^2)(beta1/x1^2 + beta2/x2^2)
  DiffOp l = m.L(1, 2);
  Coefficient pot = add(over_atom(beta(1), *ctx.find_atom({0}), 2), over_atom(beta(2), *ctx.find_atom({1}), 2), ctx);
  DiffOp expected = l * l - DiffOp::multiply(m.ring(), mul(m.squares(1, 2), pot, ctx));
  CHECK(build_integral(I(K::Z, 2), m) == expected);
  CHECK(oscillator_integral_basis(m.partition()).size() == 3);
  try {
    build_integral(I(K::Z, 3), m);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_integral);
  }
  CHECK_THROWS_AS(build_integral(I(K::G, 1, 1), m), Error);
  CHECK_THROWS_AS(build_integral(I(K::X, 1), m), Error);
}

TEST_CASE("integral count") {
  for (auto blocks : std::vector<std::vector<int>>{{1, 1}, {2, 2}, {1, 2, 3}, {3, 1, 1, 2}}) {
    auto part = make_partition(blocks);
    CHECK(static_cast<int>(oscillator_integral_basis(part).size()) ==
          part.dimension() + part.blocks() - 1);
  }
}

TEST_CASE("every oscillator integral commutes with H") {
  for (auto blocks : std::vector<std::vector<int>>{{2, 2}, {1, 1, 1}, {1, 2}}) {
    Model m(ModelSpec::oscillator_model1(blocks), Mode::symbolic);
    auto h = m.hamiltonian();
    for (const auto& n : oscillator_integral_basis(m.partition())) {
      INFO(to_string(n));
      CHECK(is_zero(commutator(h, build_integral(n, m))));
    }
    for (int i = 1; i <= m.blocks(); ++i) CHECK(is_zero(commutator(h, build_integral(I(K::T, i), m))));
  }
}

TEST_CASE("G integrals of a three-coordinate block keep only inner levels") {
  ModelSpec spec = ModelSpec::oscillator_model1({3, 1});
  LevelSpec inner{LevelSpec::Kind::constant, Scalar::named("c1"), {}};
  LevelSpec outer{LevelSpec::Kind::constant, Scalar::named("c2"), {}};
  for (auto pot : {AngularPotentialSpec::hierarchy({inner, outer}), spec.potentials[0]}) {
    spec.potentials[0] = pot;
    Model m(spec, Mode::symbolic);
    auto h = m.hamiltonian();
    for (const auto& n : oscillator_integral_basis(m.partition())) {
      INFO(to_string(n));
      CHECK(is_zero(commutator(h, build_integral(n, m))));
    }
  }
}

TEST_CASE("every Coulomb integral commutes with H") {
  for (auto blocks : std::vector<std::vector<int>>{{2, 2}, {1, 1, 1}, {1, 1, 2}}) {
    Model m(ModelSpec::coulomb_model1(blocks), Mode::symbolic);
    auto h = m.hamiltonian();
    for (const auto& n : coulomb_integral_list(m.partition())) {
      INFO(to_string(n));
      CHECK(is_zero(commutator(h, build_integral(n, m))));
    }
  }
}

TEST_CASE("aliases") {
  for (auto blocks : std::vector<std::vector<int>>{{2, 2}, {1, 2}}) {
    Model m(ModelSpec::oscillator_model1(blocks), Mode::symbolic);
    for (const auto& a : checked_aliases(m)) {
      INFO(a.lhs << " = " << a.rhs);
      CHECK(a.zero);
    }
  }
  for (auto blocks : std::vector<std::vector<int>>{{2, 2}, {1, 1, 2}}) {
    Model m(ModelSpec::coulomb_model1(blocks), Mode::symbolic);
    for (const auto& a : checked_aliases(m)) {
      INFO(a.lhs << " = " << a.rhs);
      CHECK(a.zero);
    }
  }
}

TEST_CASE("structural constants") {
  auto c = structural_constants(make_partition({2, 2}));
  CHECK(c.M.at(1) == Rational(3, 4));
  CHECK(c.U.at(3) == Rational(1, 4));
  CHECK(structural_constants(make_partition({1, 1, 1})).N.at(2) == 0);
}

TEST_CASE("transposition conjugation") {
  Model m(ModelSpec::coulomb_model1({2, 2}), Mode::symbolic);
  auto x4 = build_integral(I(K::X, 4), m);
  CHECK(conjugate_by_transposition(x4, 4, m.partition()) == x4);
  CHECK(conjugate_by_transposition(x4, 3, m.partition()) == build_integral(I(K::X, 3), m));
  auto y1 = build_integral(I(K::Y, 1), m);
  CHECK(conjugate_by_transposition(y1, 3, m.partition()) == y1);
  try {
    conjugate_by_transposition(x4, 2, m.partition());
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_index);
  }
  for (int j : {3, 4}) {
    auto s = build_integral(I(K::sigmaS, j), m);
    CHECK(s == sigma_s_closed_form(m, j, false));
    CHECK_FALSE(s == sigma_s_closed_form(m, j, true));
  }
}
