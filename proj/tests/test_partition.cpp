#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "blocksep/error.hpp"
#include "blocksep/partition.hpp"

using namespace blocksep;
using Catch::Matchers::WithinAbs;

TEST_CASE("make_partition") {
  auto p = make_partition({2, 2});
  CHECK(p.dimension() == 4);
  CHECK(p.blocks() == 2);
  CHECK(p.offset(0) == 0);
  CHECK(p.offset(1) == 2);
  CHECK(p.offset(2) == 4);
  CHECK(make_partition({1, 1, 1}).dimension() == 3);
  CHECK(make_partition({1, 1, 1}).blocks() == 3);
  try {
    make_partition({0, 2});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_partition);
  }
  CHECK_THROWS_AS(make_partition({}), Error);
}

TEST_CASE("block spherical axis points") {
  auto bp = to_block_spherical(std::vector<double>{0, 1}, make_partition({2}));
  CHECK_THAT(bp.radii[0], WithinAbs(1, 1e-15));
  CHECK_THAT(bp.angles[0][0], WithinAbs(0, 1e-15));

  bp = to_block_spherical(std::vector<double>{1, 0, 0, 1}, make_partition({2, 2}));
  CHECK_THAT(bp.radii[0], WithinAbs(1, 1e-15));
  CHECK_THAT(bp.radii[1], WithinAbs(1, 1e-15));
  CHECK_THAT(bp.angles[0][0], WithinAbs(std::numbers::pi / 2, 1e-15));
  CHECK_THAT(bp.angles[1][0], WithinAbs(0, 1e-15));

  BlockSphericalPoint q{{2.0}, {{std::numbers::pi / 2}}, {1}};
  auto x = from_block_spherical(q, make_partition({2}));
  CHECK_THAT(x[0], WithinAbs(2, 1e-15));
  CHECK_THAT(x[1], WithinAbs(0, 1e-15));

  bp = to_block_spherical(std::vector<double>{1, 1, 1}, make_partition({3}));
  CHECK_THAT(bp.radii[0], WithinAbs(std::sqrt(3.0), 1e-15));
  x = from_block_spherical(bp, make_partition({3}));
  for (double v : x) CHECK_THAT(v, WithinAbs(1, 1e-12));

  CHECK_THROWS_AS(to_block_spherical(std::vector<double>{0, 0, 1}, make_partition({2, 1})), Error);
}

TEST_CASE("hyperspherical") {
  auto h = to_hyperspherical(std::vector<double>{1, 1});
  CHECK_THAT(h.r, WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THAT(h.theta[0], WithinAbs(std::numbers::pi / 4, 1e-15));
  auto back = from_hyperspherical(to_hyperspherical(std::vector<double>{1e-4, 5}));
  CHECK_THAT(back[0] / 1e-4, WithinAbs(1, 1e-10));
  CHECK_THAT(back[1] / 5, WithinAbs(1, 1e-10));
  h = to_hyperspherical(std::vector<double>{1, 1, 1});
  CHECK_THAT(h.r, WithinAbs(std::sqrt(3.0), 1e-15));
  back = from_hyperspherical(h);
  for (double v : back) CHECK_THAT(v, WithinAbs(1, 1e-12));
  CHECK_THROWS_AS(to_hyperspherical(std::vector<double>{0, 0}), Error);
}

TEST_CASE("random round trips and norms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_int_distribution<int> sz(1, 3), nb(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> sizes(nb(rng));
    for (auto& s : sizes) s = sz(rng);
    auto part = make_partition(sizes);
    std::vector<double> x(part.dimension());
    for (auto& v : x) v = u(rng);
    auto bp = to_block_spherical(x, part);
    std::size_t angles = 0;
    for (const auto& a : bp.angles) angles += a.size();
    CHECK(static_cast<int>(angles) == part.dimension() - part.blocks());
    auto y = from_block_spherical(bp, part);
    double norm2 = 0, rsum = 0;
    for (int a = 0; a < part.dimension(); ++a) {
      CHECK(std::abs(y[a] - x[a]) <= 1e-12 * (1 + std::abs(x[a])));
      norm2 += x[a] * x[a];
    }
    for (double r : bp.radii) rsum += r * r;
    CHECK(std::abs(norm2 - rsum) <= 1e-14 * norm2 * 4);
    auto h = to_hyperspherical(bp.radii);
    CHECK(std::abs(h.r * h.r - norm2) <= 1e-14 * norm2 * 4);
    auto radii = from_hyperspherical(h);
    for (std::size_t i = 0; i < radii.size(); ++i)
      CHECK(std::abs(radii[i] - bp.radii[i]) <= 1e-12 * bp.radii[i]);
    // exact squared radii on a rational point
    std::vector<Rational> q(part.dimension());
    Rational total = 0;
    for (int a = 0; a < part.dimension(); ++a) {
      q[a] = Rational(static_cast<long>(std::lround(x[a] * 100)), 7);
      total += q[a] * q[a];
    }
    Rational s = 0;
    for (const auto& r2 : block_radii_squared(q, part)) s += r2;
    CHECK(s == total);
  }
}
