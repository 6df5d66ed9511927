#pragma once

#include <span>
#include <vector>

#include "blocksep/rational.hpp"

namespace blocksep {

/// Ordered decomposition of the D Cartesian coordinates into N nonempty
/// consecutive blocks. Block indices are 1-based (1..N) as are the
/// cumulative offsets n_0 = 0 < n_1 < ... < n_N = D; coordinate indices
/// returned by `block_coords` are 0-based.
class Partition {
 public:
  static Partition make(std::vector<int> block_sizes);

  int dimension() const { return offsets_.back(); }
  int blocks() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  int size(int block) const { return sizes_.at(block - 1); }
  /// n_i for i in [0, N].
  int offset(int i) const { return offsets_.at(i); }
  /// 0-based coordinate indices of block i.
  std::vector<int> block_coords(int block) const;
  /// Block (1-based) owning the 0-based coordinate.
  int block_of(int coord) const;
  /// Sum of d_i for i in [first, last] (empty range gives 0).
  int size_sum(int first, int last) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
};

inline Partition make_partition(std::vector<int> block_sizes) {
  return Partition::make(std::move(block_sizes));
}

struct BlockSphericalPoint {
  std::vector<double> radii;
  /// Per block: phi_1..phi_{d_i-1}; empty for one-coordinate blocks.
  std::vector<std::vector<double>> angles;
  /// Per block: sign of the coordinate for one-coordinate blocks, +1 otherwise.
  std::vector<int> signs;
};

struct HypersphericalPoint {
  double r = 0.0;
  /// theta_1..theta_{N-1}.
  std::vector<double> theta;
};

/// Angle branches: phi_{d-1},...,phi_2 in [0, pi], phi_1 in [0, 2 pi).
BlockSphericalPoint to_block_spherical(std::span<const double> x, const Partition& part);
std::vector<double> from_block_spherical(const BlockSphericalPoint& bp, const Partition& part);

HypersphericalPoint to_hyperspherical(std::span<const double> radii);
std::vector<double> from_hyperspherical(const HypersphericalPoint& hp);

/// Exact squared block radii for a rational point.
std::vector<Rational> block_radii_squared(std::span<const Rational> x, const Partition& part);

/// Spherical chain of one block: y_d = r cos phi_{d-1}, ..., y_1 = r prod sin phi.
std::vector<double> sphere_chain(double r, std::span<const double> angles, std::size_t d);
std::vector<double> sphere_angles(std::span<const double> y);

}  // namespace blocksep
