#include "blocksep/partition.hpp"

#include <cmath>
#include <numbers>

#include "blocksep/error.hpp"

namespace blocksep {

Partition Partition::make(std::vector<int> block_sizes) {
  if (block_sizes.empty()) throw Error(ErrorKind::invalid_partition, "no blocks given");
  Partition p;
  p.offsets_.push_back(0);
  for (int d : block_sizes) {
    if (d < 1) throw Error(ErrorKind::invalid_partition, "block sizes must be >= 1");
    p.offsets_.push_back(p.offsets_.back() + d);
  }
  p.sizes_ = std::move(block_sizes);
  return p;
}

std::vector<int> Partition::block_coords(int block) const {
  if (block < 1 || block > blocks()) throw Error(ErrorKind::invalid_index, "block index out of range");
  std::vector<int> out;
  for (int c = offsets_[block - 1]; c < offsets_[block]; ++c) out.push_back(c);
  return out;
}

int Partition::block_of(int coord) const {
  for (int i = 1; i <= blocks(); ++i)
    if (coord < offsets_[i]) return i;
  throw Error(ErrorKind::invalid_index, "coordinate out of range");
}

int Partition::size_sum(int first, int last) const {
  int s = 0;
  for (int i = first; i <= last; ++i) s += size(i);
  return s;
}

std::vector<double> sphere_chain(double r, std::span<const double> angles, std::size_t d) {
  std::vector<double> y(d);
  double scale = r;
  // y_d = r cos phi_{d-1}; y_{k+1} = r prod_{m>k} sin phi_m cos phi_k; y_1 = r prod sin.
  for (std::size_t k = d - 1; k >= 1; --k) {
    y[k] = scale * std::cos(angles[k - 1]);
    scale *= std::sin(angles[k - 1]);
  }
  y[0] = scale;
  return y;
}

std::vector<double> sphere_angles(std::span<const double> y) {
  const std::size_t d = y.size();
  std::vector<double> phi(d - 1);
  double partial = y[0] * y[0];
  // rho_k^2 = y_1^2 + ... + y_k^2 ; phi_k = atan2(rho_k, y_{k+1})
  for (std::size_t k = 1; k < d; ++k) {
    if (k == 1) {
      double a = std::atan2(y[0], y[1]);
      if (a < 0) a += 2 * std::numbers::pi;
      phi[0] = a;
    } else {
      phi[k - 1] = std::atan2(std::sqrt(partial), y[k]);
    }
    partial += y[k] * y[k];
  }
  return phi;
}

BlockSphericalPoint to_block_spherical(std::span<const double> x, const Partition& part) {
  if (static_cast<int>(x.size()) != part.dimension())
    throw Error(ErrorKind::invalid_index, "point dimension does not match partition");
  BlockSphericalPoint bp;
  for (int i = 1; i <= part.blocks(); ++i) {
    auto coords = part.block_coords(i);
    std::vector<double> y;
    double r2 = 0.0;
    for (int c : coords) {
      y.push_back(x[c]);
      r2 += x[c] * x[c];
    }
    if (r2 == 0.0) throw Error(ErrorKind::singular_point, "zero block radius");
    bp.radii.push_back(std::sqrt(r2));
    if (y.size() == 1) {
      bp.angles.emplace_back();
      bp.signs.push_back(y[0] < 0 ? -1 : 1);
    } else {
      bp.angles.push_back(sphere_angles(y));
      bp.signs.push_back(1);
    }
  }
  return bp;
}

std::vector<double> from_block_spherical(const BlockSphericalPoint& bp, const Partition& part) {
  std::vector<double> x(part.dimension());
  for (int i = 1; i <= part.blocks(); ++i) {
    const auto coords = part.block_coords(i);
    const double r = bp.radii.at(i - 1);
    if (coords.size() == 1) {
      const int s = bp.signs.empty() ? 1 : bp.signs.at(i - 1);
      x[coords[0]] = s * r;
      continue;
    }
    auto y = sphere_chain(r, bp.angles.at(i - 1), coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) x[coords[k]] = y[k];
  }
  return x;
}

HypersphericalPoint to_hyperspherical(std::span<const double> radii) {
  if (radii.empty()) throw Error(ErrorKind::singular_point, "no radii");
  double r2 = 0.0;
  for (double v : radii) r2 += v * v;
  if (r2 == 0.0) throw Error(ErrorKind::singular_point, "all radii vanish");
  HypersphericalPoint hp;
  hp.r = std::sqrt(r2);
  if (radii.size() == 1) return hp;
  double partial = radii[0] * radii[0];
  for (std::size_t k = 1; k < radii.size(); ++k) {
    hp.theta.push_back(std::atan2(std::sqrt(partial), radii[k]));
    partial += radii[k] * radii[k];
  }
  return hp;
}

std::vector<double> from_hyperspherical(const HypersphericalPoint& hp) {
  const std::size_t n = hp.theta.size() + 1;
  if (n == 1) return {hp.r};
  return sphere_chain(hp.r, hp.theta, n);
}

std::vector<Rational> block_radii_squared(std::span<const Rational> x, const Partition& part) {
  if (static_cast<int>(x.size()) != part.dimension())
    throw Error(ErrorKind::invalid_index, "point dimension does not match partition");
  std::vector<Rational> out;
  for (int i = 1; i <= part.blocks(); ++i) {
    Rational s = 0;
    for (int c : part.block_coords(i)) s += x[c] * x[c];
    out.push_back(s);
  }
  return out;
}

}  // namespace blocksep
