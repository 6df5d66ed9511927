#pragma once

#include <map>
#include <string>
#include <vector>

#include "blocksep/models.hpp"
#include "blocksep/numerics.hpp"

namespace blocksep {

/// Polynomial as ascending coefficients.
using RationalPoly = std::vector<Rational>;

Rational eval_poly(const RationalPoly& p, const Rational& x);
double eval_poly(const RationalPoly& p, double x);
RationalPoly derivative(const RationalPoly& p);

/// Generalized Laguerre L_n^(alpha) by the three-term recurrence.
double laguerre(int n, double alpha, double x);
RationalPoly laguerre_poly(int n, const Rational& alpha);

/// Jacobi P_n^(alpha,beta); real parameters go through Boost.Math.
double jacobi(int n, double alpha, double beta, double x);
RationalPoly jacobi_poly(int n, const Rational& alpha, const Rational& beta);

/// X1 exceptional Jacobi polynomial of degree n >= 1 (Gomez-Ullate,
/// Kamran, Milson), scaled to the leading coefficient of P_n^(alpha,beta).
/// Requires alpha, beta > -1 and alpha != beta.
RationalPoly x1_jacobi_poly(int n, const Rational& alpha, const Rational& beta);
double x1_jacobi(int n, const Rational& alpha, const Rational& beta, double x);

/// (x^2-1) y'' + 2a (1-bx)/(b-x) ((x-c) y' - y) with a = (beta-alpha)/2,
/// b = (beta+alpha)/(beta-alpha), c = b + 1/a, times (b - x) so that the
/// result stays polynomial.
RationalPoly x1_operator_times_denominator(const RationalPoly& y, const Rational& alpha, const Rational& beta);

/// Angular solution of the exceptional level-1 equation
/// -h'' + F11(phi) h = (A + 3 J)^2 h.
double model2_angular(const Model2Params& p, int J, double phi);

struct Jet2 {
  double value = 0, d1 = 0, d2 = 0;
};
/// Value and first two phi-derivatives of model2_angular, in closed form.
Jet2 model2_angular_jet(const Model2Params& p, int J, double phi);

/// max |-h'' + F11 h - E h| / max |h| over `samples` angles spread across
/// the sector |phi| < pi/6 (margin 0.02 to the singular lines).
double model2_level1_residual(const Model2Params& p, int J, double E, int samples = 20);

/// Quantum numbers. `levels[i]` lists the level degrees n_1..n_{d_i-1} of
/// block i: n_1 is the cos(n phi) index, or J_1 for an exceptional block;
/// n_a (a >= 2) is the Gegenbauer degree of level a.
struct EigenfunctionSpec {
  ModelSpec model;
  std::map<std::string, double> params;
  std::vector<std::vector<int>> levels;
  /// Oscillator: radial number per block.
  std::vector<int> k;
  /// Coulomb: radial number and hyperspherical numbers J_1..J_{N-1}.
  int Nr = 0;
  std::vector<int> J;
};

/// Level degrees of the zonal spherical harmonic of degree l in d dimensions.
std::vector<int> zonal_levels(int d, int l);

struct BlockAngular {
  /// alpha_1..alpha_{d-1} of the level chain.
  std::vector<double> alpha;
  /// Eigenvalue of -L_i^2 + f_i on the block.
  double lambda = 0;
};

BlockAngular block_angular(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                           const std::map<std::string, double>& params);
/// Product of the level factors h_1..h_{d-1} at block coordinates y.
double block_angular_value(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                           const BlockAngular& chain, std::span<const double> y);

struct Eigenfunction {
  ScalarField psi;
  double energy = 0;
  std::vector<double> lambda;
  std::vector<double> gamma;
  /// Coulomb only.
  double kappa = 0;
};

Eigenfunction assemble_eigenfunction(const EigenfunctionSpec& es);

struct EigenCheck {
  double mean = 0;
  double rel_spread = 0;
  double rel_error = 0;
  std::size_t points = 0;
};

/// H Psi / Psi at `points` admissible points; spread is std / |mean| and
/// error is |mean - energy| / |energy|.
EigenCheck check_eigenfunction(const EigenfunctionSpec& es, int points, std::uint64_t seed,
                               const FDScheme& scheme = {});

}  // namespace blocksep
