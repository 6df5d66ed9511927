#pragma once

#include <optional>
#include <vector>

#include "blocksep/specfun.hpp"

namespace blocksep {

/// Quantum numbers and parameter values; same layout as an eigenfunction.
using SpectrumQuery = EigenfunctionSpec;

/// c0 + sum_i c_i gamma_i with the gammas kept as independent symbols.
struct LinearForm {
  Rational c0;
  std::vector<Rational> gamma;

  LinearForm scaled(const Rational& s) const;
  friend bool operator==(const LinearForm& a, const LinearForm& b);
  double eval(std::span<const double> gammas) const;
};

/// Eigenvalue of the angular operator -L_i^2 + f_i on one block.
double lambda_chain(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                    const std::map<std::string, double>& params);

/// gamma_i = (1 + sqrt(1 + 4 lambda_i + (d_i-1)(d_i-3))) / 2 per block.
std::vector<double> oscillator_gammas(const SpectrumQuery& q);

/// Printed formula 2 w sum k + w sum gamma + w N / 2.
double oscillator_energy_printed(const SpectrumQuery& q);
/// Eigenvalue of the product eigenfunction: sum w (4 k_i + 2 gamma_i + 1).
double oscillator_energy_oracle(const SpectrumQuery& q);
/// Both energies divided by w, as linear forms in the gammas.
std::pair<LinearForm, LinearForm> oscillator_energy_forms(const SpectrumQuery& q);
/// Sum over blocks of the k_i-th eigenvalue of -u'' + w^2 r^2 u + c_i / r^2 u,
/// c_i = lambda_i + (d_i-1)(d_i-3)/4, from eigensolve_1d.
double oscillator_energy_eigensolve(const SpectrumQuery& q);

/// gamma_j = sqrt(1 + 4 lambda_j + (d_j-1)(d_j-3)) / 2 for all N blocks.
std::vector<double> coulomb_gammas(const SpectrumQuery& q);
/// Printed formula -eta^2 / (2 N_r + 4 sum J + 2 N - 1 + 2 sum gamma)^2.
double coulomb_energy(const SpectrumQuery& q);
/// kappa from the radial function, built through kappa_1..kappa_{N-1}.
LinearForm coulomb_kappa_form(const SpectrumQuery& q);
/// Printed denominator and 2 (N_r + kappa).
std::pair<LinearForm, LinearForm> coulomb_denominator_forms(const SpectrumQuery& q);
/// N_r-th eigenvalue of -F'' + kappa (kappa - 1) / r^2 F - eta / r F.
double coulomb_energy_eigensolve(const SpectrumQuery& q);

struct SpectrumResult {
  double printed_value = 0;
  double oracle_value = 0;
  /// oracle / printed.
  double ratio = 0;
  /// Set when the ratio holds identically in the gammas.
  std::optional<Rational> exact_ratio;
  /// Independent numeric value (1D eigensolver).
  double numeric_value = 0;
  double numeric_rel_error = 0;
  /// numeric_value matches oracle_value within tol.
  bool agree = false;
};

SpectrumResult adjudicate(const SpectrumQuery& q, double tol = 1e-6);

/// All k with sum k_i <= kmax, in graded lexicographic order.
std::vector<SpectrumQuery> enumerate_oscillator(const SpectrumQuery& base, int kmax);
/// All (N_r, J) with N_r <= nr_max and each J_s <= j_max, J outermost.
std::vector<SpectrumQuery> enumerate_coulomb(const SpectrumQuery& base, int nr_max, int j_max);

}  // namespace blocksep
