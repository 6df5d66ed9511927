#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "blocksep/opalg/monomial.hpp"
#include "blocksep/opalg/poly.hpp"

namespace blocksep::opalg {

enum class VarKind { coord, param, radical, jet };

/// Irreducible denominator factor: x_a (one coordinate) or a sum of squares
/// of two or more coordinates.
struct Atom {
  std::vector<int> support;  // sorted coordinate indices
  bool linear() const { return support.size() == 1; }
};

/// Symbol rho with rho^2 = sum of squares over `support` (|support| >= 2).
struct Radical {
  std::string name;
  std::vector<int> support;
  int atom = -1;
  int var = -1;
};

/// Opaque function F(phi) of the angle phi = atan2(x_sin, x_cos) in a
/// coordinate plane, carried through differentiation by jet symbols
/// F, F', F'', ... with d phi / d x_sin = x_cos / P and
/// d phi / d x_cos = -x_sin / P, P = x_sin^2 + x_cos^2.
struct AngleFunction {
  std::string name;
  int sin_coord = -1;
  int cos_coord = -1;
  int atom = -1;
  int first_var = -1;
  int jets = 0;
};

/// Variable layout and reduction rules of one coefficient ring. Immutable
/// once built (apart from an internal cache of atom powers); shared by every
/// DiffOp living in the ring.
class Context {
 public:
  class Builder;

  int coords() const { return coords_; }
  int num_vars() const { return static_cast<int>(var_names_.size()); }
  const std::string& var_name(int var) const { return var_names_.at(var); }
  VarKind var_kind(int var) const { return var_kinds_.at(var); }
  const std::string& coord_name(int coord) const { return var_names_.at(coord); }

  const std::vector<std::string>& params() const { return param_names_; }
  /// Ring variable index of a parameter, or nullopt.
  std::optional<int> param_var(const std::string& name) const;
  int require_param(const std::string& name) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Radical>& radicals() const { return radicals_; }
  const std::vector<AngleFunction>& angle_functions() const { return functions_; }

  std::optional<int> find_atom(std::vector<int> support) const;
  std::optional<int> find_radical(const std::string& name) const;
  std::optional<int> find_angle_function(const std::string& name) const;

  /// Sum of squares of the given coordinates as a polynomial.
  Poly sum_of_squares(const std::vector<int>& support) const;
  const Poly& atom_poly(int atom) const { return atom_polys_.at(atom); }
  /// atom^k, cached.
  const Poly& atom_power(int atom, int k) const;
  std::string atom_name(int atom) const;

 private:
  Context() = default;

  int coords_ = 0;
  std::vector<std::string> var_names_;
  std::vector<VarKind> var_kinds_;
  std::vector<std::string> param_names_;
  std::vector<int> param_vars_;
  std::vector<Atom> atoms_;
  std::vector<Poly> atom_polys_;
  std::vector<Radical> radicals_;
  std::vector<AngleFunction> functions_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::deque<Poly>> power_cache_;
};

using ContextPtr = std::shared_ptr<const Context>;

class Context::Builder {
 public:
  explicit Builder(int coords, std::vector<std::string> coord_names = {});

  Builder& param(const std::string& name);
  /// Registers the atom for the given support (deduplicated). Supports of
  /// size one register the linear atom x_a.
  Builder& atom(std::vector<int> support);
  Builder& radical(const std::string& name, std::vector<int> support);
  Builder& angle_function(const std::string& name, int sin_coord, int cos_coord, int jets = 12);

  ContextPtr build();

 private:
  int coords_;
  std::vector<std::string> coord_names_;
  std::vector<std::string> params_;
  std::vector<std::vector<int>> atoms_;
  std::vector<std::pair<std::string, std::vector<int>>> radicals_;
  struct Fn {
    std::string name;
    int s, c, jets;
  };
  std::vector<Fn> functions_;
};

}  // namespace blocksep::opalg
