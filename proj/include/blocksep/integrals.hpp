#pragma once

#include <map>
#include <string>
#include <vector>

#include "blocksep/models.hpp"

namespace blocksep {

/// Identifier of an integral of motion. The meaning of the letters depends
/// on the model family: H, T, G, Z for the oscillator; T, Z, X, S, Y, J and
/// sigmaS for Coulomb. `full_hamiltonian` is the Hamiltonian itself.
struct IntegralName {
  enum class Kind { H, T, G, Z, X, S, Y, J, sigmaS, full_hamiltonian };
  Kind kind = Kind::full_hamiltonian;
  int i = 0;
  int j = 0;

  static IntegralName make(Kind k, int i = 0, int j = 0) { return {k, i, j}; }
  friend auto operator<=>(const IntegralName&, const IntegralName&) = default;
};

/// "H[2]", "G[1,2]", "sigmaS[3]", "H", ...
IntegralName parse_integral_name(const std::string& text);
std::string to_string(const IntegralName& name);

/// Builds the operator. Indices follow the displayed ranges; a handful of
/// boundary indices (Z[1], Z[N], Y[N], Y[N+1], S[n_{N-1}], S[D], J[D]) are
/// accepted and built from the same formulas.
opalg::DiffOp build_integral(const IntegralName& name, const Model& model);

/// Caches built integrals of one model. Not thread-safe.
class IntegralCache {
 public:
  explicit IntegralCache(const Model& model) : model_(model) {}
  const opalg::DiffOp& get(const IntegralName& name);
  const Model& model() const { return model_; }

 private:
  const Model& model_;
  std::map<IntegralName, opalg::DiffOp> cache_;
};

struct StructuralConstants {
  std::map<int, Rational> N;  // p in [2, N-1]
  std::map<int, Rational> M;  // p in [1, N-1]
  std::map<int, Rational> U;  // p in [n_{N-1}+1, D-1]
};

/// Values are also defined outside the displayed ranges by the same
/// formulas; `constant_N/M/U` evaluate them for any index.
StructuralConstants structural_constants(const Partition& part);
Rational constant_N(const Partition& part, int p);
Rational constant_M(const Partition& part, int p);
Rational constant_U(const Partition& part, int p);

/// Conjugation by the transposition of coordinates j and D (1-based),
/// j in [D - d_N + 1, D].
opalg::DiffOp conjugate_by_transposition(const opalg::DiffOp& op, int j, const Partition& part);

/// Closed form of sigma_jD o S_{D-1} o sigma_jD^{-1}. `printed` selects the
/// form with the bare derivative -d_j inside the Euler operator; otherwise
/// -x_j d_j is used.
opalg::DiffOp sigma_s_closed_form(const Model& model, int j, bool printed);

struct AliasCheck {
  std::string lhs;
  std::string rhs;
  bool zero = false;
};

std::vector<AliasCheck> checked_aliases(const Model& model);

/// The D + N - 1 oscillator integrals H_i, G^i_j, Z_l.
std::vector<IntegralName> oscillator_integral_basis(const Partition& part);
/// Every integral the Coulomb family declares (T, Z, X, S, Y, J).
std::vector<IntegralName> coulomb_integral_list(const Partition& part);

}  // namespace blocksep
