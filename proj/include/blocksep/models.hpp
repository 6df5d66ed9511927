#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blocksep/opalg/diffop.hpp"
#include "blocksep/partition.hpp"

namespace blocksep {

enum class Family { oscillator, coulomb };

/// How operators are built: `symbolic` admits only potentials that are
/// rational in Cartesian coordinates; `numeric` additionally carries the
/// Model-2 function as an opaque angle-function symbol whose jets are
/// supplied by an evaluator.
enum class Mode { symbolic, numeric };

/// A constant that is either a rational value or a named symbolic parameter.
struct Scalar {
  std::optional<Rational> value = Rational(0);
  std::string symbol;

  static Scalar number(const Rational& v) { return {v, {}}; }
  static Scalar named(std::string s) { return {std::nullopt, std::move(s)}; }
  bool symbolic() const { return !value.has_value(); }
};

/// Parameters of the exceptional potential F^1_1.
struct Model2Params {
  Rational A;
  Rational B;
};

/// One level G^i_j of the nested angular potential.
struct LevelSpec {
  enum class Kind { zero, constant, model2 };
  Kind kind = Kind::zero;
  Scalar constant;
  Model2Params model2;
};

/// f_i(Omega_i) for one block.
struct AngularPotentialSpec {
  enum class Kind { zero, constant, hierarchy };
  Kind kind = Kind::zero;
  Scalar constant;
  /// levels[j-1] is G^i_j, j = 1..d_i-1 (hierarchy only).
  std::vector<LevelSpec> levels;

  static AngularPotentialSpec zero() { return {}; }
  static AngularPotentialSpec constant_of(Scalar c) { return {Kind::constant, std::move(c), {}}; }
  static AngularPotentialSpec hierarchy(std::vector<LevelSpec> levels) {
    return {Kind::hierarchy, {}, std::move(levels)};
  }
  /// Model 2: G_1 = F^1_1(A, B), all outer levels zero.
  static AngularPotentialSpec model2(int block_size, Model2Params p);
};

struct ModelSpec {
  Family family = Family::oscillator;
  Partition partition = Partition::make({1});
  /// omega^2 (oscillator) or eta (Coulomb).
  Scalar coupling = Scalar::named("omega2");
  /// N entries for the oscillator, N-1 for Coulomb.
  std::vector<AngularPotentialSpec> potentials;

  /// Model 1 with symbolic constants beta_i / alpha_i.
  static ModelSpec oscillator_model1(std::vector<int> blocks);
  static ModelSpec coulomb_model1(std::vector<int> blocks);
};

void validate(const ModelSpec& spec);

/// Evaluates the jets F, F', F'', ... of an angle function at phi.
using AngleJetEvaluator = std::function<void(double phi, std::span<double> jets)>;

/// A model bound to its coefficient ring. Owns the variable naming:
/// coordinates x1..xD, the coupling parameter, symbolic potential constants,
/// the radical "r" (Coulomb), and one angle function "F<i>" per Model-2 block.
class Model {
 public:
  Model(ModelSpec spec, Mode mode);

  const ModelSpec& spec() const { return spec_; }
  const Partition& partition() const { return spec_.partition; }
  Family family() const { return spec_.family; }
  Mode mode() const { return mode_; }
  const opalg::ContextPtr& ring() const { return ring_; }

  int dimension() const { return spec_.partition.dimension(); }
  int blocks() const { return spec_.partition.blocks(); }

  /// Multiplication operators and basic pieces (coordinates 1-based).
  opalg::DiffOp x(int a) const;
  opalg::DiffOp p(int a) const;
  opalg::DiffOp L(int k, int l) const;
  /// Sum of L_kl^2 over first <= k < l <= last.
  opalg::DiffOp casimir(int first, int last) const;
  opalg::DiffOp laplacian(int first, int last) const;
  opalg::DiffOp constant(const Rational& c) const;
  opalg::DiffOp coupling() const;
  opalg::Coefficient coupling_coef() const { return scalar_coef(spec_.coupling); }
  /// Sum of x_a^2 for a in [first, last] as a multiplication operator.
  opalg::Coefficient squares(int first, int last) const;
  /// f_i / r_i^2 (zero for blocks without potential).
  opalg::Coefficient potential_over_r2(int block) const;
  /// Part of f_i / r_i^2 that depends only on the first `ncoords`
  /// coordinates of the block (the inner hierarchy levels).
  opalg::Coefficient potential_over_r2_inner(int block, int ncoords) const;
  /// f_i itself (homogeneous of degree zero).
  opalg::Coefficient potential_function(int block) const;
  bool has_potential(int block) const;

  opalg::DiffOp hamiltonian() const;
  opalg::DiffOp potential_operator(int block) const;

  /// Ring variable values for numeric evaluation at x (0-based coords).
  /// `params` supplies every symbolic parameter by name.
  std::vector<double> ring_values(std::span<const double> x,
                                  const std::map<std::string, double>& params) const;
  /// Symbolic parameter names declared in the ring.
  const std::vector<std::string>& parameters() const { return ring_->params(); }
  std::map<std::string, AngleJetEvaluator> angle_evaluators() const;

 private:
  opalg::Coefficient scalar_coef(const Scalar& s) const;

  ModelSpec spec_;
  Mode mode_;
  opalg::ContextPtr ring_;
  std::vector<opalg::Coefficient> pot_over_r2_;
  /// (support size, contribution) per block.
  std::vector<std::vector<std::pair<int, opalg::Coefficient>>> pot_levels_;
};

opalg::DiffOp build_hamiltonian(const ModelSpec& spec, Mode mode = Mode::symbolic);
opalg::DiffOp build_potential_operator(const ModelSpec& spec, int block, Mode mode = Mode::symbolic);

/// f_i(Omega_i) evaluated through the nested recursion. `angles` holds
/// phi_1..phi_{d-1}.
/// Symbolic constants are looked up in `params`.
double eval_angular_potential(const AngularPotentialSpec& spec, std::span<const double> angles,
                              const std::map<std::string, double>& params = {});

/// F^1_1(phi) for the exceptional model.
double model2_potential(const Model2Params& p, double phi);
/// Taylor jets F^(k)(phi), k < jets.size().
void model2_potential_jets(const Model2Params& p, double phi, std::span<double> jets);

}  // namespace blocksep
