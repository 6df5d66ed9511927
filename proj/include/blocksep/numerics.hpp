#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "blocksep/relations.hpp"

namespace blocksep {

using ScalarField = std::function<double(std::span<const double>)>;

/// Central finite differences. `h <= 0` picks the step from the total
/// derivative order K as h_scale * eps^(1/(order+K)).
struct FDScheme {
  int order = 8;
  double h = 0.0;
  double h_scale = 1.0;
  bool richardson = false;
};

/// Weights of the central stencil on offsets -m..m (m = weights.size()/2)
/// for the `deriv`-th derivative with accuracy `order`.
std::vector<double> central_weights(int deriv, int order);

/// Fornberg's weights for arbitrary nodes evaluated at z.
std::vector<double> fornberg_weights(double z, std::span<const double> nodes, int deriv);

double fd_step(const FDScheme& s, int total_order);

/// Mixed partial derivative d^alpha f at x by tensor-product stencils.
double partial_derivative(const ScalarField& f, std::span<const double> x, std::span<const int> alpha,
                          const FDScheme& scheme = {});

/// Caches derivatives of one field at one point.
class DerivativeCache {
 public:
  DerivativeCache(ScalarField f, std::vector<double> x, FDScheme scheme = {})
      : f_(std::move(f)), x_(std::move(x)), scheme_(scheme) {}
  double get(std::span<const int> alpha);
  std::span<const double> point() const { return x_; }

 private:
  ScalarField f_;
  std::vector<double> x_;
  FDScheme scheme_;
  std::map<std::vector<int>, double> memo_;
};

/// How to evaluate ring variables (coordinates, parameters, radicals, jets)
/// at a point, plus an optional admissibility check that throws
/// singular-sample.
struct NumericContext {
  opalg::ContextPtr ring;
  std::function<std::vector<double>(std::span<const double>)> values;
  std::function<void(std::span<const double>)> check_point;
};

/// Context for a model's ring; every symbolic parameter must be in `params`.
/// Points closer than `delta` to a coordinate hyperplane are rejected, and
/// for Model 2 blocks points with |cos 3 phi| or |2A-3-2B sin 3 phi| below
/// `model2_delta`.
NumericContext numeric_context(const Model& m, const std::map<std::string, double>& params, double delta = 0.05,
                               double model2_delta = 0.1);
/// Context for a bare ring whose variables are coordinates and parameters.
NumericContext numeric_context(const opalg::ContextPtr& ring, const std::map<std::string, double>& params);

double apply_numeric(const opalg::DiffOp& op, DerivativeCache& cache, const NumericContext& ctx);
double apply_numeric(const opalg::DiffOp& op, const ScalarField& f, std::span<const double> x,
                     const NumericContext& ctx, const FDScheme& scheme = {});

/// exp(-|x-c|^2/s^2) times a polynomial of degree <= 2.
class ProbeFunction {
 public:
  static ProbeFunction random(int dim, std::mt19937_64& rng);
  double operator()(std::span<const double> x) const;
  ScalarField field() const;
  const std::vector<double>& center() const { return center_; }
  double scale() const { return scale_; }

 private:
  std::vector<double> center_;
  double scale_ = 1.0;
  double c0_ = 1.0;
  std::vector<double> c1_;
  std::vector<double> c2_;  // row-major upper triangle, dim x dim
};

/// Uniform points in [-box, box]^D accepted by ctx.check_point.
std::vector<std::vector<double>> sample_points(const NumericContext& ctx, int dim, int count, std::mt19937_64& rng,
                                               double box = 1.5);

struct ResidualStats {
  double max = 0;
  double median = 0;
  std::size_t samples = 0;
};

struct NumericRelationResult {
  std::string name;
  std::string group;
  Expectation expect = Expectation::zero;
  ResidualStats stats;
  /// The relation names an integral that does not exist for the partition.
  bool unresolved = false;
  std::string note;
  bool pass = false;
  double seconds = 0;
};

struct NumericOptions {
  int probes = 5;
  int points = 10;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  /// Residuals above this mark a relation as nonzero for negative controls.
  double nonzero_threshold = 1e-2;
  FDScheme scheme{};
  double box = 1.5;
};

/// Each top-level term of lhs - rhs is composed exactly in the ring and then
/// applied by finite differences; the residual at a sample is
/// |sum of terms| / (1 + max |term|).
NumericRelationResult relation_residual_numeric(const Relation& rel, Evaluator& ev, const NumericContext& ctx,
                                                int dim, const NumericOptions& opt);

struct NumericReport {
  std::string catalog;
  std::vector<NumericRelationResult> results;
  bool all_pass() const;
};

NumericReport verify_numeric(const RelationSet& rs, const NumericContext& ctx, int dim, const NumericOptions& opt,
                             int jobs = 1);

/// -u'' + V(r) u = E u on (0, L], Dirichlet at both ends.
struct Eigensolve1DProblem {
  std::function<double(double)> potential;
  double length = 10.0;
  int grid = 400;
  int count = 4;
  double tol = 1e-6;
  int max_doublings = 8;
  /// u ~ sqrt(r) at the origin (inverse-square coefficient -1/4): solve for
  /// v = u / sqrt(r) on a cell-centred grid, where plain Dirichlet
  /// differences converge only logarithmically.
  bool sqrt_origin = false;
};

/// Lowest eigenvalues from a second-order tridiagonal discretization, with
/// Richardson extrapolation over grid doubling until the relative change is
/// below tol.
std::vector<double> eigensolve_1d(const Eigensolve1DProblem& p);

}  // namespace blocksep
