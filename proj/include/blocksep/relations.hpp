#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "blocksep/integrals.hpp"

namespace blocksep {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression over named operators. Leaves are names resolved against a
/// Resolver (integrals, parameters, constants) or rational numbers.
struct Expr {
  enum class Kind { leaf, number, sum, product, commutator, anticommutator, negate };
  Kind kind = Kind::number;
  std::string name;
  Rational value;
  std::vector<ExprPtr> args;
};

ExprPtr leaf(std::string name);
ExprPtr number(const Rational& v);

/// Grammar: sums and differences of products; factors are numbers (3, 3/4),
/// names (omega2, Z[2], G[1,2]), [a,b], {a,b}, (e), -f and f^k.
ExprPtr parse_expr(const std::string& text);
std::string to_string(const Expr& e);

/// Top-level additive terms with their signs.
std::vector<std::pair<int, ExprPtr>> additive_terms(const ExprPtr& e);

class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual const opalg::ContextPtr& ring() const = 0;
  virtual opalg::DiffOp resolve(const std::string& name) const = 0;
};

/// Fixed table of operators.
class MapResolver : public Resolver {
 public:
  explicit MapResolver(opalg::ContextPtr ring) : ring_(std::move(ring)) {}
  void define(const std::string& name, opalg::DiffOp op) { table_.insert_or_assign(name, std::move(op)); }
  const opalg::ContextPtr& ring() const override { return ring_; }
  opalg::DiffOp resolve(const std::string& name) const override;

 private:
  opalg::ContextPtr ring_;
  std::map<std::string, opalg::DiffOp> table_;
};

/// Resolves integral names, parameters, structural constants (cN[p],
/// cM[p], cU[p]), block Casimirs L2[i], partial sums Hsum[l], conjugates
/// sigmaX[j] / sigmaY1[j] / sigmaH[j] and the closed forms
/// sigmaSprinted[j] / sigmaScorrected[j] against one model.
class ModelResolver : public Resolver {
 public:
  explicit ModelResolver(std::shared_ptr<const Model> model) : model_(std::move(model)) {}
  const opalg::ContextPtr& ring() const override { return model_->ring(); }
  opalg::DiffOp resolve(const std::string& name) const override;
  const Model& model() const { return *model_; }

 private:
  std::shared_ptr<const Model> model_;
};

enum class Expectation { zero, nonzero, report };
std::string to_string(Expectation e);

struct Relation {
  std::string name;
  std::string group;
  ExprPtr lhs;
  ExprPtr rhs;
  Expectation expect = Expectation::zero;
  std::string note;
  /// Alternative readings, evaluated when the relation itself is nonzero.
  std::vector<Relation> alternatives;
};

struct RelationSet {
  std::string catalog;
  std::shared_ptr<const Resolver> resolver;
  /// Names expanded inline before resolution (e.g. Y := [Z[l], H[l]]).
  std::map<std::string, ExprPtr> definitions;
  std::vector<Relation> relations;
};

/// Relation from "lhs = rhs".
Relation make_relation(std::string name, std::string group, const std::string& text,
                       Expectation expect = Expectation::zero);

/// Relation file: one item per line, '#' starts a comment.
///   let NAME = expr
///   [nonzero|report] name: lhs = rhs
RelationSet parse_relation_file(const std::string& text, std::shared_ptr<const Resolver> resolver,
                                std::string catalog = "file");

RelationSet catalog_proposition_A();
RelationSet catalog_oscillator(const ModelSpec& spec, Mode mode = Mode::symbolic);
RelationSet catalog_gauge_identities(const ModelSpec& spec, int l);
RelationSet catalog_coulomb(const ModelSpec& spec);
/// (YX) third relation with Z[N-1] in place of the conjugated S_{D-1}.
RelationSet catalog_coulomb_erratum_wrong(const ModelSpec& spec);
/// Single-coefficient perturbations that must fail.
RelationSet catalog_negative_controls(const ModelSpec& oscillator_spec);

/// Names of all catalogs understood by `catalog_by_name`.
std::vector<std::string> catalog_names();
/// One set per ring; the gauge catalog yields one set per level l.
std::vector<RelationSet> catalog_by_name(const std::string& name, const ModelSpec& spec,
                                         Mode mode = Mode::symbolic);

/// Identity groups covered by the catalogs, for the completeness check.
struct CatalogGroup {
  std::string catalog;
  std::string group;
  std::string display;
};
std::vector<CatalogGroup> catalog_manifest();

/// Evaluates expressions with memoization of shared subexpressions.
class Evaluator {
 public:
  Evaluator(const Resolver& resolver, const std::map<std::string, ExprPtr>& definitions)
      : resolver_(resolver), definitions_(definitions) {}
  opalg::DiffOp eval(const ExprPtr& e);

 private:
  const Resolver& resolver_;
  const std::map<std::string, ExprPtr>& definitions_;
  std::map<std::string, opalg::DiffOp> memo_;
};

struct RelationResult {
  std::string name;
  std::string group;
  std::string text;
  Expectation expect = Expectation::zero;
  bool zero = false;
  /// Some name in the relation has no integral on this partition.
  bool unresolved = false;
  bool pass = false;
  std::size_t residual_terms = 0;
  int residual_order = 0;
  std::string residual;
  std::string note;
  double seconds = 0;
  std::vector<RelationResult> alternatives;
};

struct VerificationReport {
  std::string catalog;
  std::vector<RelationResult> results;
  bool all_pass() const;
};

VerificationReport verify_symbolic(const RelationSet& rs, int jobs = 1);

}  // namespace blocksep
