#pragma once

#include <map>
#include <string>
#include <vector>

#include "blocksep/opalg/coefficient.hpp"
#include "blocksep/opalg/context.hpp"

namespace blocksep::opalg {

/// Linear differential operator sum_alpha c_alpha(x) d^alpha in normal order
/// (coefficients left of derivatives). Zero coefficients are never stored
/// and coefficients are reduced, so equality is structural.
class DiffOp {
 public:
  using TermMap = std::map<DIdx, Coefficient>;

  explicit DiffOp(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  DiffOp(ContextPtr ctx, TermMap terms);

  static DiffOp zero(ContextPtr ctx) { return DiffOp(std::move(ctx)); }
  static DiffOp identity(ContextPtr ctx) { return scalar(std::move(ctx), 1); }
  static DiffOp scalar(ContextPtr ctx, const Rational& c);
  /// Multiplication operator by a coefficient.
  static DiffOp multiply(ContextPtr ctx, Coefficient c);
  static DiffOp coord(ContextPtr ctx, int i);
  /// Partial derivative d/dx_i (p_i).
  static DiffOp partial(ContextPtr ctx, int i);
  /// Multiplication by a parameter symbol.
  static DiffOp param(ContextPtr ctx, const std::string& name);

  const ContextPtr& context() const { return ctx_; }
  const Context& ctx() const { return *ctx_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int order() const;

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  DiffOp& operator*=(const Rational& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& c) { return a *= c; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  /// Composition a o b.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

  friend bool operator==(const DiffOp& a, const DiffOp& b);

 private:
  void check_same(const DiffOp& other) const;

  ContextPtr ctx_;
  TermMap terms_;
};

DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);
DiffOp anticommutator(const DiffOp& a, const DiffOp& b);
/// Sum of many operators with one reduction per derivative index.
DiffOp sum(const std::vector<DiffOp>& ops);

bool is_zero(const DiffOp& a);

/// Exact parameter substitution. Unknown names raise undeclared-param.
DiffOp substitute_params(const DiffOp& a, const std::map<std::string, Rational>& bindings);

/// Conjugation by the coordinate transposition x_i <-> x_j.
DiffOp swap_coords(const DiffOp& a, int i, int j);

/// Formal transpose: sum_alpha (-d)^alpha o c_alpha, renormalized.
DiffOp formal_transpose(const DiffOp& a);

/// Deterministic text form: terms ordered by derivative index, one
/// "coef*d[a1,...,aD]" per term.
std::string to_string(const DiffOp& a);

/// Short summary for reports: term count plus the first `max_terms` terms.
std::string summarize(const DiffOp& a, std::size_t max_terms = 3);

}  // namespace blocksep::opalg
