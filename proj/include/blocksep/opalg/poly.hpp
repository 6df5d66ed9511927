#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blocksep/opalg/monomial.hpp"
#include "blocksep/rational.hpp"

namespace blocksep::opalg {

class Context;

struct Term {
  Mono mono;
  Rational coef;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted by monomial with no zero coefficients, so two
/// polynomials are equal iff their term vectors are equal.
class Poly {
 public:
  Poly() = default;

  static Poly constant(const Rational& c);
  static Poly variable(int var);
  static Poly monomial(const Mono& m, const Rational& c);
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Constant value if the polynomial has only the empty monomial.
  bool is_constant() const;
  Rational constant_value() const;

  int degree_in(int var) const;
  bool mentions(int var) const { return degree_in(var) > 0; }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }

  /// Product with the radical rule rho_k^2 -> S_k applied from `ctx`.
  static Poly mul(const Poly& a, const Poly& b, const Context& ctx);
  /// Product for polynomials free of radicals (no reduction needed).
  static Poly mul_plain(const Poly& a, const Poly& b);
  Poly mul_var(int var, int power = 1) const;

  /// Explicit partial derivative in one ring variable.
  Poly derivative(int var) const;

  /// Terms whose exponent of `var` is nonzero.
  Poly terms_with(int var) const;

  /// Replace `var` by a rational value.
  Poly substitute(int var, const Rational& value) const;
  /// Replace `var` by a polynomial (free of `var`).
  Poly substitute(int var, const Poly& value, const Context& ctx) const;
  /// Exchange the exponents of two variables.
  Poly swap_vars(int a, int b) const;

  /// Evaluates with one double per ring variable.
  double evaluate(std::span<const double> values) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

/// Divides `p` by x_var when every term contains it; returns false otherwise.
bool try_divide_linear(const Poly& p, int var, Poly& quotient);

/// Divides `p` by x_m^2 + rest, where rest is free of x_m.
bool try_divide_quadratic(const Poly& p, int main_var, const Poly& rest, const Context& ctx,
                          Poly& quotient);

std::string format_poly(const Poly& p, const std::function<std::string(int)>& var_name);

}  // namespace blocksep::opalg
