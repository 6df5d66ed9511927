#pragma once

#include <span>
#include <string>
#include <vector>

#include "blocksep/opalg/context.hpp"
#include "blocksep/opalg/poly.hpp"

namespace blocksep::opalg {

/// Element of Q(params)(x)[rho] / (rho^2 - S): a polynomial numerator over a
/// product of irreducible atoms. Reduced form has no atom dividing the
/// numerator; since the atoms are irreducible and pairwise coprime and the
/// radicals are independent, the reduced form is canonical.
class Coefficient {
 public:
  Coefficient() = default;
  explicit Coefficient(Poly num, DenExp den = {}) : num_(std::move(num)), den_(den) {
    if (num_.is_zero()) den_ = {};
  }

  static Coefficient constant(Rational c) {
    c.canonicalize();  // mpq_class(p, q) is not reduced on construction
    return Coefficient(Poly::constant(c));
  }

  const Poly& num() const { return num_; }
  const DenExp& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  Poly num_;
  DenExp den_;
};

/// c / atom^power.
Coefficient over_atom(const Coefficient& c, int atom, int power = 1);

Coefficient reduce(Coefficient c, const Context& ctx);
Coefficient negate(const Coefficient& c);
Coefficient scale(const Coefficient& c, const Rational& s);
/// Product without cancellation; feed through `sum` or `reduce` afterwards.
Coefficient mul_unreduced(const Coefficient& a, const Coefficient& b, const Context& ctx);
Coefficient mul(const Coefficient& a, const Coefficient& b, const Context& ctx);
/// Reduced sum over a common denominator.
Coefficient sum(std::span<const Coefficient> parts, const Context& ctx);
Coefficient add(const Coefficient& a, const Coefficient& b, const Context& ctx);

/// d/dx_coord, using d rho/dx = x rho / S and the angle-function chain rule.
Coefficient derivative(const Coefficient& c, int coord, const Context& ctx);

Coefficient substitute(const Coefficient& c, int var, const Rational& value, const Context& ctx);
/// Exchanges two coordinates; the atom set must be closed under the swap.
Coefficient swap_coords(const Coefficient& c, int a, int b, const Context& ctx);

double evaluate(const Coefficient& c, const Context& ctx, std::span<const double> vars);

std::string format(const Coefficient& c, const Context& ctx);

}  // namespace blocksep::opalg
