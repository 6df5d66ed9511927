#include "blocksep/opalg/coefficient.hpp"

#include <algorithm>

#include "blocksep/error.hpp"

namespace blocksep::opalg {

namespace {

bool try_divide_atom(const Poly& p, int atom, const Context& ctx, Poly& q) {
  const auto& support = ctx.atoms()[atom].support;
  if (support.size() == 1) return try_divide_linear(p, support[0], q);
  std::vector<int> rest_support(support.begin() + 1, support.end());
  const Poly rest = ctx.sum_of_squares(rest_support);
  return try_divide_quadratic(p, support[0], rest, ctx, q);
}

void bump(DenExp& den, int atom, int by) {
  const int v = den.e[atom] + by;
  if (v > 255 || v < 0) throw Error(ErrorKind::context_mismatch, "denominator exponent overflow");
  den.e[atom] = static_cast<std::uint8_t>(v);
}

bool in_support(const std::vector<int>& support, int coord) {
  return std::find(support.begin(), support.end(), coord) != support.end();
}

}  // namespace

Coefficient over_atom(const Coefficient& c, int atom, int power) {
  if (c.is_zero()) return c;
  DenExp den = c.den();
  bump(den, atom, power);
  return Coefficient(c.num(), den);
}

Coefficient reduce(Coefficient c, const Context& ctx) {
  if (c.is_zero()) return Coefficient{};
  Poly num = c.num();
  DenExp den = c.den();
  const int natoms = static_cast<int>(ctx.atoms().size());
  for (int a = 0; a < natoms; ++a) {
    while (den.e[a] > 0) {
      Poly q;
      if (!try_divide_atom(num, a, ctx, q)) break;
      num = std::move(q);
      den.e[a] -= 1;
    }
  }
  return Coefficient(std::move(num), den);
}

Coefficient negate(const Coefficient& c) { return Coefficient(-c.num(), c.den()); }

Coefficient scale(const Coefficient& c, const Rational& s) {
  return Coefficient(c.num() * s, c.den());
}

Coefficient mul_unreduced(const Coefficient& a, const Coefficient& b, const Context& ctx) {
  if (a.is_zero() || b.is_zero()) return Coefficient{};
  DenExp den = a.den();
  for (int i = 0; i < kMaxAtoms; ++i) bump(den, i, b.den().e[i]);
  return Coefficient(Poly::mul(a.num(), b.num(), ctx), den);
}

Coefficient mul(const Coefficient& a, const Coefficient& b, const Context& ctx) {
  return reduce(mul_unreduced(a, b, ctx), ctx);
}

Coefficient sum(std::span<const Coefficient> parts, const Context& ctx) {
  DenExp common;
  std::size_t nonzero = 0;
  const Coefficient* last = nullptr;
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    ++nonzero;
    last = &p;
    for (int i = 0; i < kMaxAtoms; ++i) common.e[i] = std::max(common.e[i], p.den().e[i]);
  }
  if (nonzero == 0) return Coefficient{};
  if (nonzero == 1) return reduce(*last, ctx);
  Poly num;
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    Poly term = p.num();
    for (int i = 0; i < kMaxAtoms; ++i) {
      const int k = common.e[i] - p.den().e[i];
      if (k > 0) term = Poly::mul(term, ctx.atom_power(i, k), ctx);
    }
    num += term;
  }
  return reduce(Coefficient(std::move(num), common), ctx);
}

Coefficient add(const Coefficient& a, const Coefficient& b, const Context& ctx) {
  const Coefficient parts[] = {a, b};
  return sum(parts, ctx);
}

Coefficient derivative(const Coefficient& c, int coord, const Context& ctx) {
  if (c.is_zero()) return c;
  const Poly& p = c.num();
  const DenExp& den = c.den();
  const int natoms = static_cast<int>(ctx.atoms().size());

  // Atoms whose powers grow by one in the result.
  std::vector<bool> involved(natoms, false);
  for (int a = 0; a < natoms; ++a)
    if (den.e[a] > 0 && in_support(ctx.atoms()[a].support, coord)) involved[a] = true;
  for (const auto& rad : ctx.radicals())
    if (p.mentions(rad.var) && in_support(rad.support, coord)) involved[rad.atom] = true;
  for (const auto& fn : ctx.angle_functions()) {
    if (coord != fn.sin_coord && coord != fn.cos_coord) continue;
    for (int k = 0; k < fn.jets; ++k)
      if (p.mentions(fn.first_var + k)) involved[fn.atom] = true;
  }

  // product of involved atoms except `skip`
  auto others = [&](int skip) {
    Poly prod = Poly::constant(1);
    for (int a = 0; a < natoms; ++a)
      if (involved[a] && a != skip) prod = Poly::mul_plain(prod, ctx.atom_poly(a));
    return prod;
  };

  Poly num = Poly::mul(p.derivative(coord), others(-1), ctx);

  for (const auto& rad : ctx.radicals()) {
    if (!in_support(rad.support, coord)) continue;
    Poly with_rad = p.terms_with(rad.var);
    if (with_rad.is_zero()) continue;
    num += Poly::mul(with_rad.mul_var(coord), others(rad.atom), ctx);
  }

  for (const auto& fn : ctx.angle_functions()) {
    if (coord != fn.sin_coord && coord != fn.cos_coord) continue;
    Poly chain;
    for (int k = 0; k < fn.jets; ++k) {
      Poly dk = p.derivative(fn.first_var + k);
      if (dk.is_zero()) continue;
      if (k + 1 >= fn.jets)
        throw Error(ErrorKind::context_mismatch,
                    "angle function '" + fn.name + "' exhausted its jet order");
      chain += dk.mul_var(fn.first_var + k + 1);
    }
    if (chain.is_zero()) continue;
    // d phi/d x_sin = x_cos / P, d phi/d x_cos = -x_sin / P
    Poly factor = coord == fn.sin_coord ? Poly::variable(fn.cos_coord) : -Poly::variable(fn.sin_coord);
    num += Poly::mul(Poly::mul(chain, factor, ctx), others(fn.atom), ctx);
  }

  for (int a = 0; a < natoms; ++a) {
    if (!involved[a] || den.e[a] == 0) continue;
    const auto& support = ctx.atoms()[a].support;
    Poly da = support.size() == 1 ? Poly::constant(1) : Poly::variable(coord) * Rational(2);
    da *= Rational(-static_cast<long>(den.e[a]));
    num += Poly::mul(Poly::mul(p, da, ctx), others(a), ctx);
  }

  DenExp out = den;
  for (int a = 0; a < natoms; ++a)
    if (involved[a]) bump(out, a, 1);
  return reduce(Coefficient(std::move(num), out), ctx);
}

Coefficient substitute(const Coefficient& c, int var, const Rational& value, const Context& ctx) {
  return reduce(Coefficient(c.num().substitute(var, value), c.den()), ctx);
}

Coefficient swap_coords(const Coefficient& c, int a, int b, const Context& ctx) {
  if (c.is_zero() || a == b) return c;
  DenExp den;
  const int natoms = static_cast<int>(ctx.atoms().size());
  for (int i = 0; i < natoms; ++i) {
    if (c.den().e[i] == 0) continue;
    auto support = ctx.atoms()[i].support;
    for (auto& s : support) s = s == a ? b : (s == b ? a : s);
    auto image = ctx.find_atom(support);
    if (!image) throw Error(ErrorKind::invalid_index, "atom set not closed under coordinate swap");
    den.e[*image] = c.den().e[i];
  }
  for (const auto& rad : ctx.radicals()) {
    if (!c.num().mentions(rad.var)) continue;
    const bool ha = in_support(rad.support, a), hb = in_support(rad.support, b);
    if (ha != hb) throw Error(ErrorKind::invalid_index, "radical not invariant under coordinate swap");
  }
  for (const auto& fn : ctx.angle_functions()) {
    bool used = false;
    for (int k = 0; k < fn.jets; ++k) used = used || c.num().mentions(fn.first_var + k);
    if (used && (fn.sin_coord == a || fn.sin_coord == b || fn.cos_coord == a || fn.cos_coord == b))
      throw Error(ErrorKind::invalid_index, "angle function not invariant under coordinate swap");
  }
  return Coefficient(c.num().swap_vars(a, b), den);
}

double evaluate(const Coefficient& c, const Context& ctx, std::span<const double> vars) {
  if (c.is_zero()) return 0.0;
  double den = 1.0;
  const int natoms = static_cast<int>(ctx.atoms().size());
  for (int a = 0; a < natoms; ++a) {
    const int e = c.den().e[a];
    if (e == 0) continue;
    const double v = ctx.atom_poly(a).evaluate(vars);
    for (int k = 0; k < e; ++k) den *= v;
  }
  return c.num().evaluate(vars) / den;
}

std::string format(const Coefficient& c, const Context& ctx) {
  auto name = [&](int v) { return ctx.var_name(v); };
  std::string num = format_poly(c.num(), name);
  if (c.den().trivial()) return num;
  std::string den;
  const int natoms = static_cast<int>(ctx.atoms().size());
  for (int a = 0; a < natoms; ++a) {
    const int e = c.den().e[a];
    if (e == 0) continue;
    if (!den.empty()) den += "*";
    den += ctx.atom_name(a);
    if (e > 1) den += "^" + std::to_string(e);
  }
  return "(" + num + ")/(" + den + ")";
}

}  // namespace blocksep::opalg
