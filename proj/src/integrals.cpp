#include "blocksep/integrals.hpp"

#include <regex>

#include "blocksep/error.hpp"

namespace blocksep {

using opalg::Coefficient;
using opalg::DiffOp;
using Kind = IntegralName::Kind;

namespace {

constexpr std::pair<Kind, const char*> kLetters[] = {
    {Kind::H, "H"}, {Kind::T, "T"}, {Kind::G, "G"}, {Kind::Z, "Z"}, {Kind::X, "X"},
    {Kind::S, "S"}, {Kind::Y, "Y"}, {Kind::J, "J"}, {Kind::sigmaS, "sigmaS"},
};

[[noreturn]] void out_of_range(const IntegralName& n, const std::string& why) {
  throw Error(ErrorKind::invalid_integral, to_string(n) + ": " + why);
}

void require(bool ok, const IntegralName& n, int lo, int hi) {
  if (!ok) out_of_range(n, "index outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// Sum of f_a / r_a^2 over blocks [lo, hi].
Coefficient potential_sum(const Model& m, int lo, int hi) {
  std::vector<Coefficient> parts;
  for (int a = lo; a <= hi; ++a) parts.push_back(m.potential_over_r2(a));
  return opalg::sum(parts, *m.ring());
}

// casimir(first, last) - squares(sq_first, sq_last) * potential_sum(lo, hi)
DiffOp angular_integral(const Model& m, int first, int last, int sq_first, int sq_last, int lo,
                        int hi) {
  DiffOp out = m.casimir(first, last);
  Coefficient pot = potential_sum(m, lo, hi);
  if (!pot.is_zero() && sq_first <= sq_last)
    out -= DiffOp::multiply(m.ring(), opalg::mul(m.squares(sq_first, sq_last), pot, *m.ring()));
  return out;
}

DiffOp oscillator_integral(const IntegralName& n, const Model& m) {
  const Partition& part = m.partition();
  const int N = part.blocks();
  switch (n.kind) {
    case Kind::full_hamiltonian: return m.hamiltonian();
    case Kind::H: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int lo = part.offset(n.i - 1) + 1, hi = part.offset(n.i);
      return -m.laplacian(lo, hi) +
             DiffOp::multiply(m.ring(), opalg::mul(m.coupling_coef(),
                                                   m.squares(lo, hi), *m.ring())) +
             m.potential_operator(n.i);
    }
    case Kind::T: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int lo = part.offset(n.i - 1) + 1, hi = part.offset(n.i);
      return angular_integral(m, lo, hi, lo, hi, n.i, n.i);
    }
    case Kind::G: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int lo = part.offset(n.i - 1) + 1, hi = part.offset(n.i);
      require(n.j >= lo + 1 && n.j <= hi, n, lo + 1, hi);
      // only the hierarchy levels inside the first n.j - lo + 1 coordinates
      DiffOp out = m.casimir(lo, n.j);
      Coefficient pot = m.potential_over_r2_inner(n.i, n.j - lo + 1);
      if (!pot.is_zero()) out -= DiffOp::multiply(m.ring(), opalg::mul(m.squares(lo, n.j), pot, *m.ring()));
      return out;
    }
    case Kind::Z: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int hi = part.offset(n.i);
      return angular_integral(m, 1, hi, 1, hi, 1, n.i);
    }
    default: out_of_range(n, "not an oscillator integral");
  }
}

DiffOp coulomb_integral(const IntegralName& n, const Model& m) {
  const Partition& part = m.partition();
  const int N = part.blocks();
  const int D = part.dimension();
  const int nl = part.offset(N - 1);
  switch (n.kind) {
    case Kind::full_hamiltonian: return m.hamiltonian();
    case Kind::T: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int lo = part.offset(n.i - 1) + 1, hi = part.offset(n.i);
      return angular_integral(m, lo, hi, lo, hi, n.i, std::min(n.i, N - 1));
    }
    case Kind::Z: {
      require(n.i >= 1 && n.i <= N, n, 1, N);
      const int hi = part.offset(n.i);
      return angular_integral(m, 1, hi, 1, hi, 1, std::min(n.i, N - 1));
    }
    case Kind::X: {
      require(n.i >= nl + 1 && n.i <= D, n, nl + 1, D);
      std::vector<DiffOp> parts;
      for (int a = 1; a <= D; ++a)
        if (a != n.i) parts.push_back(opalg::anticommutator(m.L(n.i, a), m.p(a)));
      const auto& ctx = *m.ring();
      const auto& rad = ctx.radicals()[*ctx.find_radical("r")];
      const Coefficient eta = m.coupling_coef();
      // eta x_i / r = eta x_i r / r^2
      Coefficient c = opalg::over_atom(
          Coefficient(opalg::Poly::mul(opalg::Poly::variable(n.i - 1), opalg::Poly::variable(rad.var), ctx)),
          rad.atom);
      std::vector<Coefficient> mult{opalg::mul(eta, c, ctx)};
      Coefficient pot = potential_sum(m, 1, N - 1);
      mult.push_back(opalg::scale(opalg::mul(Coefficient(opalg::Poly::variable(n.i - 1)), pot, ctx), -2));
      parts.push_back(DiffOp::multiply(m.ring(), opalg::sum(mult, ctx)));
      return opalg::sum(parts);
    }
    case Kind::S: {
      require(n.i >= nl && n.i <= D, n, nl, D);
      return angular_integral(m, 1, n.i, 1, n.i, 1, N - 1);
    }
    case Kind::Y: {
      require(n.i >= 1 && n.i <= N + 1, n, 1, N + 1);
      if (n.i == N + 1) return DiffOp::zero(m.ring());
      return angular_integral(m, part.offset(n.i - 1) + 1, D, part.offset(n.i - 1) + 1, D, n.i, N - 1);
    }
    case Kind::J: {
      require(n.i >= nl + 1 && n.i <= D, n, nl + 1, D);
      return m.casimir(n.i, D);
    }
    case Kind::sigmaS: {
      const int lo = D - part.size(N) + 1;
      require(n.i >= lo && n.i <= D, n, lo, D);
      return conjugate_by_transposition(coulomb_integral(IntegralName::make(Kind::S, D - 1), m), n.i,
                                        part);
    }
    default: out_of_range(n, "not a Coulomb integral");
  }
}

}  // namespace

IntegralName parse_integral_name(const std::string& text) {
  static const std::regex re(R"(^\s*(sigmaS|H|T|G|Z|X|S|Y|J)(?:\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\])?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorKind::parse_error, "not an integral name: '" + text + "'");
  IntegralName n;
  const std::string letter = m[1];
  if (!m[2].matched) {
    if (letter != "H") throw Error(ErrorKind::parse_error, "missing index in '" + text + "'");
    return n;
  }
  for (const auto& [k, s] : kLetters)
    if (letter == s) n.kind = k;
  n.i = std::stoi(m[2]);
  if (m[3].matched) n.j = std::stoi(m[3]);
  if ((n.kind == Kind::G) != m[3].matched)
    throw Error(ErrorKind::parse_error, "wrong number of indices in '" + text + "'");
  return n;
}

std::string to_string(const IntegralName& n) {
  if (n.kind == Kind::full_hamiltonian) return "H";
  std::string letter;
  for (const auto& [k, s] : kLetters)
    if (k == n.kind) letter = s;
  if (n.kind == Kind::G) return letter + "[" + std::to_string(n.i) + "," + std::to_string(n.j) + "]";
  return letter + "[" + std::to_string(n.i) + "]";
}

DiffOp build_integral(const IntegralName& name, const Model& model) {
  return model.family() == Family::oscillator ? oscillator_integral(name, model)
                                              : coulomb_integral(name, model);
}

const DiffOp& IntegralCache::get(const IntegralName& name) {
  auto it = cache_.find(name);
  if (it == cache_.end()) it = cache_.emplace(name, build_integral(name, model_)).first;
  return it->second;
}

Rational constant_N(const Partition& part, int p) {
  Rational s = 0;
  for (int i = 1; i <= p; ++i) s += Rational(part.size(i) - 1, 2);
  return (part.size_sum(1, p) - 2) * s - s * s;
}

Rational constant_M(const Partition& part, int p) {
  const int N = part.blocks();
  Rational s = 0;
  for (int i = p; i <= N - 1; ++i) s += Rational(part.size(i) - 1, 2);
  return (part.size_sum(p, N) - 2) * s - s * s;
}

Rational constant_U(const Partition& part, int p) {
  Rational s = 0;
  for (int i = 1; i <= part.blocks() - 1; ++i) s += Rational(part.size(i) - 1, 2);
  return (p - 2) * s - s * s;
}

StructuralConstants structural_constants(const Partition& part) {
  const int N = part.blocks();
  if (N < 2) throw Error(ErrorKind::invalid_partition, "structural constants need N >= 2");
  StructuralConstants c;
  for (int p = 2; p <= N - 1; ++p) c.N[p] = constant_N(part, p);
  for (int p = 1; p <= N - 1; ++p) c.M[p] = constant_M(part, p);
  for (int p = part.offset(N - 1) + 1; p <= part.dimension() - 1; ++p) c.U[p] = constant_U(part, p);
  return c;
}

DiffOp conjugate_by_transposition(const DiffOp& op, int j, const Partition& part) {
  const int D = part.dimension();
  const int lo = D - part.size(part.blocks()) + 1;
  if (j < lo || j > D)
    throw Error(ErrorKind::invalid_index, "transposition index " + std::to_string(j) + " outside [" +
                                              std::to_string(lo) + ", " + std::to_string(D) + "]");
  if (j == D) return op;
  return opalg::swap_coords(op, j - 1, D - 1);
}

DiffOp sigma_s_closed_form(const Model& m, int j, bool printed) {
  const int D = m.dimension();
  const auto& ctx = *m.ring();
  std::vector<DiffOp> euler_parts;
  for (int a = 1; a <= D; ++a) euler_parts.push_back(m.x(a) * m.p(a));
  euler_parts.push_back(printed ? -m.p(j) : -(m.x(j) * m.p(j)));
  const DiffOp euler = opalg::sum(euler_parts);
  // r^2 - x_j^2
  Coefficient rho2 = opalg::add(m.squares(1, D), opalg::negate(m.squares(j, j)), ctx);
  DiffOp out = DiffOp::multiply(m.ring(), rho2) * (m.laplacian(1, D) - m.laplacian(j, j));
  out -= euler * euler;
  out -= euler * Rational(D - 3);
  Coefficient pot = potential_sum(m, 1, m.blocks() - 1);
  out -= DiffOp::multiply(m.ring(), opalg::mul(rho2, pot, ctx));
  return out;
}

std::vector<AliasCheck> checked_aliases(const Model& m) {
  const Partition& part = m.partition();
  const int N = part.blocks();
  const int D = part.dimension();
  std::vector<AliasCheck> out;
  auto check = [&](const std::string& lhs, const std::string& rhs, const DiffOp& a, const DiffOp& b) {
    out.push_back({lhs, rhs, opalg::is_zero(a - b)});
  };
  auto I = [&](Kind k, int i, int j = 0) { return build_integral(IntegralName::make(k, i, j), m); };
  if (m.family() == Family::oscillator) {
    for (int i = 1; i <= N; ++i)
      if (part.size(i) >= 2)
        check("G[" + std::to_string(i) + "," + std::to_string(part.offset(i)) + "]",
              "T[" + std::to_string(i) + "]", I(Kind::G, i, part.offset(i)), I(Kind::T, i));
    check("Z[1]", "T[1]", I(Kind::Z, 1), I(Kind::T, 1));
    std::vector<DiffOp> hs;
    for (int i = 1; i <= N; ++i) hs.push_back(I(Kind::H, i));
    check("sum H[i]", "H", opalg::sum(hs), m.hamiltonian());
  } else {
    const int nl = part.offset(N - 1);
    const DiffOp lN2 = m.casimir(nl + 1, D);
    check("J[" + std::to_string(nl + 1) + "]", "L_N^2", I(Kind::J, nl + 1), lN2);
    check("T[" + std::to_string(N) + "]", "L_N^2", I(Kind::T, N), lN2);
    check("Z[1]", "T[1]", I(Kind::Z, 1), I(Kind::T, 1));
    check("Z[" + std::to_string(N) + "]", "Y[1]", I(Kind::Z, N), I(Kind::Y, 1));
    check("Y[" + std::to_string(N) + "]", "L_N^2", I(Kind::Y, N), lN2);
    check("S[" + std::to_string(nl) + "]", "Z[" + std::to_string(N - 1) + "]", I(Kind::S, nl),
          I(Kind::Z, N - 1));
    check("J[" + std::to_string(D) + "]", "0", I(Kind::J, D), DiffOp::zero(m.ring()));
  }
  return out;
}

std::vector<IntegralName> oscillator_integral_basis(const Partition& part) {
  std::vector<IntegralName> out;
  for (int i = 1; i <= part.blocks(); ++i) out.push_back(IntegralName::make(Kind::H, i));
  for (int i = 1; i <= part.blocks(); ++i)
    for (int j = part.offset(i - 1) + 2; j <= part.offset(i); ++j)
      out.push_back(IntegralName::make(Kind::G, i, j));
  for (int l = 2; l <= part.blocks(); ++l) out.push_back(IntegralName::make(Kind::Z, l));
  return out;
}

std::vector<IntegralName> coulomb_integral_list(const Partition& part) {
  const int N = part.blocks(), D = part.dimension(), nl = part.offset(N - 1);
  std::vector<IntegralName> out;
  for (int i = 1; i <= N; ++i) out.push_back(IntegralName::make(Kind::T, i));
  for (int l = 2; l <= N - 1; ++l) out.push_back(IntegralName::make(Kind::Z, l));
  for (int i = nl + 1; i <= D; ++i) out.push_back(IntegralName::make(Kind::X, i));
  for (int l = nl + 1; l <= D - 1; ++l) out.push_back(IntegralName::make(Kind::S, l));
  for (int p = 1; p <= N - 1; ++p) out.push_back(IntegralName::make(Kind::Y, p));
  for (int p = nl + 1; p <= D - 1; ++p) out.push_back(IntegralName::make(Kind::J, p));
  return out;
}

}  // namespace blocksep
