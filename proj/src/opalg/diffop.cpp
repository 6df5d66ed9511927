#include "blocksep/opalg/diffop.hpp"

#include <sstream>

#include "blocksep/error.hpp"

namespace blocksep::opalg {

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using Accumulator = std::map<DIdx, std::vector<Coefficient>>;

DiffOp::TermMap collapse(Accumulator& acc, const Context& ctx) {
  DiffOp::TermMap out;
  for (auto& [key, parts] : acc) {
    Coefficient s = sum(parts, ctx);
    if (!s.is_zero()) out.emplace(key, std::move(s));
  }
  return out;
}

}  // namespace

DiffOp::DiffOp(ContextPtr ctx, TermMap terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = reduce(it->second, *ctx_);
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

DiffOp DiffOp::scalar(ContextPtr ctx, const Rational& c) {
  return multiply(std::move(ctx), Coefficient::constant(c));
}

DiffOp DiffOp::multiply(ContextPtr ctx, Coefficient c) {
  TermMap t;
  if (!c.is_zero()) t.emplace(DIdx{}, std::move(c));
  return DiffOp(std::move(ctx), std::move(t));
}

DiffOp DiffOp::coord(ContextPtr ctx, int i) {
  if (i < 0 || i >= ctx->coords()) throw Error(ErrorKind::invalid_index, "coordinate out of range");
  return multiply(ctx, Coefficient(Poly::variable(i)));
}

DiffOp DiffOp::partial(ContextPtr ctx, int i) {
  if (i < 0 || i >= ctx->coords()) throw Error(ErrorKind::invalid_index, "coordinate out of range");
  DIdx idx;
  idx.e[i] = 1;
  TermMap t;
  t.emplace(idx, Coefficient::constant(1));
  return DiffOp(std::move(ctx), std::move(t));
}

DiffOp DiffOp::param(ContextPtr ctx, const std::string& name) {
  const int var = ctx->require_param(name);
  return multiply(ctx, Coefficient(Poly::variable(var)));
}

int DiffOp::order() const {
  int o = 0;
  for (const auto& [k, c] : terms_) o = std::max(o, k.order());
  return o;
}

void DiffOp::check_same(const DiffOp& other) const {
  if (ctx_ != other.ctx_)
    throw Error(ErrorKind::context_mismatch, "operators live in different coefficient rings");
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& [k, c] : r.terms_) c = negate(c);
  return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  check_same(other);
  for (const auto& [k, c] : other.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      continue;
    }
    Coefficient s = add(it->second, c, *ctx_);
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = std::move(s);
  }
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) { return *this += -other; }

DiffOp& DiffOp::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, coef] : terms_) coef = scale(coef, c);
  return *this;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  if (a.context() != b.context())
    throw Error(ErrorKind::context_mismatch, "operators live in different coefficient rings");
  const Context& ctx = a.ctx();
  const int dim = ctx.coords();
  Accumulator acc;
  for (const auto& [beta, d] : b.terms()) {
    std::map<DIdx, Coefficient> cache;
    cache.emplace(DIdx{}, d);
    auto deriv = [&](auto&& self, const DIdx& g) -> const Coefficient& {
      if (auto it = cache.find(g); it != cache.end()) return it->second;
      int i = 0;
      while (g.e[i] == 0) ++i;
      DIdx lower = g;
      lower.e[i] -= 1;
      const Coefficient& base = self(self, lower);
      return cache.emplace(g, derivative(base, i, ctx)).first->second;
    };
    for (const auto& [alpha, c] : a.terms()) {
      DIdx gamma;
      while (true) {
        const Coefficient& dg = deriv(deriv, gamma);
        if (!dg.is_zero()) {
          long mult = 1;
          DIdx key;
          for (int i = 0; i < dim; ++i) {
            mult *= binomial(alpha.e[i], gamma.e[i]);
            key.e[i] = static_cast<std::uint8_t>(alpha.e[i] - gamma.e[i] + beta.e[i]);
          }
          Coefficient prod = mul_unreduced(c, dg, ctx);
          if (mult != 1) prod = scale(prod, Rational(mult));
          acc[key].push_back(std::move(prod));
        }
        int i = 0;
        for (; i < dim; ++i) {
          if (gamma.e[i] < alpha.e[i]) {
            ++gamma.e[i];
            break;
          }
          gamma.e[i] = 0;
        }
        if (i == dim) break;
      }
    }
  }
  return DiffOp(a.context(), collapse(acc, ctx));
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) { return compose(a, b); }

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return sum({compose(a, b), -compose(b, a)}); }

DiffOp anticommutator(const DiffOp& a, const DiffOp& b) {
  return sum({compose(a, b), compose(b, a)});
}

DiffOp sum(const std::vector<DiffOp>& ops) {
  if (ops.empty()) throw Error(ErrorKind::context_mismatch, "empty operator sum has no ring");
  Accumulator acc;
  for (const auto& op : ops) {
    if (op.context() != ops.front().context())
      throw Error(ErrorKind::context_mismatch, "operators live in different coefficient rings");
    for (const auto& [k, c] : op.terms()) acc[k].push_back(c);
  }
  return DiffOp(ops.front().context(), collapse(acc, ops.front().ctx()));
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  return a.context() == b.context() && a.terms() == b.terms();
}

bool is_zero(const DiffOp& a) { return a.is_zero(); }

DiffOp substitute_params(const DiffOp& a, const std::map<std::string, Rational>& bindings) {
  const Context& ctx = a.ctx();
  std::vector<std::pair<int, Rational>> vars;
  for (const auto& [name, value] : bindings) vars.emplace_back(ctx.require_param(name), value);
  DiffOp::TermMap out;
  for (const auto& [k, c] : a.terms()) {
    Coefficient s = c;
    for (const auto& [var, value] : vars) s = substitute(s, var, value, ctx);
    if (!s.is_zero()) out.emplace(k, std::move(s));
  }
  return DiffOp(a.context(), std::move(out));
}

DiffOp swap_coords(const DiffOp& a, int i, int j) {
  const Context& ctx = a.ctx();
  if (i < 0 || j < 0 || i >= ctx.coords() || j >= ctx.coords())
    throw Error(ErrorKind::invalid_index, "coordinate out of range");
  if (i == j) return a;
  DiffOp::TermMap out;
  for (const auto& [k, c] : a.terms()) {
    DIdx key = k;
    std::swap(key.e[i], key.e[j]);
    out.emplace(key, swap_coords(c, i, j, ctx));
  }
  return DiffOp(a.context(), std::move(out));
}

DiffOp formal_transpose(const DiffOp& a) {
  std::vector<DiffOp> parts{DiffOp::zero(a.context())};
  for (const auto& [k, c] : a.terms()) {
    DiffOp term = DiffOp::multiply(a.context(), c);
    for (int i = 0; i < a.ctx().coords(); ++i)
      for (int n = 0; n < k.e[i]; ++n) term = compose(-DiffOp::partial(a.context(), i), term);
    parts.push_back(std::move(term));
  }
  return sum(parts);
}

std::string to_string(const DiffOp& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const int dim = a.ctx().coords();
  for (const auto& [k, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "[" << format(c, a.ctx()) << "]";
    if (k.order() > 0) {
      os << "*d[";
      for (int i = 0; i < dim; ++i) os << (i ? "," : "") << static_cast<int>(k.e[i]);
      os << "]";
    }
  }
  return os.str();
}

std::string summarize(const DiffOp& a, std::size_t max_terms) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  os << a.size() << " terms, order " << a.order() << "; leading: ";
  std::size_t n = 0;
  const int dim = a.ctx().coords();
  for (auto it = a.terms().rbegin(); it != a.terms().rend() && n < max_terms; ++it, ++n) {
    if (n) os << " + ";
    os << "[" << format(it->second, a.ctx()) << "]*d[";
    for (int i = 0; i < dim; ++i) os << (i ? "," : "") << static_cast<int>(it->first.e[i]);
    os << "]";
  }
  return os.str();
}

}  // namespace blocksep::opalg
