#include "blocksep/opalg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blocksep/error.hpp"
#include "blocksep/opalg/context.hpp"

namespace blocksep::opalg {

namespace {

void merge_sorted(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = std::move(terms[i].coef);
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      sum += terms[j].coef;
      ++j;
    }
    if (sgn(sum) != 0) {
      terms[out].mono = terms[i].mono;
      terms[out].coef = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

Mono add_monos(const Mono& a, const Mono& b) {
  Mono m;
  for (int v = 0; v < kMaxVars; ++v) {
    const int s = a.e[v] + b.e[v];
    if (s > 255) throw Error(ErrorKind::context_mismatch, "monomial exponent overflow");
    m.e[v] = static_cast<std::uint8_t>(s);
  }
  return m;
}

// Applies rho^2 -> sum of squares until every radical exponent is <= 1.
void emit_reduced(Mono m, const Rational& c, const std::vector<Radical>& rads,
                  std::vector<Term>& out) {
  for (const auto& rad : rads) {
    if (m.e[rad.var] >= 2) {
      m.e[rad.var] -= 2;
      for (int coord : rad.support) {
        Mono m2 = m;
        m2.e[coord] += 2;
        emit_reduced(m2, c, rads, out);
      }
      return;
    }
  }
  out.push_back({m, c});
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({Mono{}, c});
  return p;
}

Poly Poly::variable(int var) {
  Mono m;
  m.e.at(var) = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Mono& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  merge_sorted(terms);
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Mono{});
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].mono == Mono{} ? terms_[0].coef : Rational(0);
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.e[var]);
  return d;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() || (i < terms_.size() && terms_[i].mono < other.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || other.terms_[j].mono < terms_[i].mono) {
      out.push_back(other.terms_[j++]);
    } else {
      Rational s = terms_[i].coef + other.terms_[j].coef;
      if (sgn(s) != 0) out.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Poly Poly::mul(const Poly& a, const Poly& b, const Context& ctx) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& rads = ctx.radicals();
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Mono m = add_monos(ta.mono, tb.mono);
      Rational c = ta.coef * tb.coef;
      bool plain = true;
      for (const auto& rad : rads) {
        if (m.e[rad.var] >= 2) {
          plain = false;
          break;
        }
      }
      if (plain)
        out.push_back({m, std::move(c)});
      else
        emit_reduced(m, c, rads, out);
    }
  }
  return from_terms(std::move(out));
}

Poly Poly::mul_plain(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) out.push_back({add_monos(ta.mono, tb.mono), ta.coef * tb.coef});
  return from_terms(std::move(out));
}

Poly Poly::mul_var(int var, int power) const {
  Poly p = *this;
  for (auto& t : p.terms_) {
    const int e = t.mono.e[var] + power;
    if (e > 255 || e < 0) throw Error(ErrorKind::context_mismatch, "monomial exponent overflow");
    t.mono.e[var] = static_cast<std::uint8_t>(e);
  }
  // Multiplying every term by the same monomial preserves the order.
  return p;
}

Poly Poly::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.e[var] == 0) continue;
    Term d{t.mono, t.coef * static_cast<long>(t.mono.e[var])};
    d.mono.e[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(std::move(out));
}

Poly Poly::terms_with(int var) const {
  Poly p;
  for (const auto& t : terms_)
    if (t.mono.e[var] != 0) p.terms_.push_back(t);
  return p;
}

Poly Poly::substitute(int var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s{t.mono, t.coef};
    if (const int k = s.mono.e[var]; k > 0) {
      Rational pw = 1;
      for (int i = 0; i < k; ++i) pw *= value;
      s.coef *= pw;
      s.mono.e[var] = 0;
    }
    out.push_back(std::move(s));
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(int var, const Poly& value, const Context& ctx) const {
  const int maxdeg = degree_in(var);
  std::vector<Poly> powers{Poly::constant(1)};
  for (int k = 1; k <= maxdeg; ++k) powers.push_back(mul(powers.back(), value, ctx));
  std::vector<std::vector<Term>> buckets(maxdeg + 1);
  for (const auto& t : terms_) {
    Term s = t;
    const int k = s.mono.e[var];
    s.mono.e[var] = 0;
    buckets[k].push_back(std::move(s));
  }
  Poly result;
  for (int k = 0; k <= maxdeg; ++k) {
    if (buckets[k].empty()) continue;
    result += mul(from_terms(std::move(buckets[k])), powers[k], ctx);
  }
  return result;
}

Poly Poly::swap_vars(int a, int b) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) std::swap(t.mono.e[a], t.mono.e[b]);
  return from_terms(std::move(out));
}

double Poly::evaluate(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef.get_d();
    for (std::size_t var = 0; var < values.size(); ++var) {
      const int e = t.mono.e[var];
      if (e == 0) continue;
      double x = values[var];
      double p = 1.0;
      for (int k = 0; k < e; ++k) p *= x;
      v *= p;
    }
    sum += v;
  }
  return sum;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef)
      return false;
  return true;
}

bool try_divide_linear(const Poly& p, int var, Poly& quotient) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (t.mono.e[var] == 0) return false;
    Term q = t;
    q.mono.e[var] -= 1;
    out.push_back(std::move(q));
  }
  quotient = Poly::from_terms(std::move(out));
  return true;
}

bool try_divide_quadratic(const Poly& p, int main_var, const Poly& rest, const Context& ctx,
                          Poly& quotient) {
  // p = (x^2 + s) q  <=>  c_e = q_{e-2} + s q_e for all e.
  const int n = p.degree_in(main_var);
  if (p.is_zero()) {
    quotient = Poly{};
    return true;
  }
  if (n < 2) return false;
  std::vector<std::vector<Term>> buckets(n + 1);
  for (const auto& t : p.terms()) {
    Term s = t;
    const int k = s.mono.e[main_var];
    s.mono.e[main_var] = 0;
    buckets[k].push_back(std::move(s));
  }
  std::vector<Poly> c(n + 1), q(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = Poly::from_terms(std::move(buckets[k]));
  for (int e = n; e >= 2; --e) {
    Poly val = c[e];
    if (!q[e].is_zero()) val -= Poly::mul(rest, q[e], ctx);
    q[e - 2] = std::move(val);
  }
  for (int e = 1; e >= 0; --e) {
    Poly val = c[e];
    if (!q[e].is_zero()) val -= Poly::mul(rest, q[e], ctx);
    if (!val.is_zero()) return false;
  }
  Poly result;
  for (int k = 0; k + 2 <= n; ++k) {
    if (q[k].is_zero()) continue;
    result += k == 0 ? q[k] : q[k].mul_var(main_var, k);
  }
  quotient = std::move(result);
  return true;
}

std::string format_poly(const Poly& p, const std::function<std::string(int)>& var_name) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Rational c = it->coef;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (int v = 0; v < kMaxVars; ++v) {
      const int e = it->mono.e[v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << to_string(c) << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace blocksep::opalg
