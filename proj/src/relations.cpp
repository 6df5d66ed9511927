#include "blocksep/relations.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "blocksep/error.hpp"

namespace blocksep {

using opalg::Coefficient;
using opalg::DiffOp;
using opalg::Poly;

ExprPtr leaf(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::leaf;
  e->name = std::move(name);
  return e;
}

ExprPtr number(const Rational& v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::number;
  e->value = v;
  return e;
}

namespace {

ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error, msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprPtr parse_sum() {
    std::vector<ExprPtr> terms;
    bool neg = accept('-');
    ExprPtr t = parse_product();
    terms.push_back(neg ? node(Expr::Kind::negate, {t}) : t);
    while (true) {
      if (accept('+')) {
        terms.push_back(parse_product());
      } else if (accept('-')) {
        terms.push_back(node(Expr::Kind::negate, {parse_product()}));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms[0] : node(Expr::Kind::sum, std::move(terms));
  }

  ExprPtr parse_product() {
    std::vector<ExprPtr> factors{parse_power()};
    while (accept('*')) factors.push_back(parse_power());
    return factors.size() == 1 ? factors[0] : node(Expr::Kind::product, std::move(factors));
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_factor();
    if (!accept('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int k = std::stoi(s_.substr(start, pos_ - start));
    if (k < 1) fail("exponent must be positive");
    return k == 1 ? base : node(Expr::Kind::product, std::vector<ExprPtr>(k, base));
  }

  ExprPtr parse_factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return node(Expr::Kind::negate, {parse_power()});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      expect(')');
      return e;
    }
    if (c == '[' || c == '{') {
      ++pos_;
      ExprPtr a = parse_sum();
      expect(',');
      ExprPtr b = parse_sum();
      expect(c == '[' ? ']' : '}');
      return node(c == '[' ? Expr::Kind::commutator : Expr::Kind::anticommutator, {a, b});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return number(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      // an index list glued to the name: Z[2], G[1,2]
      if (pos_ < s_.size() && s_[pos_] == '[') {
        std::size_t close = s_.find(']', pos_);
        if (close == std::string::npos) fail("unterminated index");
        std::string idx = s_.substr(pos_ + 1, close - pos_ - 1);
        std::string compact;
        for (char ch : idx) {
          if (std::isspace(static_cast<unsigned char>(ch))) continue;
          if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != ',') fail("bad index list");
          compact += ch;
        }
        name += "[" + compact + "]";
        pos_ = close + 1;
      }
      return leaf(name);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, std::ostringstream& os, int prec) {
  switch (e.kind) {
    case Expr::Kind::leaf: os << e.name; return;
    case Expr::Kind::number:
      if (e.value < 0 || (e.value.get_den() != 1 && prec > 0)) os << "(" << e.value.get_str() << ")";
      else os << e.value.get_str();
      return;
    case Expr::Kind::sum: {
      if (prec > 0) os << "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        const Expr& a = *e.args[i];
        if (a.kind == Expr::Kind::negate) {
          os << (i == 0 ? "-" : " - ");
          print(*a.args[0], os, 1);
        } else {
          if (i > 0) os << " + ";
          print(a, os, 0);
        }
      }
      if (prec > 0) os << ")";
      return;
    }
    case Expr::Kind::negate:
      os << "-";
      print(*e.args[0], os, 2);
      return;
    case Expr::Kind::product:
      if (prec > 1) os << "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) os << "*";
        print(*e.args[i], os, 2);
      }
      if (prec > 1) os << ")";
      return;
    case Expr::Kind::commutator:
    case Expr::Kind::anticommutator: {
      const bool c = e.kind == Expr::Kind::commutator;
      os << (c ? "[" : "{");
      print(*e.args[0], os, 0);
      os << ", ";
      print(*e.args[1], os, 0);
      os << (c ? "]" : "}");
      return;
    }
  }
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(e, os, 0);
  return os.str();
}

std::vector<std::pair<int, ExprPtr>> additive_terms(const ExprPtr& e) {
  std::vector<std::pair<int, ExprPtr>> out;
  auto walk = [&](auto&& self, const ExprPtr& x, int sign) -> void {
    if (x->kind == Expr::Kind::sum) {
      for (const auto& a : x->args) self(self, a, sign);
    } else if (x->kind == Expr::Kind::negate) {
      self(self, x->args[0], -sign);
    } else {
      out.emplace_back(sign, x);
    }
  };
  walk(walk, e, 1);
  return out;
}

DiffOp MapResolver::resolve(const std::string& name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw Error(ErrorKind::resolution_failure, "unknown operator '" + name + "'");
  return it->second;
}

DiffOp ModelResolver::resolve(const std::string& name) const {
  const Model& m = *model_;
  if (m.ring()->param_var(name)) return DiffOp::param(m.ring(), name);
  static const std::regex indexed(R"(^([A-Za-z0-9]+)\[(\d+)\]$)");
  std::smatch sm;
  if (std::regex_match(name, sm, indexed)) {
    const std::string head = sm[1];
    const int k = std::stoi(sm[2]);
    const Partition& part = m.partition();
    if (head == "cN") return m.constant(constant_N(part, k));
    if (head == "cM") return m.constant(constant_M(part, k));
    if (head == "cU") return m.constant(constant_U(part, k));
    if (head == "L2") {
      if (k < 1 || k > m.blocks()) throw Error(ErrorKind::resolution_failure, "no block " + name);
      return m.casimir(part.offset(k - 1) + 1, part.offset(k));
    }
    if (head == "Hsum") {
      std::vector<DiffOp> hs;
      for (int i = 1; i <= k; ++i)
        hs.push_back(build_integral(IntegralName::make(IntegralName::Kind::H, i), m));
      return opalg::sum(hs);
    }
    using K = IntegralName::Kind;
    const int D = m.dimension();
    if (head == "sigmaX") return conjugate_by_transposition(build_integral(IntegralName::make(K::X, D), m), k, part);
    if (head == "sigmaY1") return conjugate_by_transposition(build_integral(IntegralName::make(K::Y, 1), m), k, part);
    if (head == "sigmaH") return conjugate_by_transposition(m.hamiltonian(), k, part);
    if (head == "sigmaSprinted" || head == "sigmaScorrected") {
      if (k < D - part.size(m.blocks()) + 1 || k > D)
        throw Error(ErrorKind::invalid_index, "closed form index out of range: " + name);
      return sigma_s_closed_form(m, k, head == "sigmaSprinted");
    }
  }
  try {
    return build_integral(parse_integral_name(name), m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error)
      throw Error(ErrorKind::resolution_failure, "unknown operator '" + name + "'");
    throw;
  }
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::zero: return "zero";
    case Expectation::nonzero: return "nonzero";
    case Expectation::report: return "report";
  }
  return "?";
}

Relation make_relation(std::string name, std::string group, const std::string& text, Expectation expect) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
    throw Error(ErrorKind::parse_error, "relation needs exactly one '=': " + text);
  Relation r;
  r.name = std::move(name);
  r.group = std::move(group);
  r.lhs = parse_expr(text.substr(0, eq));
  r.rhs = parse_expr(text.substr(eq + 1));
  r.expect = expect;
  return r;
}

RelationSet parse_relation_file(const std::string& text, std::shared_ptr<const Resolver> resolver,
                                std::string catalog) {
  RelationSet rs;
  rs.catalog = std::move(catalog);
  rs.resolver = std::move(resolver);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  static const std::regex let_re(R"(^\s*let\s+([A-Za-z_][A-Za-z0-9_]*(?:\[[0-9,]+\])?)\s*=(.*)$)");
  static const std::regex rel_re(R"(^\s*(?:(nonzero|report)\s+)?([^:]+):(.*)$)");
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    try {
      if (std::regex_match(line, m, let_re)) {
        rs.definitions[m[1]] = parse_expr(m[2]);
      } else if (std::regex_match(line, m, rel_re)) {
        Expectation ex = Expectation::zero;
        if (m[1] == "nonzero") ex = Expectation::nonzero;
        if (m[1] == "report") ex = Expectation::report;
        std::string name = m[2];
        name.erase(name.find_last_not_of(" \t") + 1);
        name.erase(0, name.find_first_not_of(" \t"));
        rs.relations.push_back(make_relation(name, "file", m[3], ex));
      } else {
        throw Error(ErrorKind::parse_error, "unrecognized line");
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rs;
}

namespace {

std::string q(const Rational& v) {
  if (v >= 0 && v.get_den() == 1) return v.get_str();
  return "(" + v.get_str() + ")";
}
std::string q(long v) { return q(Rational(v)); }
std::string idx(const std::string& head, int k) { return head + "[" + std::to_string(k) + "]"; }

// Proposition-A operators in a ring with coordinates x, y; g1, g2 are
// polynomials in the ring's parameters.
struct TwoVariableOps {
  DiffOp H1, H2, H, Z;
};

TwoVariableOps two_variable_ops(const opalg::ContextPtr& ring, const Poly& g1, const Poly& g2) {
  const auto& ctx = *ring;
  const int ax = *ctx.find_atom({0}), ay = *ctx.find_atom({1});
  const DiffOp px = DiffOp::partial(ring, 0), py = DiffOp::partial(ring, 1);
  const DiffOp x = DiffOp::coord(ring, 0), y = DiffOp::coord(ring, 1);
  const DiffOp w = DiffOp::param(ring, "omega2");
  TwoVariableOps o{DiffOp::zero(ring), DiffOp::zero(ring), DiffOp::zero(ring), DiffOp::zero(ring)};
  o.H1 = -(px * px) + w * x * x + DiffOp::multiply(ring, opalg::over_atom(Coefficient(g1), ax, 2));
  o.H2 = -(py * py) + w * y * y + DiffOp::multiply(ring, opalg::over_atom(Coefficient(g2), ay, 2));
  o.H = o.H1 + o.H2;
  const DiffOp l = x * py - y * px;
  Coefficient pot = opalg::add(opalg::over_atom(Coefficient(g1), ax, 2),
                               opalg::over_atom(Coefficient(g2), ay, 2), ctx);
  o.Z = l * l - DiffOp::multiply(ring, opalg::mul(Coefficient(ctx.sum_of_squares({0, 1})), pot, ctx));
  return o;
}

// (quadratic-alg1) at fixed l, written against Z[l], H[l], Hsum[l], Z[l-1], T[l].
std::vector<Relation> quadratic_alg1(int l, int Dl, int Dl1, int dl, std::map<std::string, ExprPtr>& defs,
                                     const std::string& group) {
  const std::string Z = idx("Z", l), H = idx("H", l), S = idx("Hsum", l), Zp = idx("Z", l - 1),
                    T = idx("T", l), Y = idx("Ydef", l);
  const Rational a = Rational((Dl - 2) * (Dl - 2), 4);
  const Rational b = Rational((Dl1 - 2) * (Dl1 - 2), 4) - Rational((dl - 2) * (dl - 2), 4) + 1;
  const Rational c = Rational((Dl1 - 1) * (Dl1 - 3), 2) + Rational((dl - 1) * (dl - 3), 2) - 1;
  defs[Y] = parse_expr("[" + Z + "," + H + "]");
  const std::string tag = " (l=" + std::to_string(l) + ")";
  std::vector<Relation> out;
  Relation def = make_relation("[Z_l,H_l] = Y_l" + tag, group, "[" + Z + "," + H + "] = " + Y);
  def.note = "definition";
  out.push_back(def);
  out.push_back(make_relation("[Z_l,Y_l]" + tag, group,
                              "[" + Z + "," + Y + "] = 8*(" + Z + " - " + q(a) + ")*" + S + " - 8*{" + Z +
                                  " - " + q(a) + ", " + H + "} + 8*(-" + Zp + " + " + T + " + " + q(b) +
                                  ")*" + S + " - 16*" + H));
  out.push_back(make_relation("[H_l,Y_l]" + tag, group,
                              "[" + H + "," + Y + "] = -8*" + S + "*" + H + " + 8*" + H + "^2 - 16*omega2*(" +
                                  Z + " - " + q(a) + ") - 8*omega2*(-2*" + Zp + " - 2*" + T + " + " + q(c) +
                                  ")"));
  return out;
}

std::shared_ptr<const Model> make_model(const ModelSpec& spec, Mode mode) {
  return std::make_shared<const Model>(spec, mode);
}

void require_family(const ModelSpec& spec, Family f, const std::string& catalog) {
  if (spec.family != f)
    throw Error(ErrorKind::inapplicable_relation, catalog + " catalog needs the " +
                                                      (f == Family::oscillator ? "oscillator" : "Coulomb") +
                                                      " family");
}

std::string tag_of(std::initializer_list<std::pair<const char*, int>> kv) {
  std::string s = " (";
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) s += ", ";
    s += std::string(k) + "=" + std::to_string(v);
    first = false;
  }
  return s + ")";
}

}  // namespace

RelationSet catalog_proposition_A() {
  auto ring = opalg::Context::Builder(2, {"x", "y"}).param("omega2").param("g1").param("g2").atom({0}).atom({1}).build();
  auto res = std::make_shared<MapResolver>(ring);
  const auto& ctx = *ring;
  auto ops = two_variable_ops(ring, Poly::variable(ctx.require_param("g1")), Poly::variable(ctx.require_param("g2")));
  res->define("H1", ops.H1);
  res->define("H2", ops.H2);
  res->define("H", ops.H);
  res->define("Z", ops.Z);
  res->define("omega2", DiffOp::param(ring, "omega2"));
  res->define("g1", DiffOp::param(ring, "g1"));
  res->define("g2", DiffOp::param(ring, "g2"));

  RelationSet rs;
  rs.catalog = "proposition-A";
  rs.resolver = res;
  rs.definitions["Y"] = parse_expr("[Z,H2]");
  const std::string g = "proposition-A";
  Relation def = make_relation("[Z,H2] = Y", g, "[Z,H2] = Y");
  def.note = "definition";
  rs.relations.push_back(def);
  rs.relations.push_back(make_relation("[Z,Y]", g, "[Z,Y] = 8*Z*H - 8*{Z,H2} + 8*(g1 - g2 + 1)*H - 16*H2"));
  rs.relations.push_back(make_relation(
      "[H2,Y]", g, "[H2,Y] = -8*H*H2 + 8*H2^2 - 16*omega2*Z - 8*omega2*(2*g1 + 2*g2 - 1)"));
  return rs;
}

RelationSet catalog_oscillator(const ModelSpec& spec, Mode mode) {
  require_family(spec, Family::oscillator, "oscillator");
  const Partition& part = spec.partition;
  const int N = part.blocks();
  if (N < 2) throw Error(ErrorKind::inapplicable_relation, "oscillator relations need N >= 2");
  RelationSet rs;
  rs.catalog = "oscillator";
  rs.resolver = std::make_shared<ModelResolver>(make_model(spec, mode));

  auto zero_comm = [&](const std::string& a, const std::string& b) {
    rs.relations.push_back(make_relation("[" + a + "," + b + "] = 0", "commutativity", "[" + a + "," + b + "] = 0"));
  };
  std::vector<std::string> G, T, H, Z;
  for (int i = 1; i <= N; ++i) {
    for (int j = part.offset(i - 1) + 2; j <= part.offset(i); ++j)
      G.push_back("G[" + std::to_string(i) + "," + std::to_string(j) + "]");
    T.push_back(idx("T", i));
    H.push_back(idx("H", i));
  }
  for (int l = 2; l <= N; ++l) Z.push_back(idx("Z", l));
  for (const auto& g : G)
    for (const auto& t : T) zero_comm(g, t);
  for (const auto& t : T)
    for (const auto& h : H) zero_comm(t, h);
  for (const auto& h : H)
    for (const auto& g : G) zero_comm(h, g);
  for (std::size_t a = 0; a < G.size(); ++a)
    for (std::size_t b = a + 1; b < G.size(); ++b) zero_comm(G[a], G[b]);
  for (std::size_t a = 0; a < Z.size(); ++a)
    for (std::size_t b = a + 1; b < Z.size(); ++b) zero_comm(Z[a], Z[b]);
  for (int m = 2; m <= N; ++m)
    for (int n = m + 1; n <= N; ++n) zero_comm(idx("Z", m), idx("H", n));
  for (int l = 2; l <= N; ++l) zero_comm(idx("Z", l), idx("Hsum", l));
  for (const auto& z : Z)
    for (const auto& g : G) zero_comm(z, g);

  for (int l = 2; l <= N; ++l) {
    auto rels = quadratic_alg1(l, part.size_sum(1, l), part.size_sum(1, l - 1), part.size(l), rs.definitions,
                               "quadratic-alg1");
    rs.relations.insert(rs.relations.end(), rels.begin(), rels.end());
  }
  return rs;
}

RelationSet catalog_gauge_identities(const ModelSpec& spec, int l) {
  require_family(spec, Family::oscillator, "gauge");
  const Partition& part = spec.partition;
  if (l < 2 || l > part.blocks())
    throw Error(ErrorKind::inapplicable_relation, "gauge identities need 2 <= l <= N");
  const int Dl1 = part.size_sum(1, l - 1), dl = part.size(l), Dl = part.size_sum(1, l);
  auto ring = opalg::Context::Builder(2, {"rp", "rl"}).param("omega2").param("z").param("t").atom({0}).atom({1}).build();
  const auto& ctx = *ring;
  // g1 -> -Z_{l-1} + (D_{l-1}-1)(D_{l-1}-3)/4, g2 -> -T_l + (d_l-1)(d_l-3)/4
  Poly g1 = Poly::constant(Rational((Dl1 - 1) * (Dl1 - 3), 4)) - Poly::variable(ctx.require_param("z"));
  Poly g2 = Poly::constant(Rational((dl - 1) * (dl - 3), 4)) - Poly::variable(ctx.require_param("t"));
  auto ops = two_variable_ops(ring, g1, g2);
  auto res = std::make_shared<MapResolver>(ring);
  res->define(idx("Z", l), ops.Z + DiffOp::scalar(ring, Rational((Dl - 2) * (Dl - 2), 4)));
  res->define(idx("H", l), ops.H2);
  res->define(idx("Hsum", l), ops.H);
  res->define(idx("Z", l - 1), DiffOp::param(ring, "z"));
  res->define(idx("T", l), DiffOp::param(ring, "t"));
  res->define("omega2", DiffOp::param(ring, "omega2"));

  RelationSet rs;
  rs.catalog = "gauge";
  rs.resolver = res;
  auto rels = quadratic_alg1(l, Dl, Dl1, dl, rs.definitions, "gauge");
  rs.relations.assign(rels.begin(), rels.end());
  return rs;
}

namespace {

void add_yx(RelationSet& rs, const Partition& part, int j, bool erratum) {
  const int N = part.blocks(), D = part.dimension(), dN = part.size(N);
  const std::string X = idx("X", j), W = idx("W", j);
  rs.definitions[W] = parse_expr("[Y[1]," + X + "]");
  const std::string sig = j == D ? idx("S", D - 1) : idx("sigmaS", j);
  const std::string third_s = erratum ? idx("Z", N - 1) : sig;
  const std::string group = j == D ? "YX" : "YX-conjugated";
  const std::string tag = tag_of({{"j", j}});
  if (!erratum) {
    Relation def = make_relation("[Y_1,X_j] = W_j" + tag, group, "[Y[1]," + X + "] = " + W);
    def.note = "definition";
    rs.relations.push_back(def);
    rs.relations.push_back(make_relation("[Y_1,W_j]" + tag, group,
                                         "[Y[1]," + W + "] = -2*{Y[1]," + X + "} + " + q((D - 1) * (D - 3)) +
                                             "*" + X));
  }
  const long k = static_cast<long>(N + dN - 2) * (N + dN - 2);
  Relation r = make_relation(
      std::string(erratum ? "[X_j,W_j] with Z_{N-1}" : "[X_j,W_j]") + tag, erratum ? "erratum" : group,
      "[" + X + "," + W + "] = 2*" + X + "^2 - 8*(" + third_s + " - cU[" + std::to_string(D - 1) +
          "])*H + 16*(Y[1] - cM[1])*H - " + q(2 * k) + "*H - 2*eta^2",
      erratum ? Expectation::nonzero : Expectation::zero);
  rs.relations.push_back(r);
}

// Replaces the first occurrence of `from` by `to` in a relation text.
std::string swap_text(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  if (pos == std::string::npos) throw Error(ErrorKind::parse_error, "reading substitution not found: " + from);
  return text.replace(pos, from.size(), to);
}

Relation with_alternatives(const std::string& name, const std::string& group, const std::string& text,
                           const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>& alts) {
  Relation r = make_relation(name, group, text);
  for (const auto& [label, swaps] : alts) {
    std::string t = text;
    for (const auto& [from, to] : swaps) t = swap_text(t, from, to);
    Relation a = make_relation(name + " [" + label + "]", group, t, Expectation::report);
    a.note = label;
    r.alternatives.push_back(a);
  }
  return r;
}

}  // namespace

RelationSet catalog_coulomb(const ModelSpec& spec) {
  require_family(spec, Family::coulomb, "coulomb");
  const Partition& part = spec.partition;
  const int N = part.blocks(), D = part.dimension(), dN = part.size(N), nl = part.offset(N - 1);
  if (N < 2) throw Error(ErrorKind::inapplicable_relation, "Coulomb relations need N >= 2");
  RelationSet rs;
  rs.catalog = "coulomb";
  rs.resolver = std::make_shared<ModelResolver>(make_model(spec, Mode::symbolic));

  auto zero_comm = [&](const std::string& a, const std::string& b) {
    rs.relations.push_back(make_relation("[" + a + "," + b + "] = 0", "commutativity", "[" + a + "," + b + "] = 0"));
  };
  for (int p = 2; p <= N - 1; ++p)
    for (int l = p + 1; l <= N - 1; ++l) zero_comm(idx("Z", p), idx("Z", l));
  for (int i = nl + 1; i <= D - 1; ++i)
    for (int j = 2; j <= N - 1; ++j) zero_comm(idx("S", i), idx("Z", j));
  for (int i = 1; i <= N - 1; ++i)
    for (int j = i + 1; j <= N - 1; ++j) zero_comm(idx("Y", i), idx("Y", j));
  for (int k = nl + 1; k <= D - 1; ++k)
    for (int l = 1; l <= N - 1; ++l) zero_comm(idx("J", k), idx("Y", l));
  for (int i = 2; i <= N - 1; ++i) zero_comm(idx("Y", 1), idx("Z", i));

  add_yx(rs, part, D, false);
  for (int j = D - 1; j >= D - dN + 1; --j) {
    const std::string tag = tag_of({{"j", j}});
    rs.relations.push_back(make_relation("sigma X_D = X_j" + tag, "YX-conjugated", idx("sigmaX", j) + " = " + idx("X", j)));
    rs.relations.push_back(make_relation("sigma Y_1 = Y_1" + tag, "YX-conjugated", idx("sigmaY1", j) + " = Y[1]"));
    rs.relations.push_back(make_relation("sigma H = H" + tag, "YX-conjugated", idx("sigmaH", j) + " = H"));
    add_yx(rs, part, j, false);
  }
  for (int j = D - dN + 1; j <= D; ++j) {
    if (D - 1 < nl + 1) break;  // S_{D-1} needs d_N >= 2
    Relation r = make_relation("sigma S_{D-1} closed form" + tag_of({{"j", j}}), "correction",
                               idx("sigmaS", j) + " = " + idx("sigmaSprinted", j));
    Relation alt = make_relation("sigma S_{D-1} closed form" + tag_of({{"j", j}}) + " [x_j d_j]", "correction",
                                 idx("sigmaS", j) + " = " + idx("sigmaScorrected", j), Expectation::report);
    alt.note = "Euler operator minus x_j d_j";
    r.alternatives.push_back(alt);
    rs.relations.push_back(r);
  }

  const int K = N + dN;
  for (int p = 2; p <= N - 1; ++p) {
    const int dp = part.size(p);
    const std::string P = std::to_string(p), P1 = std::to_string(p - 1), Pn = std::to_string(p + 1);
    const std::string tau = "(-T[" + P + "] + " + q(Rational((dp - 1) * (dp - 3), 4)) + ")";
    const std::string Zn = "(Z[" + P + "] - cN[" + P + "])", Ym = "(Y[" + P + "] - cM[" + P + "])",
                      Y1 = "(Y[1] - cM[1])", Zm = "(Z[" + P1 + "] - cN[" + P1 + "])",
                      Yn = "(Y[" + Pn + "] - cM[" + Pn + "])";
    const std::string V = idx("V", p);
    rs.definitions[V] = parse_expr("[Z[" + P + "],Y[" + P + "]]");
    const long c1 = static_cast<long>(p - 2) * (K - 1) - p * p + p + 4;
    const std::string tag = tag_of({{"p", p}});
    std::string zzy = "[Z[" + P + "]," + V + "] = -8*" + Zn + "^2 - 8*{" + Zn + ", " + Ym + "} - 4*(" + q(c1) +
                      " + 2*" + tau + ")*" + Zn + " + " + q(4L * (K - p) * (K - p - 4)) + "*" + Ym + " + 8*(" +
                      Y1 + " + " + Zm + ")*" + Zn + " - 4*(" + q(K - p - 4) + " + 2*" + tau + ")*" + Y1 +
                      " - 4*(" + q(static_cast<long>(K - p - 1) * (K - p - 4)) + " - 2*" + tau + ")*" + Zm +
                      " + " + q(4L * (K - p) * (K - 5)) + "*" + tau + " + " + q(4L * (p - 1) * (K - p)) + "*" +
                      Yn + " - 8*" + Y1 + "*" + Yn + " + 8*" + Zn + "*" + Yn + " + 8*" + Zm + "*" + Yn;
    rs.relations.push_back(make_relation("[Z_p,[Z_p,Y_p]]" + tag, "ZY-double", zzy));
    const std::string odd = "(Y[1] - cM[" + P + "])";
    std::string yzy = "[Y[" + P + "]," + V + "] = 8*" + Ym + "^2 + 8*{" + Zn + ", " + Ym + "} - " +
                      q(4L * p * (p - 4)) + "*" + Zn + " + 4*(" + q(c1) + " + 2*" + tau + ")*" + odd + " - 8*" +
                      Zm + "*" + Ym + " - 8*" + Y1 + "*" + Ym + " + 4*(" + q(p - 4) + " + 2*" + tau + ")*" +
                      Y1 + " + 8*" + Zm + "*" + Y1 + " - " + q(4L * p * (K - p - 1)) + "*" + Zm + " - " +
                      q(4L * p * (K - 5)) + "*" + tau + " + 4*(" + q(static_cast<long>(p - 4) * (p - 1)) +
                      " - 2*" + tau + ")*" + Yn + " - 8*" + Zm + "*" + Yn + " - 8*" + Yn + "*" + Ym;
    rs.relations.push_back(with_alternatives(
        "[Y_p,[Z_p,Y_p]]" + tag, "ZY-double", yzy,
        {{"(Y_1 - M_1)", {{odd, Y1}}}, {"(Y_p - M_p)", {{odd, Ym}}}}));
  }

  for (int p = nl + 1; p <= D - 1; ++p) {
    const std::string P = std::to_string(p), P1 = std::to_string(p - 1), Pn = std::to_string(p + 1);
    const int qq = p + K - D;
    const std::string Su = "(S[" + P + "] - cU[" + P + "])", Sm = "(S[" + P1 + "] - cU[" + P1 + "])",
                      Y1 = "(Y[1] - cM[1])", J = "J[" + P + "]", Jn = "J[" + Pn + "]",
                      Zm = "(Z[" + P1 + "] - cN[" + P1 + "])", Ym = "(Y[" + P + "] - cM[" + P + "])";
    const std::string Q = idx("Q", p);
    rs.definitions[Q] = parse_expr("[S[" + P + "],J[" + P + "]]");
    const long c2 = static_cast<long>(qq - 3) * (K - 1) - static_cast<long>(qq - 1) * (qq - 1) + qq + 3;
    const std::string tag = tag_of({{"p", p}});
    const std::string sy = "8*" + Su + "*Y[" + Pn + "]", zj = "8*" + Zm + "*" + Jn;
    std::string ssj = "[S[" + P + "]," + Q + "] = -8*" + Su + "^2 - 8*{" + Su + ", " + J + "} - 4*(" + q(c2) + ")*" +
                      Su + " + " + q(4L * (D - p + 1) * (D - p - 3)) + "*" + J + " + 8*(" + Y1 + " + " + Sm +
                      ")*" + Su + " - " + q(4L * (D - p - 3)) + "*" + Y1 + " - " +
                      q(4L * (D - p) * (D - p - 3)) + "*" + Sm + " + " + q(4L * (qq - 2) * (D - p + 1)) + "*" +
                      Jn + " - 8*" + Y1 + "*" + Jn + " + " + sy + " + " + zj;
    rs.relations.push_back(with_alternatives(
        "[S_p,[S_p,J_p]]" + tag, "SJ-double", ssj,
        {{"J_{p+1} for Y_{p+1}", {{sy, "8*" + Su + "*" + Jn}}},
         {"(S_{p-1} - U_{p-1}) for (Z_{p-1} - N_{p-1})", {{zj, "8*" + Sm + "*" + Jn}}},
         {"both", {{sy, "8*" + Su + "*" + Jn}, {zj, "8*" + Sm + "*" + Jn}}}}));
    std::string jsj = "[" + J + "," + Q + "] = 8*" + J + "^2 + 8*{" + Su + ", " + J + "} - " +
                      q(4L * (qq - 1) * (qq - 5)) + "*" + Su + " + 4*(" + q(c2) + ")*" + Ym + " - 8*" + Sm + "*" +
                      J + " - 8*" + Y1 + "*" + J + " + " + q(4L * (qq - 5)) + "*" + Y1 + " + 8*" + Sm + "*" + Y1 +
                      " - " + q(4L * (qq - 1) * (D - p)) + "*" + Sm + " + " + q(4L * (qq - 5) * (qq - 2)) + "*" +
                      Jn + " - 8*" + Sm + "*" + Jn + " - 8*" + Jn + "*" + J;
    rs.relations.push_back(with_alternatives(
        "[J_p,[S_p,J_p]]" + tag, "SJ-double", jsj,
        {{"(J_p - M_p) for (Y_p - M_p)", {{Ym, "(" + J + " - cM[" + P + "])"}}},
         {"J_p for (Y_p - M_p)", {{Ym, J}}}}));
  }
  return rs;
}

RelationSet catalog_coulomb_erratum_wrong(const ModelSpec& spec) {
  require_family(spec, Family::coulomb, "coulomb-erratum-wrong");
  const Partition& part = spec.partition;
  if (part.blocks() < 2) throw Error(ErrorKind::inapplicable_relation, "Coulomb relations need N >= 2");
  RelationSet rs;
  rs.catalog = "coulomb-erratum-wrong";
  rs.resolver = std::make_shared<ModelResolver>(make_model(spec, Mode::symbolic));
  const int D = part.dimension();
  for (int j = D; j >= D - part.size(part.blocks()) + 1; --j) add_yx(rs, part, j, true);
  return rs;
}

RelationSet catalog_negative_controls(const ModelSpec& spec) {
  require_family(spec, Family::oscillator, "negative-controls");
  RelationSet rs = catalog_oscillator(spec, Mode::symbolic);
  rs.catalog = "negative-controls";
  std::vector<Relation> controls;
  const Partition& part = spec.partition;
  std::map<std::string, ExprPtr> defs;
  auto rels = quadratic_alg1(2, part.size_sum(1, 2), part.size(1), part.size(2), defs, "negative-control");
  // coefficient 8 -> 7 in [Z_l,Y_l]
  std::string t = to_string(*rels[1].lhs) + " = " + to_string(*rels[1].rhs);
  t = swap_text(t, "8*(Z[2]", "7*(Z[2]");
  controls.push_back(make_relation("[Z_l,Y_l] with 8 -> 7 (l=2)", "negative-control", t, Expectation::nonzero));
  std::string t3 = to_string(*rels[2].lhs) + " = " + to_string(*rels[2].rhs);
  t3 = swap_text(t3, "16*omega2", "15*omega2");
  controls.push_back(make_relation("[H_l,Y_l] with 16 -> 15 (l=2)", "negative-control", t3, Expectation::nonzero));
  rs.relations = controls;
  return rs;
}

std::vector<std::string> catalog_names() {
  return {"proposition-A", "oscillator", "gauge", "coulomb", "coulomb-erratum-wrong", "negative-controls",
          "proposition-A-negative"};
}

std::vector<RelationSet> catalog_by_name(const std::string& name, const ModelSpec& spec, Mode mode) {
  if (name == "proposition-A") return {catalog_proposition_A()};
  if (name == "proposition-A-negative") {
    RelationSet rs = catalog_proposition_A();
    rs.catalog = name;
    const Relation& r = rs.relations[2];
    rs.relations = {make_relation("[H2,Y] with +1", "negative-control",
                                  to_string(*r.lhs) + " = " + to_string(*r.rhs) + " + 1", Expectation::nonzero)};
    return {rs};
  }
  if (name == "oscillator") return {catalog_oscillator(spec, mode)};
  if (name == "gauge") {
    // each l lives in its own two-variable ring
    std::vector<RelationSet> out;
    for (int l = 2; l <= spec.partition.blocks(); ++l) out.push_back(catalog_gauge_identities(spec, l));
    if (out.empty()) throw Error(ErrorKind::inapplicable_relation, "gauge identities need N >= 2");
    return out;
  }
  if (name == "coulomb") return {catalog_coulomb(spec)};
  if (name == "coulomb-erratum-wrong") return {catalog_coulomb_erratum_wrong(spec)};
  if (name == "negative-controls") return {catalog_negative_controls(spec)};
  throw Error(ErrorKind::usage, "unknown catalog '" + name + "'");
}

std::vector<CatalogGroup> catalog_manifest() {
  return {
      {"proposition-A", "proposition-A", "Appendix proposition, three relations"},
      {"oscillator", "commutativity", "commutativity of H_i, T_i, G^i_j, Z_l"},
      {"oscillator", "quadratic-alg1", "quadratic algebra of Z_l, H_l"},
      {"gauge", "gauge", "gauge-transformed H, Z, H_2"},
      {"coulomb", "commutativity", "commutativity of Z_p, S_i, Y_i, J_k"},
      {"coulomb", "YX", "relations of Y_1 and X_D"},
      {"coulomb", "YX-conjugated", "relations conjugated by sigma_jD"},
      {"coulomb", "correction", "closed form of sigma_jD S_{D-1} sigma_jD"},
      {"coulomb", "ZY-double", "double commutators of Z_p and Y_p"},
      {"coulomb", "SJ-double", "double commutators of S_p and J_p"},
      {"coulomb-erratum-wrong", "erratum", "third relation with Z_{N-1}"},
  };
}

DiffOp Evaluator::eval(const ExprPtr& e) {
  const std::string key = e->kind == Expr::Kind::leaf ? e->name : to_string(*e);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  DiffOp out = DiffOp::zero(resolver_.ring());
  switch (e->kind) {
    case Expr::Kind::leaf: {
      auto d = definitions_.find(e->name);
      out = d != definitions_.end() ? eval(d->second) : resolver_.resolve(e->name);
      break;
    }
    case Expr::Kind::number: out = DiffOp::scalar(resolver_.ring(), e->value); break;
    case Expr::Kind::negate: out = -eval(e->args[0]); break;
    case Expr::Kind::sum: {
      std::vector<DiffOp> parts;
      for (const auto& a : e->args) parts.push_back(eval(a));
      out = opalg::sum(parts);
      break;
    }
    case Expr::Kind::product: {
      Rational scale = 1;
      bool have = false;
      for (const auto& a : e->args) {
        if (a->kind == Expr::Kind::number) {
          scale *= a->value;
          continue;
        }
        DiffOp v = eval(a);
        out = have ? out * v : v;
        have = true;
      }
      if (!have) out = DiffOp::scalar(resolver_.ring(), 1);
      if (scale != 1) out *= scale;
      break;
    }
    case Expr::Kind::commutator: out = opalg::commutator(eval(e->args[0]), eval(e->args[1])); break;
    case Expr::Kind::anticommutator: out = opalg::anticommutator(eval(e->args[0]), eval(e->args[1])); break;
  }
  memo_.emplace(key, out);
  return out;
}

bool VerificationReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

RelationResult check_one(const Relation& rel, Evaluator& ev) {
  const auto t0 = std::chrono::steady_clock::now();
  RelationResult r;
  r.name = rel.name;
  r.group = rel.group;
  r.text = to_string(*rel.lhs) + " = " + to_string(*rel.rhs);
  r.expect = rel.expect;
  r.note = rel.note;
  try {
    DiffOp residual = ev.eval(rel.lhs) - ev.eval(rel.rhs);
    r.zero = residual.is_zero();
    r.residual_terms = residual.size();
    r.residual_order = residual.is_zero() ? 0 : residual.order();
    if (!r.zero) r.residual = opalg::summarize(residual, 3);
  } catch (const Error& e) {
    // a printed reading may name an integral that does not exist for this partition
    if (e.kind() != ErrorKind::invalid_integral && e.kind() != ErrorKind::invalid_index) throw;
    r.zero = false;
    r.unresolved = true;
    r.residual = e.what();
  }
  switch (rel.expect) {
    case Expectation::zero: r.pass = r.zero; break;
    case Expectation::nonzero: r.pass = !r.zero; break;
    case Expectation::report: r.pass = true; break;
  }
  if (!r.zero && rel.expect == Expectation::zero)
    for (const auto& alt : rel.alternatives) r.alternatives.push_back(check_one(alt, ev));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

VerificationReport verify_symbolic(const RelationSet& rs, int jobs) {
  VerificationReport report;
  report.catalog = rs.catalog;
  report.results.resize(rs.relations.size());
  if (jobs <= 1 || rs.relations.size() <= 1) {
    Evaluator ev(*rs.resolver, rs.definitions);
    for (std::size_t i = 0; i < rs.relations.size(); ++i) report.results[i] = check_one(rs.relations[i], ev);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    Evaluator ev(*rs.resolver, rs.definitions);
    try {
      for (std::size_t i = next++; i < rs.relations.size(); i = next++)
        report.results[i] = check_one(rs.relations[i], ev);
    } catch (...) {
      std::lock_guard lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return report;
}

}  // namespace blocksep
