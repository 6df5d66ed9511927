#include "blocksep/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blocksep/error.hpp"

namespace blocksep {

using opalg::Coefficient;
using opalg::DiffOp;
using opalg::Poly;

AngularPotentialSpec AngularPotentialSpec::model2(int block_size, Model2Params p) {
  if (block_size < 2) throw Error(ErrorKind::invalid_model, "Model 2 needs a block of size >= 2");
  std::vector<LevelSpec> levels(block_size - 1);
  levels[0].kind = LevelSpec::Kind::model2;
  levels[0].model2 = p;
  return hierarchy(std::move(levels));
}

ModelSpec ModelSpec::oscillator_model1(std::vector<int> blocks) {
  ModelSpec s;
  s.family = Family::oscillator;
  s.partition = Partition::make(std::move(blocks));
  s.coupling = Scalar::named("omega2");
  for (int i = 1; i <= s.partition.blocks(); ++i)
    s.potentials.push_back(AngularPotentialSpec::constant_of(Scalar::named("beta" + std::to_string(i))));
  return s;
}

ModelSpec ModelSpec::coulomb_model1(std::vector<int> blocks) {
  ModelSpec s;
  s.family = Family::coulomb;
  s.partition = Partition::make(std::move(blocks));
  s.coupling = Scalar::named("eta");
  for (int i = 1; i < s.partition.blocks(); ++i)
    s.potentials.push_back(AngularPotentialSpec::constant_of(Scalar::named("alpha" + std::to_string(i))));
  return s;
}

void validate(const ModelSpec& spec) {
  const int n = spec.partition.blocks();
  const std::size_t expected = spec.family == Family::oscillator ? n : n - 1;
  if (spec.potentials.size() != expected)
    throw Error(ErrorKind::invalid_model, "expected " + std::to_string(expected) +
                                              " angular potentials, got " +
                                              std::to_string(spec.potentials.size()));
  for (std::size_t i = 0; i < spec.potentials.size(); ++i) {
    const auto& pot = spec.potentials[i];
    const int d = spec.partition.size(static_cast<int>(i) + 1);
    if (pot.kind != AngularPotentialSpec::Kind::hierarchy) continue;
    if (d == 1)
      throw Error(ErrorKind::invalid_model, "block " + std::to_string(i + 1) +
                                                " has one coordinate and admits only zero or constant");
    if (static_cast<int>(pot.levels.size()) != d - 1)
      throw Error(ErrorKind::invalid_model, "hierarchy of block " + std::to_string(i + 1) +
                                                " must have " + std::to_string(d - 1) + " levels");
    for (std::size_t j = 1; j < pot.levels.size(); ++j)
      if (pot.levels[j].kind == LevelSpec::Kind::model2)
        throw Error(ErrorKind::invalid_model, "Model 2 potential allowed only at level 1");
  }
}

namespace {

void collect_symbol(const Scalar& s, std::vector<std::string>& out) {
  if (s.symbolic() && std::find(out.begin(), out.end(), s.symbol) == out.end())
    out.push_back(s.symbol);
}

std::vector<int> range(int first, int last) {
  std::vector<int> v;
  for (int a = first; a <= last; ++a) v.push_back(a);
  return v;
}

bool has_model2(const AngularPotentialSpec& p) {
  return p.kind == AngularPotentialSpec::Kind::hierarchy && !p.levels.empty() &&
         p.levels[0].kind == LevelSpec::Kind::model2;
}

}  // namespace

Model::Model(ModelSpec spec, Mode mode) : spec_(std::move(spec)), mode_(mode) {
  validate(spec_);
  const Partition& part = spec_.partition;
  std::vector<std::string> params;
  collect_symbol(spec_.coupling, params);
  for (const auto& pot : spec_.potentials) {
    if (pot.kind == AngularPotentialSpec::Kind::constant) collect_symbol(pot.constant, params);
    for (const auto& lv : pot.levels)
      if (lv.kind == LevelSpec::Kind::constant) collect_symbol(lv.constant, params);
  }

  opalg::Context::Builder b(part.dimension());
  for (const auto& p : params) b.param(p);
  for (int i = 1; i <= part.blocks(); ++i) b.atom(part.block_coords(i));
  for (std::size_t i = 0; i < spec_.potentials.size(); ++i) {
    const auto& pot = spec_.potentials[i];
    const auto coords = part.block_coords(static_cast<int>(i) + 1);
    for (std::size_t j = 0; j < pot.levels.size(); ++j) {
      if (pot.levels[j].kind == LevelSpec::Kind::zero) continue;
      b.atom(std::vector<int>(coords.begin(), coords.begin() + j + 2));
    }
    if (has_model2(pot)) {
      if (mode_ == Mode::symbolic)
        throw Error(ErrorKind::unsupported_symbolic_potential,
                    "Model 2 potential on block " + std::to_string(i + 1) +
                        " is not rational in Cartesian coordinates");
      b.angle_function("F" + std::to_string(i + 1), coords[0], coords[1]);
    }
  }
  if (spec_.family == Family::coulomb) b.radical("r", range(0, part.dimension() - 1));
  ring_ = b.build();

  for (int i = 1; i <= part.blocks(); ++i) {
    std::vector<Coefficient> parts;
    std::vector<std::pair<int, Coefficient>> leveled;
    if (static_cast<std::size_t>(i) <= spec_.potentials.size()) {
      const auto& pot = spec_.potentials[i - 1];
      const auto coords = part.block_coords(i);
      const int block_atom = *ring_->find_atom(coords);
      if (pot.kind == AngularPotentialSpec::Kind::constant)
        leveled.emplace_back(static_cast<int>(coords.size()),
                             opalg::over_atom(scalar_coef(pot.constant), block_atom,
                                              ring_->atoms()[block_atom].linear() ? 2 : 1));
      for (std::size_t j = 0; j < pot.levels.size(); ++j) {
        const auto& lv = pot.levels[j];
        if (lv.kind == LevelSpec::Kind::zero) continue;
        const int atom = *ring_->find_atom(std::vector<int>(coords.begin(), coords.begin() + j + 2));
        if (lv.kind == LevelSpec::Kind::constant) {
          leveled.emplace_back(static_cast<int>(j) + 2, opalg::over_atom(scalar_coef(lv.constant), atom));
        } else {
          const auto& fn = ring_->angle_functions()[*ring_->find_angle_function("F" + std::to_string(i))];
          leveled.emplace_back(static_cast<int>(j) + 2,
                               opalg::over_atom(Coefficient(Poly::variable(fn.first_var)), atom));
        }
      }
    }
    for (const auto& [n, c] : leveled) parts.push_back(c);
    pot_over_r2_.push_back(opalg::sum(parts, *ring_));
    pot_levels_.push_back(std::move(leveled));
  }
}

Coefficient Model::scalar_coef(const Scalar& s) const {
  if (!s.symbolic()) return Coefficient::constant(*s.value);
  return Coefficient(Poly::variable(ring_->require_param(s.symbol)));
}

DiffOp Model::x(int a) const { return DiffOp::coord(ring_, a - 1); }
DiffOp Model::p(int a) const { return DiffOp::partial(ring_, a - 1); }
DiffOp Model::L(int k, int l) const { return x(k) * p(l) - x(l) * p(k); }

DiffOp Model::casimir(int first, int last) const {
  std::vector<DiffOp> parts;
  for (int k = first; k <= last; ++k)
    for (int l = k + 1; l <= last; ++l) {
      DiffOp lk = L(k, l);
      parts.push_back(lk * lk);
    }
  return opalg::sum(parts.empty() ? std::vector<DiffOp>{DiffOp::zero(ring_)} : parts);
}

DiffOp Model::laplacian(int first, int last) const {
  DiffOp::TermMap terms;
  for (int a = first; a <= last; ++a) {
    opalg::DIdx idx{};
    idx.e[a - 1] = 2;
    terms[idx] = Coefficient::constant(1);
  }
  return DiffOp(ring_, std::move(terms));
}

DiffOp Model::constant(const Rational& c) const { return DiffOp::scalar(ring_, c); }

DiffOp Model::coupling() const { return DiffOp::multiply(ring_, scalar_coef(spec_.coupling)); }

Coefficient Model::squares(int first, int last) const {
  return Coefficient(ring_->sum_of_squares(range(first - 1, last - 1)));
}

Coefficient Model::potential_over_r2(int block) const { return pot_over_r2_.at(block - 1); }

Coefficient Model::potential_function(int block) const {
  const auto coords = partition().block_coords(block);
  return opalg::mul(Coefficient(ring_->sum_of_squares(coords)), potential_over_r2(block), *ring_);
}

Coefficient Model::potential_over_r2_inner(int block, int ncoords) const {
  std::vector<Coefficient> parts;
  for (const auto& [n, c] : pot_levels_.at(block - 1))
    if (n <= ncoords) parts.push_back(c);
  return opalg::sum(parts, *ring_);
}

bool Model::has_potential(int block) const { return !pot_over_r2_.at(block - 1).is_zero(); }

DiffOp Model::potential_operator(int block) const {
  if (block < 1 || block > blocks()) throw Error(ErrorKind::invalid_index, "block out of range");
  return DiffOp::multiply(ring_, potential_over_r2(block));
}

DiffOp Model::hamiltonian() const {
  const int d = dimension();
  std::vector<Coefficient> mult;
  const Coefficient g = scalar_coef(spec_.coupling);
  if (spec_.family == Family::oscillator) {
    mult.push_back(opalg::mul(g, squares(1, d), *ring_));
  } else {
    const auto& rad = ring_->radicals()[*ring_->find_radical("r")];
    // -eta / r = -eta r / r^2
    Coefficient r_over_s = opalg::over_atom(Coefficient(Poly::variable(rad.var)), rad.atom);
    mult.push_back(opalg::negate(opalg::mul(g, r_over_s, *ring_)));
  }
  for (int i = 1; i <= blocks(); ++i) mult.push_back(potential_over_r2(i));
  return -laplacian(1, d) + DiffOp::multiply(ring_, opalg::sum(mult, *ring_));
}

std::vector<double> Model::ring_values(std::span<const double> xs,
                                       const std::map<std::string, double>& params) const {
  const auto& ctx = *ring_;
  std::vector<double> v(ctx.num_vars(), 0.0);
  for (int a = 0; a < ctx.coords(); ++a) v[a] = xs[a];
  for (const auto& name : ctx.params()) {
    auto it = params.find(name);
    if (it == params.end()) throw Error(ErrorKind::undeclared_param, "no value for parameter '" + name + "'");
    v[*ctx.param_var(name)] = it->second;
  }
  for (const auto& rad : ctx.radicals()) {
    double s = 0;
    for (int c : rad.support) s += xs[c] * xs[c];
    v[rad.var] = std::sqrt(s);
  }
  const auto evals = angle_evaluators();
  for (const auto& fn : ctx.angle_functions()) {
    const double phi = std::atan2(xs[fn.sin_coord], xs[fn.cos_coord]);
    evals.at(fn.name)(phi, std::span<double>(v.data() + fn.first_var, fn.jets));
  }
  return v;
}

std::map<std::string, AngleJetEvaluator> Model::angle_evaluators() const {
  std::map<std::string, AngleJetEvaluator> out;
  for (std::size_t i = 0; i < spec_.potentials.size(); ++i) {
    const auto& pot = spec_.potentials[i];
    if (!has_model2(pot)) continue;
    const Model2Params mp = pot.levels[0].model2;
    out["F" + std::to_string(i + 1)] = [mp](double phi, std::span<double> jets) {
      model2_potential_jets(mp, phi, jets);
    };
  }
  return out;
}

DiffOp build_hamiltonian(const ModelSpec& spec, Mode mode) { return Model(spec, mode).hamiltonian(); }

DiffOp build_potential_operator(const ModelSpec& spec, int block, Mode mode) {
  return Model(spec, mode).potential_operator(block);
}

namespace {

double scalar_value(const Scalar& s, const std::map<std::string, double>& params) {
  if (!s.symbolic()) return to_double(*s.value);
  auto it = params.find(s.symbol);
  if (it == params.end()) throw Error(ErrorKind::undeclared_param, "no value for parameter '" + s.symbol + "'");
  return it->second;
}

// Truncated Taylor series arithmetic in t around a fixed point.
using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b) {
  Series c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series series_recip(const Series& a) {
  Series c(a.size(), 0.0);
  c[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * c[k - j];
    c[k] = -s / a[0];
  }
  return c;
}

void check_model2_point(const Model2Params& p, double s3, double c3) {
  const double A = to_double(p.A), B = to_double(p.B);
  const double den = 2 * A - 3 - 2 * B * s3;
  const double scale = std::abs(2 * A - 3) + 2 * std::abs(B) + 1;
  if (std::abs(c3) < 1e-12)
    throw Error(ErrorKind::evaluation_singularity, "cos 3phi vanishes in the Model 2 potential");
  if (std::abs(den) < 1e-12 * scale)
    throw Error(ErrorKind::evaluation_singularity, "2A - 3 - 2B sin 3phi vanishes");
}

}  // namespace

double model2_potential(const Model2Params& p, double phi) {
  double v = 0;
  model2_potential_jets(p, phi, std::span<double>(&v, 1));
  return v;
}

void model2_potential_jets(const Model2Params& p, double phi, std::span<double> jets) {
  const std::size_t n = jets.size();
  if (n == 0) return;
  const double A = to_double(p.A), B = to_double(p.B);
  Series s(n), c(n);
  double fact = 1, pow3 = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // k-th derivative of sin(3 phi) is 3^k sin(3 phi + k pi / 2)
    const double shift = static_cast<double>(k) * std::numbers::pi / 2;
    s[k] = pow3 * std::sin(3 * phi + shift) / fact;
    c[k] = pow3 * std::cos(3 * phi + shift) / fact;
    pow3 *= 3;
    fact *= static_cast<double>(k + 1);
  }
  check_model2_point(p, s[0], c[0]);
  const Series inv_c2 = series_recip(series_mul(c, c));
  Series den(n);
  for (std::size_t k = 0; k < n; ++k) den[k] = -2 * B * s[k];
  den[0] += 2 * A - 3;
  const Series inv_den = series_recip(den);
  const Series inv_den2 = series_mul(inv_den, inv_den);

  Series num1(n);
  for (std::size_t k = 0; k < n; ++k) num1[k] = -B * (2 * A - 3) * s[k];
  num1[0] += A * (A - 3) + B * B;
  const Series t1 = series_mul(num1, inv_c2);
  const double k1 = 18 * (2 * A - 3);
  const double k2 = -18 * ((2 * A - 3) * (2 * A - 3) - 4 * B * B);
  fact = 1;
  for (std::size_t k = 0; k < n; ++k) {
    jets[k] = (t1[k] + k1 * inv_den[k] + k2 * inv_den2[k]) * fact;
    fact *= static_cast<double>(k + 1);
  }
}

double eval_angular_potential(const AngularPotentialSpec& spec, std::span<const double> angles,
                              const std::map<std::string, double>& params) {
  switch (spec.kind) {
    case AngularPotentialSpec::Kind::zero: return 0.0;
    case AngularPotentialSpec::Kind::constant: return scalar_value(spec.constant, params);
    case AngularPotentialSpec::Kind::hierarchy: break;
  }
  if (angles.size() != spec.levels.size())
    throw Error(ErrorKind::invalid_model, "angle count does not match hierarchy depth");
  double value = 0;
  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    const auto& lv = spec.levels[j];
    if (j > 0 && value != 0.0) {
      const double s = std::sin(angles[j]);
      if (std::abs(s) < 1e-12)
        throw Error(ErrorKind::evaluation_singularity,
                    "sin phi_" + std::to_string(j + 1) + " vanishes under a nonzero inner potential");
      value /= s * s;
    }
    switch (lv.kind) {
      case LevelSpec::Kind::zero: break;
      case LevelSpec::Kind::constant: value += scalar_value(lv.constant, params); break;
      case LevelSpec::Kind::model2: value += model2_potential(lv.model2, angles[j]); break;
    }
  }
  return value;
}

}  // namespace blocksep
