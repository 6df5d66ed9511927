#include "blocksep/specfun.hpp"

#include <boost/math/special_functions/gegenbauer.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include <cmath>
#include <numbers>

#include "blocksep/error.hpp"

namespace blocksep {

namespace {

RationalPoly poly_add(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly c(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

RationalPoly poly_scale(const RationalPoly& a, const Rational& s) {
  RationalPoly c(a);
  for (auto& v : c) v *= s;
  return c;
}

// (u + v x) * a
RationalPoly poly_linear_mul(const RationalPoly& a, const Rational& u, const Rational& v) {
  RationalPoly c(a.size() + 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] += u * a[i];
    c[i + 1] += v * a[i];
  }
  return c;
}

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

double scalar_value(const Scalar& s, const std::map<std::string, double>& params) {
  if (!s.symbolic()) return to_double(*s.value);
  auto it = params.find(s.symbol);
  if (it == params.end()) throw Error(ErrorKind::undeclared_param, "no value for parameter '" + s.symbol + "'");
  return it->second;
}

void check_x1_params(const Rational& alpha, const Rational& beta) {
  if (alpha <= -1 || beta <= -1 || alpha == beta)
    throw Error(ErrorKind::inadmissible, "X1 Jacobi needs alpha, beta > -1 and alpha != beta (got " +
                                             to_string(alpha) + ", " + to_string(beta) + ")");
}

Rational x1_alpha(const Model2Params& p) { return p.A / 3 - p.B / 3 - Rational(1, 2); }
Rational x1_beta(const Model2Params& p) { return p.A / 3 + p.B / 3 - Rational(1, 2); }

// Constant part of level a (1-based) of a block potential.
double level_constant(const AngularPotentialSpec& pot, int d, int a, const std::map<std::string, double>& params) {
  switch (pot.kind) {
    case AngularPotentialSpec::Kind::zero: return 0;
    case AngularPotentialSpec::Kind::constant: return a == d - 1 ? scalar_value(pot.constant, params) : 0;
    case AngularPotentialSpec::Kind::hierarchy: break;
  }
  const auto& lv = pot.levels.at(a - 1);
  return lv.kind == LevelSpec::Kind::constant ? scalar_value(lv.constant, params) : 0;
}

const LevelSpec* model2_level(const AngularPotentialSpec& pot) {
  if (pot.kind != AngularPotentialSpec::Kind::hierarchy || pot.levels.empty()) return nullptr;
  return pot.levels[0].kind == LevelSpec::Kind::model2 ? &pot.levels[0] : nullptr;
}

void require_nonnegative(int n, const char* what) {
  if (n < 0) throw Error(ErrorKind::inadmissible, std::string(what) + " must be non-negative");
}

}  // namespace

Rational eval_poly(const RationalPoly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

double eval_poly(const RationalPoly& p, double x) {
  double v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + to_double(*it);
  return v;
}

RationalPoly derivative(const RationalPoly& p) {
  if (p.size() <= 1) return {};
  RationalPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return d;
}

double laguerre(int n, double alpha, double x) {
  require_nonnegative(n, "Laguerre degree");
  double l0 = 1, l1 = 1 + alpha - x;
  if (n == 0) return l0;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2 * k + 1 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

RationalPoly laguerre_poly(int n, const Rational& alpha) {
  require_nonnegative(n, "Laguerre degree");
  RationalPoly l0{Rational(1)}, l1{1 + alpha, Rational(-1)};
  if (n == 0) return l0;
  for (int k = 1; k < n; ++k) {
    RationalPoly l2 = poly_add(poly_linear_mul(l1, 2 * k + 1 + alpha, Rational(-1)), poly_scale(l0, -(k + alpha)));
    l2 = poly_scale(l2, Rational(1, k + 1));
    l0 = std::move(l1);
    l1 = std::move(l2);
  }
  return l1;
}

double jacobi(int n, double alpha, double beta, double x) {
  require_nonnegative(n, "Jacobi degree");
  return boost::math::jacobi(static_cast<unsigned>(n), alpha, beta, x);
}

RationalPoly jacobi_poly(int n, const Rational& alpha, const Rational& beta) {
  require_nonnegative(n, "Jacobi degree");
  const Rational ab = alpha + beta;
  RationalPoly p0{Rational(1)};
  RationalPoly p1{(alpha + 1) - (ab + 2) / 2, (ab + 2) / 2};
  if (n == 0) return p0;
  for (int k = 2; k <= n; ++k) {
    const Rational c = 2 * k + ab;
    const Rational den = 2 * k * (k + ab) * (c - 2);
    RationalPoly t = poly_linear_mul(p1, (c - 1) * (alpha * alpha - beta * beta), (c - 1) * c * (c - 2));
    t = poly_add(t, poly_scale(p0, -2 * (k + alpha - 1) * (k + beta - 1) * c));
    t = poly_scale(t, 1 / den);
    p0 = std::move(p1);
    p1 = std::move(t);
  }
  return p1;
}

RationalPoly x1_jacobi_poly(int n, const Rational& alpha, const Rational& beta) {
  if (n < 1) throw Error(ErrorKind::inadmissible, "X1 Jacobi degree must be >= 1");
  check_x1_params(alpha, beta);
  const Rational b = (beta + alpha) / (beta - alpha);
  const RationalPoly pm1 = jacobi_poly(n - 1, alpha, beta);
  const RationalPoly pm2 = n >= 2 ? jacobi_poly(n - 2, alpha, beta) : RationalPoly{};
  RationalPoly p = poly_linear_mul(pm1, b / 2, Rational(-1, 2));
  p = poly_add(p, poly_scale(poly_add(poly_scale(pm1, b), poly_scale(pm2, Rational(-1))), 1 / (alpha + beta + 2 * n - 2)));
  // classical leading coefficient (n+alpha+beta+1)_n / (2^n n!)
  Rational lead(1);
  for (int k = 0; k < n; ++k) lead *= (n + alpha + beta + 1 + k) / Rational(2 * (k + 1));
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return poly_scale(p, lead / p.back());
}

double x1_jacobi(int n, const Rational& alpha, const Rational& beta, double x) {
  return eval_poly(x1_jacobi_poly(n, alpha, beta), x);
}

RationalPoly x1_operator_times_denominator(const RationalPoly& y, const Rational& alpha, const Rational& beta) {
  check_x1_params(alpha, beta);
  const Rational a = (beta - alpha) / 2;
  const Rational b = (beta + alpha) / (beta - alpha);
  const Rational c = b + 1 / a;
  const RationalPoly d1 = derivative(y), d2 = derivative(d1);
  // (b - x)(x^2 - 1) y''
  RationalPoly t1 = poly_mul(RationalPoly{-b, Rational(1), b, Rational(-1)}, d2);
  // 2a (1 - b x) ((x - c) y' - y)
  RationalPoly inner = poly_add(poly_linear_mul(d1, -c, Rational(1)), poly_scale(y, Rational(-1)));
  RationalPoly t2 = poly_linear_mul(inner, 2 * a, -2 * a * b);
  return poly_add(t1, t2);
}

double model2_angular(const Model2Params& p, int J, double phi) {
  require_nonnegative(J, "J_1");
  const double s = std::sin(3 * phi);
  const double A = to_double(p.A), B = to_double(p.B);
  const double pre = std::pow(1 - s, (A - B) / 6) * std::pow(1 + s, (A + B) / 6) / (2 * A - 3 - 2 * B * s);
  return pre * x1_jacobi(J + 1, x1_alpha(p), x1_beta(p), s);
}

Jet2 model2_angular_jet(const Model2Params& p, int J, double phi) {
  require_nonnegative(J, "J_1");
  const double s = std::sin(3 * phi), ds = 3 * std::cos(3 * phi), dds = -9 * s;
  const double A = to_double(p.A), B = to_double(p.B);
  const double a = (A - B) / 6, b = (A + B) / 6;
  const RationalPoly P = x1_jacobi_poly(J + 1, x1_alpha(p), x1_beta(p));
  const RationalPoly P1 = derivative(P), P2 = derivative(P1);
  const double w = std::pow(1 - s, a) * std::pow(1 + s, b);
  const double l = -a / (1 - s) + b / (1 + s), dl = -a / ((1 - s) * (1 - s)) - b / ((1 + s) * (1 + s));
  const double w1 = w * l, w2 = w * (l * l + dl);
  const double u = 1 / (2 * A - 3 - 2 * B * s), u1 = 2 * B * u * u, u2 = 8 * B * B * u * u * u;
  const double pv = eval_poly(P, s), p1 = eval_poly(P1, s), p2 = eval_poly(P2, s);
  const double q = pv * u, q1 = p1 * u + pv * u1, q2 = p2 * u + 2 * p1 * u1 + pv * u2;
  const double g = w * q, g1 = w1 * q + w * q1, g2 = w2 * q + 2 * w1 * q1 + w * q2;
  return {g, g1 * ds, g2 * ds * ds + g1 * dds};
}

double model2_level1_residual(const Model2Params& p, int J, double E, int samples) {
  const double lo = -std::numbers::pi / 6 + 0.02, hi = std::numbers::pi / 6 - 0.02;
  double worst = 0, peak = 0;
  for (int k = 0; k < samples; ++k) {
    const double phi = lo + (hi - lo) * (k + 0.5) / samples;
    const Jet2 h = model2_angular_jet(p, J, phi);
    worst = std::max(worst, std::abs(-h.d2 + (model2_potential(p, phi) - E) * h.value));
    peak = std::max(peak, std::abs(h.value));
  }
  return worst / peak;
}

std::vector<int> zonal_levels(int d, int l) {
  if (d <= 1) return {};
  std::vector<int> n(d - 1, 0);
  n.back() = l;
  return n;
}

BlockAngular block_angular(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                           const std::map<std::string, double>& params) {
  BlockAngular out;
  if (static_cast<int>(levels.size()) != std::max(d - 1, 0))
    throw Error(ErrorKind::inadmissible, "block of size " + std::to_string(d) + " needs " +
                                             std::to_string(std::max(d - 1, 0)) + " level numbers");
  for (int n : levels) require_nonnegative(n, "level number");
  if (d == 1) {
    out.lambda = pot.kind == AngularPotentialSpec::Kind::constant ? scalar_value(pot.constant, params) : 0.0;
    return out;
  }
  double alpha;
  if (const LevelSpec* m2 = model2_level(pot)) {
    alpha = std::pow(to_double(m2->model2.A) + 3 * levels[0], 2);
  } else {
    alpha = double(levels[0]) * levels[0] + level_constant(pot, d, 1, params);
  }
  out.alpha.push_back(alpha);
  for (int a = 2; a <= d - 1; ++a) {
    const double disc = (a - 2) * (a - 2) / 4.0 + alpha;
    if (disc < 0) throw Error(ErrorKind::inadmissible, "negative discriminant in the angular chain");
    const double nu = -(a - 2) / 2.0 + std::sqrt(disc);
    const double m = nu + levels[a - 1];
    alpha = m * (m + a - 1) + level_constant(pot, d, a, params);
    out.alpha.push_back(alpha);
  }
  out.lambda = alpha;
  return out;
}

double block_angular_value(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                           const BlockAngular& chain, std::span<const double> y) {
  if (d == 1) return 1.0;
  double value;
  const double phi1 = std::atan2(y[0], y[1]);
  if (const LevelSpec* m2 = model2_level(pot))
    value = model2_angular(m2->model2, levels[0], phi1);
  else
    value = std::cos(levels[0] * phi1);
  double P = y[0] * y[0] + y[1] * y[1];
  for (int a = 2; a <= d - 1; ++a) {
    const double Pn = P + y[a] * y[a];
    const double cosp = y[a] / std::sqrt(Pn), sinp = std::sqrt(P / Pn);
    const double nu = -(a - 2) / 2.0 + std::sqrt((a - 2) * (a - 2) / 4.0 + chain.alpha[a - 2]);
    value *= std::pow(sinp, nu) *
             boost::math::gegenbauer(static_cast<unsigned>(levels[a - 1]), nu + (a - 1) / 2.0, cosp);
    P = Pn;
  }
  return value;
}

Eigenfunction assemble_eigenfunction(const EigenfunctionSpec& es) {
  validate(es.model);
  const Partition& part = es.model.partition;
  const int N = part.blocks();
  if (static_cast<int>(es.levels.size()) != N)
    throw Error(ErrorKind::inadmissible, "need level numbers for every block");
  const bool osc = es.model.family == Family::oscillator;
  std::vector<AngularPotentialSpec> pots = es.model.potentials;
  if (!osc) pots.push_back(AngularPotentialSpec::zero());

  struct Block {
    std::vector<int> coords;
    AngularPotentialSpec pot;
    std::vector<int> levels;
    BlockAngular chain;
  };
  auto blocks = std::make_shared<std::vector<Block>>();
  Eigenfunction ef;
  for (int i = 1; i <= N; ++i) {
    Block b{part.block_coords(i), pots[i - 1], es.levels[i - 1], {}};
    b.chain = block_angular(b.pot, part.size(i), b.levels, es.params);
    ef.lambda.push_back(b.chain.lambda);
    blocks->push_back(std::move(b));
  }
  const double coupling = scalar_value(es.model.coupling, es.params);

  // r_i^{-(d_i-1)/2} Y_i(Omega_i) for every block
  auto angular = [blocks](std::span<const double> x) {
    double v = 1;
    for (const auto& b : *blocks) {
      std::vector<double> y;
      double r2 = 0;
      for (int c : b.coords) {
        y.push_back(x[c]);
        r2 += x[c] * x[c];
      }
      const int d = static_cast<int>(y.size());
      v *= std::pow(r2, -(d - 1) / 4.0) * block_angular_value(b.pot, d, b.levels, b.chain, y);
    }
    return v;
  };

  if (osc) {
    if (coupling <= 0) throw Error(ErrorKind::inadmissible, "eigenfunctions need omega^2 > 0");
    if (static_cast<int>(es.k.size()) != N) throw Error(ErrorKind::inadmissible, "need one k per block");
    const double omega = std::sqrt(coupling);
    for (int i = 0; i < N; ++i) {
      require_nonnegative(es.k[i], "k_i");
      const int d = part.size(i + 1);
      const double disc = 1 + 4 * ef.lambda[i] + (d - 1) * (d - 3);
      if (disc < 0) throw Error(ErrorKind::inadmissible, "negative discriminant for gamma_" + std::to_string(i + 1));
      ef.gamma.push_back(0.5 * (1 + std::sqrt(disc)));
      ef.energy += omega * (4 * es.k[i] + 2 * ef.gamma[i] + 1);
    }
    ef.psi = [blocks, angular, omega, gamma = ef.gamma, k = es.k](std::span<const double> x) {
      double v = angular(x);
      for (std::size_t i = 0; i < blocks->size(); ++i) {
        double r2 = 0;
        for (int c : (*blocks)[i].coords) r2 += x[c] * x[c];
        v *= std::pow(r2, gamma[i] / 2) * std::exp(-omega * r2 / 2) * laguerre(k[i], gamma[i] - 0.5, omega * r2);
      }
      return v;
    };
    return ef;
  }

  if (static_cast<int>(es.J.size()) != N - 1) throw Error(ErrorKind::inadmissible, "need J_1..J_{N-1}");
  require_nonnegative(es.Nr, "N_r");
  for (int j : es.J) require_nonnegative(j, "J_s");
  for (int i = 0; i < N; ++i) {
    const int d = part.size(i + 1);
    const double disc = 1 + 4 * ef.lambda[i] + (d - 1) * (d - 3);
    if (disc < 0) throw Error(ErrorKind::inadmissible, "negative discriminant for gamma_" + std::to_string(i + 1));
    ef.gamma.push_back(0.5 * std::sqrt(disc));
  }
  // kappa_i = 2 sum_{s<=i} J_s + i + sum_{s<=i+1} gamma_s, kappa_0 = gamma_1
  std::vector<double> kappa{ef.gamma[0]};
  double sumJ = 0, sumg = ef.gamma[0];
  for (int i = 1; i <= N - 1; ++i) {
    sumJ += es.J[i - 1];
    sumg += ef.gamma[i];
    kappa.push_back(2 * sumJ + i + sumg);
  }
  ef.kappa = kappa.back() + 0.5;
  const double q = coupling / (2 * (es.Nr + ef.kappa));
  ef.energy = -q * q;
  ef.psi = [blocks, angular, kappa, K = ef.kappa, q, Nr = es.Nr, J = es.J, gamma = ef.gamma,
            N](std::span<const double> x) {
    std::vector<double> radii;
    for (const auto& b : *blocks) {
      double r2 = 0;
      for (int c : b.coords) r2 += x[c] * x[c];
      radii.push_back(std::sqrt(r2));
    }
    double R2 = radii[0] * radii[0];
    double v = angular(x);
    for (int i = 1; i <= N - 1; ++i) {
      const double R2n = R2 + radii[i] * radii[i];
      const double cost = radii[i] / std::sqrt(R2n), sint = std::sqrt(R2 / R2n);
      v *= std::pow(sint, kappa[i - 1] + 1 - i / 2.0) * std::pow(cost, gamma[i] + 0.5) *
           jacobi(J[i - 1], kappa[i - 1], gamma[i], 2 * cost * cost - 1);
      R2 = R2n;
    }
    const double r = std::sqrt(R2);
    v *= std::pow(r, -(N - 1) / 2.0) * std::pow(r, K) * std::exp(-q * r) * laguerre(Nr, 2 * K - 1, 2 * q * r);
    return v;
  };
  return ef;
}

EigenCheck check_eigenfunction(const EigenfunctionSpec& es, int points, std::uint64_t seed, const FDScheme& scheme) {
  const Eigenfunction ef = assemble_eigenfunction(es);
  bool model2 = false;
  for (const auto& p : es.model.potentials) model2 = model2 || model2_level(p) != nullptr;
  const Model m(es.model, model2 ? Mode::numeric : Mode::symbolic);
  // r_i^(gamma+1/2) is not smooth across x_a = 0, so keep stencils well clear
  const NumericContext ctx = numeric_context(m, es.params, 0.25, 0.5);
  const auto h = m.hamiltonian();
  const int D = m.dimension();
  std::mt19937_64 rng(seed);
  std::vector<double> ratios;
  double peak = 0;
  for (int tries = 0; static_cast<int>(ratios.size()) < points; ++tries) {
    if (tries > 100 * points) throw Error(ErrorKind::singular_sample, "no admissible points away from nodes");
    auto x = sample_points(ctx, D, 1, rng, 1.2)[0];
    const double psi = ef.psi(x);
    peak = std::max(peak, std::abs(psi));
    // stay away from nodes, where the ratio is ill-conditioned
    if (!std::isfinite(psi) || std::abs(psi) < 0.05 * peak) continue;
    ratios.push_back(apply_numeric(h, ef.psi, x, ctx, scheme) / psi);
  }
  EigenCheck out;
  out.points = ratios.size();
  for (double r : ratios) out.mean += r;
  out.mean /= static_cast<double>(ratios.size());
  double var = 0;
  for (double r : ratios) var += (r - out.mean) * (r - out.mean);
  out.rel_spread = std::sqrt(var / static_cast<double>(ratios.size())) / std::abs(out.mean);
  out.rel_error = std::abs(out.mean - ef.energy) / std::abs(ef.energy);
  return out;
}

}  // namespace blocksep
