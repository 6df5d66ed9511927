#include "blocksep/numerics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "blocksep/error.hpp"

namespace blocksep {

using opalg::DiffOp;

std::vector<double> fornberg_weights(double z, std::span<const double> nodes, int deriv) {
  // B. Fornberg, Math. Comp. 51 (1988), weights for all orders up to deriv
  const int n = static_cast<int>(nodes.size()) - 1;
  const int m = deriv;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> central_weights(int deriv, int order) {
  if (deriv < 0) throw Error(ErrorKind::usage, "negative derivative order");
  if (order < 2 || order % 2) throw Error(ErrorKind::usage, "stencil order must be even and >= 2");
  if (deriv == 0) return {1.0};
  const int points = 2 * ((deriv + 1) / 2) - 1 + order;
  const int m = points / 2;
  std::vector<double> nodes;
  for (int k = -m; k <= m; ++k) nodes.push_back(k);
  return fornberg_weights(0.0, nodes, deriv);
}

double fd_step(const FDScheme& s, int total_order) {
  if (s.h > 0) return s.h;
  const double eps = std::numeric_limits<double>::epsilon();
  return s.h_scale * std::pow(eps, 1.0 / (s.order + std::max(total_order, 1)));
}

namespace {

double tensor_derivative(const ScalarField& f, std::span<const double> x, std::span<const int> alpha, int order,
                         double h) {
  struct Axis {
    int coord;
    std::vector<double> w;
    double scale;
  };
  std::vector<Axis> axes;
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    if (alpha[a] == 0) continue;
    axes.push_back({static_cast<int>(a), central_weights(alpha[a], order), std::pow(h, -alpha[a])});
  }
  std::vector<double> y(x.begin(), x.end());
  if (axes.empty()) return f(y);
  // odometer over the stencil grid
  std::vector<std::size_t> idx(axes.size(), 0);
  double total = 0;
  while (true) {
    double w = 1;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const auto& ax = axes[k];
      const int m = static_cast<int>(ax.w.size() / 2);
      w *= ax.w[idx[k]];
      y[ax.coord] = x[ax.coord] + (static_cast<int>(idx[k]) - m) * h;
    }
    if (w != 0) total += w * f(y);
    std::size_t k = 0;
    while (k < axes.size() && ++idx[k] == axes[k].w.size()) idx[k++] = 0;
    if (k == axes.size()) break;
  }
  for (const auto& ax : axes) total *= ax.scale;
  return total;
}

}  // namespace

double partial_derivative(const ScalarField& f, std::span<const double> x, std::span<const int> alpha,
                          const FDScheme& scheme) {
  int total = 0;
  for (int a : alpha) total += a;
  const double h = fd_step(scheme, total);
  const double d = tensor_derivative(f, x, alpha, scheme.order, h);
  if (!scheme.richardson || total == 0) return d;
  const double d2 = tensor_derivative(f, x, alpha, scheme.order, h / 2);
  const double p = std::pow(2.0, scheme.order);
  return (p * d2 - d) / (p - 1);
}

double DerivativeCache::get(std::span<const int> alpha) {
  std::vector<int> key(alpha.begin(), alpha.end());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const double v = partial_derivative(f_, x_, alpha, scheme_);
  memo_.emplace(std::move(key), v);
  return v;
}

NumericContext numeric_context(const Model& m, const std::map<std::string, double>& params, double delta,
                               double model2_delta) {
  NumericContext ctx;
  ctx.ring = m.ring();
  auto model = std::make_shared<const Model>(m);
  ctx.values = [model, params](std::span<const double> x) { return model->ring_values(x, params); };
  std::vector<std::tuple<int, int, Model2Params>> m2;
  const Partition& part = m.partition();
  for (std::size_t i = 0; i < m.spec().potentials.size(); ++i) {
    const auto& pot = m.spec().potentials[i];
    if (pot.kind == AngularPotentialSpec::Kind::hierarchy && !pot.levels.empty() &&
        pot.levels[0].kind == LevelSpec::Kind::model2) {
      const auto coords = part.block_coords(static_cast<int>(i) + 1);
      m2.emplace_back(coords[0], coords[1], pot.levels[0].model2);
    }
  }
  ctx.check_point = [delta, model2_delta, m2](std::span<const double> x) {
    for (std::size_t a = 0; a < x.size(); ++a)
      if (std::abs(x[a]) < delta)
        throw Error(ErrorKind::singular_sample, "x" + std::to_string(a + 1) + " too close to 0");
    for (const auto& [s, c, p] : m2) {
      const double phi = std::atan2(x[s], x[c]);
      const double A = to_double(p.A), B = to_double(p.B);
      if (std::abs(std::cos(3 * phi)) < model2_delta ||
          std::abs(2 * A - 3 - 2 * B * std::sin(3 * phi)) < model2_delta)
        throw Error(ErrorKind::singular_sample, "point too close to a singularity of F");
    }
  };
  return ctx;
}

NumericContext numeric_context(const opalg::ContextPtr& ring, const std::map<std::string, double>& params) {
  NumericContext ctx;
  ctx.ring = ring;
  std::vector<double> base(ring->num_vars(), 0.0);
  for (int v = 0; v < ring->num_vars(); ++v) {
    switch (ring->var_kind(v)) {
      case opalg::VarKind::coord: break;
      case opalg::VarKind::param: {
        auto it = params.find(ring->var_name(v));
        if (it == params.end())
          throw Error(ErrorKind::undeclared_param, "no value for parameter '" + ring->var_name(v) + "'");
        base[v] = it->second;
        break;
      }
      default: throw Error(ErrorKind::usage, "bare numeric context cannot evaluate radicals or jets");
    }
  }
  const int coords = ring->coords();
  ctx.values = [base, coords](std::span<const double> x) {
    std::vector<double> v = base;
    std::copy(x.begin(), x.begin() + coords, v.begin());
    return v;
  };
  ctx.check_point = [](std::span<const double> x) {
    for (std::size_t a = 0; a < x.size(); ++a)
      if (std::abs(x[a]) < 0.05)
        throw Error(ErrorKind::singular_sample, "x" + std::to_string(a + 1) + " too close to 0");
  };
  return ctx;
}

double apply_numeric(const DiffOp& op, DerivativeCache& cache, const NumericContext& ctx) {
  const auto vals = ctx.values(cache.point());
  const int D = ctx.ring->coords();
  std::vector<int> alpha(D);
  double total = 0;
  for (const auto& [idx, coef] : op.terms()) {
    for (int a = 0; a < D; ++a) alpha[a] = idx.e[a];
    total += opalg::evaluate(coef, *ctx.ring, vals) * cache.get(alpha);
  }
  return total;
}

double apply_numeric(const DiffOp& op, const ScalarField& f, std::span<const double> x, const NumericContext& ctx,
                     const FDScheme& scheme) {
  if (ctx.check_point) ctx.check_point(x);
  DerivativeCache cache(f, std::vector<double>(x.begin(), x.end()), scheme);
  return apply_numeric(op, cache, ctx);
}

ProbeFunction ProbeFunction::random(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ProbeFunction p;
  for (int a = 0; a < dim; ++a) p.center_.push_back(0.5 * u(rng));
  p.scale_ = 1.25 + 0.25 * u(rng);
  p.c0_ = 1.0 + 0.5 * u(rng);
  for (int a = 0; a < dim; ++a) p.c1_.push_back(0.5 * u(rng));
  for (int a = 0; a < dim * dim; ++a) p.c2_.push_back(0.25 * u(rng));
  return p;
}

double ProbeFunction::operator()(std::span<const double> x) const {
  const std::size_t D = center_.size();
  double r2 = 0, poly = c0_;
  for (std::size_t a = 0; a < D; ++a) {
    const double d = x[a] - center_[a];
    r2 += d * d;
    poly += c1_[a] * x[a];
    for (std::size_t b = a; b < D; ++b) poly += c2_[a * D + b] * x[a] * x[b];
  }
  return poly * std::exp(-r2 / (scale_ * scale_));
}

ScalarField ProbeFunction::field() const {
  return [p = *this](std::span<const double> x) { return p(x); };
}

std::vector<std::vector<double>> sample_points(const NumericContext& ctx, int dim, int count, std::mt19937_64& rng,
                                               double box) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<std::vector<double>> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * (count + 1)) throw Error(ErrorKind::singular_sample, "no admissible sample points");
    std::vector<double> x(dim);
    for (auto& v : x) v = u(rng);
    try {
      if (ctx.check_point) ctx.check_point(x);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::singular_sample) continue;
      throw;
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

ResidualStats summarize_samples(std::vector<double> v) {
  ResidualStats s;
  s.samples = v.size();
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.max = v.back();
  s.median = v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  return s;
}

}  // namespace

NumericRelationResult relation_residual_numeric(const Relation& rel, Evaluator& ev, const NumericContext& ctx,
                                                int dim, const NumericOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<int, DiffOp>> terms;
  for (const auto& [sign, e] : additive_terms(rel.lhs)) terms.emplace_back(sign, ev.eval(e));
  for (const auto& [sign, e] : additive_terms(rel.rhs)) terms.emplace_back(-sign, ev.eval(e));

  std::mt19937_64 rng(opt.seed);
  std::vector<double> residuals;
  for (int p = 0; p < opt.probes; ++p) {
    const ProbeFunction probe = ProbeFunction::random(dim, rng);
    const auto points = sample_points(ctx, dim, opt.points, rng, opt.box);
    for (const auto& x : points) {
      DerivativeCache cache(probe.field(), x, opt.scheme);
      double sum = 0, biggest = 0;
      for (const auto& [sign, op] : terms) {
        const double v = sign * apply_numeric(op, cache, ctx);
        sum += v;
        biggest = std::max(biggest, std::abs(v));
      }
      residuals.push_back(std::abs(sum) / (1 + biggest));
    }
  }
  NumericRelationResult r;
  r.name = rel.name;
  r.group = rel.group;
  r.expect = rel.expect;
  r.stats = summarize_samples(residuals);
  switch (rel.expect) {
    case Expectation::zero: r.pass = r.stats.max <= opt.tol; break;
    case Expectation::nonzero: r.pass = r.stats.max >= opt.nonzero_threshold; break;
    case Expectation::report: r.pass = true; break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool NumericReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

NumericReport verify_numeric(const RelationSet& rs, const NumericContext& ctx, int dim, const NumericOptions& opt,
                             int jobs) {
  NumericReport rep;
  rep.catalog = rs.catalog;
  rep.results.resize(rs.relations.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    Evaluator ev(*rs.resolver, rs.definitions);
    try {
      for (std::size_t i = next++; i < rs.relations.size(); i = next++) {
        try {
          rep.results[i] = relation_residual_numeric(rs.relations[i], ev, ctx, dim, opt);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::invalid_integral && e.kind() != ErrorKind::invalid_index) throw;
          auto& r = rep.results[i];
          r.name = rs.relations[i].name;
          r.group = rs.relations[i].group;
          r.expect = rs.relations[i].expect;
          r.unresolved = true;
          r.note = e.what();
          r.pass = r.expect == Expectation::report;
        }
      }
    } catch (...) {
      std::lock_guard lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return rep;
}

namespace {

std::vector<double> tridiagonal_lowest(const Eigensolve1DProblem& p, int interior) {
  std::vector<double> d(interior), e(std::max(interior - 1, 1));
  if (p.sqrt_origin) {
    // -(r v')'/r + (V + 1/(4 r^2)) v, cells centred at (j+1/2) h, no flux
    // through r = 0, v = 0 at r = L by an odd ghost cell; symmetrized by sqrt(r)
    const double h = p.length / interior;
    for (int j = 0; j < interior; ++j) {
      const double r = (j + 0.5) * h, rm = j * h, rp = (j + 1) * h;
      const double v = p.potential(r);
      if (!std::isfinite(v)) throw Error(ErrorKind::oracle_unconverged, "potential not finite on the grid");
      const double flux = rm + (j == interior - 1 ? 2 * rp : rp);
      d[j] = flux / (h * h * r) + v + 0.25 / (r * r);
      if (j + 1 < interior) e[j] = -rp / (h * h * std::sqrt(r * (r + h)));
    }
  } else {
    const double h = p.length / (interior + 1);
    std::fill(e.begin(), e.end(), -1.0 / (h * h));
    for (int j = 0; j < interior; ++j) {
      const double v = p.potential((j + 1) * h);
      if (!std::isfinite(v)) throw Error(ErrorKind::oracle_unconverged, "potential not finite on the grid");
      d[j] = 2.0 / (h * h) + v;
    }
  }
  std::vector<double> w(interior);
  std::vector<lapack_int> iblock(interior), isplit(interior);
  lapack_int found = 0, nsplit = 0;
  const lapack_int info = LAPACKE_dstebz('I', 'E', interior, 0.0, 0.0, 1, p.count, 0.0, d.data(), e.data(),
                                         &found, &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found < p.count)
    throw Error(ErrorKind::oracle_unconverged, "tridiagonal eigenvalue bisection failed");
  return std::vector<double>(w.begin(), w.begin() + p.count);
}

}  // namespace

std::vector<double> eigensolve_1d(const Eigensolve1DProblem& p) {
  if (p.length <= 0) throw Error(ErrorKind::usage, "eigensolve_1d: length must be positive");
  if (p.grid < 200) throw Error(ErrorKind::usage, "eigensolve_1d: grid must be >= 200");
  if (p.count < 1 || p.count > p.grid) throw Error(ErrorKind::usage, "eigensolve_1d: bad eigenvalue count");
  int interior = p.grid;
  std::vector<double> coarse = tridiagonal_lowest(p, interior);
  std::vector<double> prev;
  for (int k = 0; k < p.max_doublings; ++k) {
    interior = p.sqrt_origin ? 2 * interior : 2 * interior + 1;  // halves the step exactly
    std::vector<double> fine = tridiagonal_lowest(p, interior);
    std::vector<double> extrap(p.count);
    for (int i = 0; i < p.count; ++i) extrap[i] = (4 * fine[i] - coarse[i]) / 3;
    if (!prev.empty()) {
      bool done = true;
      for (int i = 0; i < p.count; ++i)
        if (std::abs(extrap[i] - prev[i]) > p.tol * std::max(std::abs(extrap[i]), 1e-12)) done = false;
      if (done) return extrap;
    }
    prev = std::move(extrap);
    coarse = std::move(fine);
  }
  throw Error(ErrorKind::oracle_unconverged, "eigenvalues did not converge after grid doubling");
}

}  // namespace blocksep
