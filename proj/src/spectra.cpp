#include "blocksep/spectra.hpp"

#include <cmath>
#include <functional>

#include "blocksep/error.hpp"

namespace blocksep {

namespace {

double coupling_value(const SpectrumQuery& q) {
  const Scalar& s = q.model.coupling;
  if (!s.symbolic()) return to_double(*s.value);
  auto it = q.params.find(s.symbol);
  if (it == q.params.end()) throw Error(ErrorKind::undeclared_param, "no value for parameter '" + s.symbol + "'");
  return it->second;
}

double omega_of(const SpectrumQuery& q) {
  const double w2 = coupling_value(q);
  if (w2 <= 0) throw Error(ErrorKind::inadmissible, "omega^2 must be positive");
  return std::sqrt(w2);
}

std::vector<double> block_lambdas(const SpectrumQuery& q) {
  const Partition& part = q.model.partition;
  if (static_cast<int>(q.levels.size()) != part.blocks())
    throw Error(ErrorKind::inadmissible, "need level numbers for every block");
  std::vector<double> out;
  for (int i = 1; i <= part.blocks(); ++i) {
    const AngularPotentialSpec pot = i <= static_cast<int>(q.model.potentials.size()) ? q.model.potentials[i - 1]
                                                                                      : AngularPotentialSpec::zero();
    out.push_back(lambda_chain(pot, part.size(i), q.levels[i - 1], q.params));
  }
  return out;
}

double discriminant(double lambda, int d) { return 1 + 4 * lambda + (d - 1) * (d - 3); }

void check_k(const SpectrumQuery& q) {
  if (static_cast<int>(q.k.size()) != q.model.partition.blocks())
    throw Error(ErrorKind::inadmissible, "need one k per block");
  for (int k : q.k)
    if (k < 0) throw Error(ErrorKind::inadmissible, "k_i must be non-negative");
}

void check_coulomb(const SpectrumQuery& q) {
  if (q.model.family != Family::coulomb) throw Error(ErrorKind::inadmissible, "not a Coulomb model");
  if (static_cast<int>(q.J.size()) != q.model.partition.blocks() - 1)
    throw Error(ErrorKind::inadmissible, "need J_1..J_{N-1}");
  if (q.Nr < 0) throw Error(ErrorKind::inadmissible, "N_r must be non-negative");
  for (int j : q.J)
    if (j < 0) throw Error(ErrorKind::inadmissible, "J_s must be non-negative");
}

}  // namespace

LinearForm LinearForm::scaled(const Rational& s) const {
  LinearForm out{c0 * s, gamma};
  for (auto& g : out.gamma) g *= s;
  return out;
}

bool operator==(const LinearForm& a, const LinearForm& b) { return a.c0 == b.c0 && a.gamma == b.gamma; }

double LinearForm::eval(std::span<const double> gammas) const {
  double v = to_double(c0);
  for (std::size_t i = 0; i < gamma.size(); ++i) v += to_double(gamma[i]) * gammas[i];
  return v;
}

double lambda_chain(const AngularPotentialSpec& pot, int d, const std::vector<int>& levels,
                    const std::map<std::string, double>& params) {
  return block_angular(pot, d, levels, params).lambda;
}

std::vector<double> oscillator_gammas(const SpectrumQuery& q) {
  const auto lam = block_lambdas(q);
  std::vector<double> g;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double disc = discriminant(lam[i], q.model.partition.size(static_cast<int>(i) + 1));
    if (disc < 0) throw Error(ErrorKind::inadmissible, "negative discriminant for gamma_" + std::to_string(i + 1));
    g.push_back(0.5 * (1 + std::sqrt(disc)));
  }
  return g;
}

std::pair<LinearForm, LinearForm> oscillator_energy_forms(const SpectrumQuery& q) {
  check_k(q);
  const int N = q.model.partition.blocks();
  Rational sumk(0);
  for (int k : q.k) sumk += k;
  LinearForm printed{2 * sumk + Rational(N) / 2, std::vector<Rational>(N, Rational(1))};
  LinearForm oracle{Rational(0), std::vector<Rational>(N, Rational(0))};
  for (int i = 0; i < N; ++i) {
    oracle.c0 += 4 * q.k[i] + 1;
    oracle.gamma[i] += 2;
  }
  return {printed, oracle};
}

double oscillator_energy_printed(const SpectrumQuery& q) {
  const auto g = oscillator_gammas(q);
  return omega_of(q) * oscillator_energy_forms(q).first.eval(g);
}

double oscillator_energy_oracle(const SpectrumQuery& q) {
  const auto g = oscillator_gammas(q);
  return omega_of(q) * oscillator_energy_forms(q).second.eval(g);
}

double oscillator_energy_eigensolve(const SpectrumQuery& q) {
  check_k(q);
  const double w = omega_of(q);
  const auto lam = block_lambdas(q);
  double total = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const int d = q.model.partition.size(static_cast<int>(i) + 1);
    const double c = lam[i] + (d - 1) * (d - 3) / 4.0;
    Eigensolve1DProblem p;
    p.potential = [w, c](double r) { return w * w * r * r + c / (r * r); };
    const double scale = 4.0 * q.k[i] + 2 * std::sqrt(std::max(c, 0.0)) + 3;
    p.length = (std::sqrt(scale) + 6) / std::sqrt(w);
    p.grid = 400;
    p.count = q.k[i] + 1;
    p.sqrt_origin = std::abs(c + 0.25) < 1e-12;
    total += eigensolve_1d(p)[q.k[i]];
  }
  return total;
}

std::vector<double> coulomb_gammas(const SpectrumQuery& q) {
  const auto lam = block_lambdas(q);
  std::vector<double> g;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double disc = discriminant(lam[i], q.model.partition.size(static_cast<int>(i) + 1));
    if (disc < 0) throw Error(ErrorKind::inadmissible, "negative discriminant for gamma_" + std::to_string(i + 1));
    g.push_back(0.5 * std::sqrt(disc));
  }
  return g;
}

LinearForm coulomb_kappa_form(const SpectrumQuery& q) {
  check_coulomb(q);
  const int N = q.model.partition.blocks();
  // kappa_i = 2 sum_{s<=i} J_s + i + sum_{s<=i+1} gamma_s, kappa_0 = gamma_1
  LinearForm kappa{Rational(0), std::vector<Rational>(N, Rational(0))};
  kappa.gamma[0] = 1;
  for (int i = 1; i <= N - 1; ++i) {
    kappa.c0 += 2 * q.J[i - 1] + 1;
    kappa.gamma[i] = 1;
  }
  kappa.c0 += Rational(1, 2);
  return kappa;
}

std::pair<LinearForm, LinearForm> coulomb_denominator_forms(const SpectrumQuery& q) {
  check_coulomb(q);
  const int N = q.model.partition.blocks();
  Rational sumJ(0);
  for (int j : q.J) sumJ += j;
  LinearForm printed{2 * q.Nr + 4 * sumJ + 2 * N - 1, std::vector<Rational>(N, Rational(2))};
  LinearForm kappa = coulomb_kappa_form(q);
  kappa.c0 += q.Nr;
  return {printed, kappa.scaled(2)};
}

double coulomb_energy(const SpectrumQuery& q) {
  const auto g = coulomb_gammas(q);
  const double den = coulomb_denominator_forms(q).first.eval(g);
  if (den == 0) throw Error(ErrorKind::inadmissible, "zero Coulomb denominator");
  const double eta = coupling_value(q);
  return -eta * eta / (den * den);
}

double coulomb_energy_eigensolve(const SpectrumQuery& q) {
  const auto g = coulomb_gammas(q);
  const double kappa = coulomb_kappa_form(q).eval(g);
  const double eta = coupling_value(q);
  if (eta <= 0) throw Error(ErrorKind::inadmissible, "eta must be positive for bound states");
  const double n = q.Nr + kappa;
  const double decay = eta / (2 * n);
  Eigensolve1DProblem p;
  p.potential = [kappa, eta](double r) { return kappa * (kappa - 1) / (r * r) - eta / r; };
  p.length = (40 + 2 * n) / decay;
  p.grid = 2000;
  p.count = q.Nr + 1;
  return eigensolve_1d(p)[q.Nr];
}

SpectrumResult adjudicate(const SpectrumQuery& q, double tol) {
  SpectrumResult r;
  if (q.model.family == Family::oscillator) {
    const auto [printed, oracle] = oscillator_energy_forms(q);
    r.printed_value = oscillator_energy_printed(q);
    r.oracle_value = oscillator_energy_oracle(q);
    if (oracle == printed.scaled(2)) r.exact_ratio = Rational(2);
    r.numeric_value = oscillator_energy_eigensolve(q);
  } else {
    const auto [printed, twice] = coulomb_denominator_forms(q);
    r.printed_value = coulomb_energy(q);
    const double kappa = coulomb_kappa_form(q).eval(coulomb_gammas(q));
    const double eta = coupling_value(q);
    r.oracle_value = -eta * eta / (4 * (q.Nr + kappa) * (q.Nr + kappa));
    if (printed == twice) r.exact_ratio = Rational(1);
    r.numeric_value = coulomb_energy_eigensolve(q);
  }
  r.ratio = r.oracle_value / r.printed_value;
  r.numeric_rel_error = std::abs(r.numeric_value - r.oracle_value) / std::abs(r.oracle_value);
  r.agree = r.numeric_rel_error <= tol;
  return r;
}

std::vector<SpectrumQuery> enumerate_oscillator(const SpectrumQuery& base, int kmax) {
  const int N = base.model.partition.blocks();
  std::vector<SpectrumQuery> out;
  for (int total = 0; total <= kmax; ++total) {
    // compositions of total into N parts, first part descending
    std::vector<int> k(N, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == N - 1) {
        k[i] = left;
        SpectrumQuery q = base;
        q.k = k;
        out.push_back(std::move(q));
        return;
      }
      for (int v = left; v >= 0; --v) {
        k[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, total);
  }
  return out;
}

std::vector<SpectrumQuery> enumerate_coulomb(const SpectrumQuery& base, int nr_max, int j_max) {
  const int M = base.model.partition.blocks() - 1;
  std::vector<SpectrumQuery> out;
  std::vector<int> J(M, 0);
  while (true) {
    for (int nr = 0; nr <= nr_max; ++nr) {
      SpectrumQuery q = base;
      q.J = J;
      q.Nr = nr;
      out.push_back(std::move(q));
    }
    int i = 0;
    while (i < M && J[i] == j_max) J[i++] = 0;
    if (i == M) break;
    ++J[i];
  }
  return out;
}

}  // namespace blocksep
