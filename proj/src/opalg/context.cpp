#include "blocksep/opalg/context.hpp"

#include <algorithm>

#include "blocksep/error.hpp"

namespace blocksep::opalg {

Context::Builder::Builder(int coords, std::vector<std::string> coord_names)
    : coords_(coords), coord_names_(std::move(coord_names)) {
  if (coords < 1 || coords > kMaxCoords)
    throw Error(ErrorKind::context_mismatch, "coordinate count out of range");
  if (coord_names_.empty())
    for (int i = 0; i < coords; ++i) coord_names_.push_back("x" + std::to_string(i + 1));
  if (static_cast<int>(coord_names_.size()) != coords)
    throw Error(ErrorKind::context_mismatch, "coordinate name count mismatch");
}

Context::Builder& Context::Builder::param(const std::string& name) {
  if (std::find(params_.begin(), params_.end(), name) != params_.end())
    throw Error(ErrorKind::context_mismatch, "duplicate parameter '" + name + "'");
  params_.push_back(name);
  return *this;
}

Context::Builder& Context::Builder::atom(std::vector<int> support) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) throw Error(ErrorKind::context_mismatch, "empty atom support");
  for (int c : support)
    if (c < 0 || c >= coords_) throw Error(ErrorKind::context_mismatch, "atom support out of range");
  if (std::find(atoms_.begin(), atoms_.end(), support) == atoms_.end()) atoms_.push_back(support);
  return *this;
}

Context::Builder& Context::Builder::radical(const std::string& name, std::vector<int> support) {
  std::sort(support.begin(), support.end());
  if (support.size() < 2)
    throw Error(ErrorKind::context_mismatch,
                "radical '" + name + "' needs at least two coordinates in its support");
  atom(support);
  radicals_.emplace_back(name, support);
  return *this;
}

Context::Builder& Context::Builder::angle_function(const std::string& name, int sin_coord,
                                                   int cos_coord, int jets) {
  if (sin_coord == cos_coord) throw Error(ErrorKind::context_mismatch, "degenerate angle plane");
  atom({sin_coord, cos_coord});
  functions_.push_back({name, sin_coord, cos_coord, jets});
  return *this;
}

ContextPtr Context::Builder::build() {
  auto ctx = std::shared_ptr<Context>(new Context());
  ctx->coords_ = coords_;
  for (const auto& n : coord_names_) {
    ctx->var_names_.push_back(n);
    ctx->var_kinds_.push_back(VarKind::coord);
  }
  for (const auto& p : params_) {
    ctx->param_names_.push_back(p);
    ctx->param_vars_.push_back(static_cast<int>(ctx->var_names_.size()));
    ctx->var_names_.push_back(p);
    ctx->var_kinds_.push_back(VarKind::param);
  }
  if (static_cast<int>(atoms_.size()) > kMaxAtoms)
    throw Error(ErrorKind::context_mismatch, "too many denominator atoms");
  for (const auto& s : atoms_) {
    ctx->atoms_.push_back({s});
    ctx->atom_polys_.push_back(s.size() == 1 ? Poly::variable(s[0]) : ctx->sum_of_squares(s));
  }
  for (const auto& [name, support] : radicals_) {
    Radical r;
    r.name = name;
    r.support = support;
    r.atom = *ctx->find_atom(support);
    r.var = static_cast<int>(ctx->var_names_.size());
    ctx->var_names_.push_back(name);
    ctx->var_kinds_.push_back(VarKind::radical);
    ctx->radicals_.push_back(r);
  }
  for (const auto& fn : functions_) {
    AngleFunction f;
    f.name = fn.name;
    f.sin_coord = fn.s;
    f.cos_coord = fn.c;
    f.atom = *ctx->find_atom({fn.s, fn.c});
    f.first_var = static_cast<int>(ctx->var_names_.size());
    f.jets = fn.jets;
    for (int k = 0; k < fn.jets; ++k) {
      ctx->var_names_.push_back(k == 0 ? fn.name : fn.name + "_" + std::to_string(k));
      ctx->var_kinds_.push_back(VarKind::jet);
    }
    ctx->functions_.push_back(f);
  }
  if (ctx->num_vars() > kMaxVars) throw Error(ErrorKind::context_mismatch, "too many ring variables");
  ctx->power_cache_.resize(ctx->atoms_.size());
  return ctx;
}

std::optional<int> Context::param_var(const std::string& name) const {
  for (std::size_t i = 0; i < param_names_.size(); ++i)
    if (param_names_[i] == name) return param_vars_[i];
  return std::nullopt;
}

int Context::require_param(const std::string& name) const {
  auto v = param_var(name);
  if (!v) throw Error(ErrorKind::undeclared_param, "parameter '" + name + "' is not declared");
  return *v;
}

std::optional<int> Context::find_atom(std::vector<int> support) const {
  std::sort(support.begin(), support.end());
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].support == support) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Context::find_radical(const std::string& name) const {
  for (std::size_t i = 0; i < radicals_.size(); ++i)
    if (radicals_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Context::find_angle_function(const std::string& name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

Poly Context::sum_of_squares(const std::vector<int>& support) const {
  std::vector<Term> terms;
  for (int c : support) {
    Mono m;
    m.e.at(c) = 2;
    terms.push_back({m, 1});
  }
  return Poly::from_terms(std::move(terms));
}

const Poly& Context::atom_power(int atom, int k) const {
  std::lock_guard lock(cache_mutex_);
  auto& cache = power_cache_.at(atom);
  if (cache.empty()) cache.push_back(Poly::constant(1));
  while (static_cast<int>(cache.size()) <= k)
    cache.push_back(Poly::mul_plain(cache.back(), atom_polys_[atom]));
  return cache[k];
}

std::string Context::atom_name(int atom) const {
  const auto& s = atoms_.at(atom).support;
  if (s.size() == 1) return var_names_[s[0]];
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "+";
    out += var_names_[s[i]] + "^2";
  }
  return out + ")";
}

}  // namespace blocksep::opalg
