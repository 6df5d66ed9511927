// blocksep command-line front end.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

using namespace blocksep;
using namespace blocksep::cli;

namespace {

struct Flags {
  std::string config, blocks, family, levels, k, J, model2;
  std::vector<std::string> catalogs, params;
  std::string relations, mode, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> jobs, kmax, nr_max, j_max, nr, points, probes, fd_order;
};

std::vector<int> parse_ints(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::usage, what + ": '" + s + "' is not a list of integers");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::usage, what + " is empty");
  return out;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file");
  sub->add_option("--blocks", f.blocks, "Block sizes, e.g. 2,2");
  sub->add_option("--family", f.family, "oscillator or coulomb");
  sub->add_option("--model2", f.model2, "Model 2 potential A,B on block 1");
  sub->add_option("--param", f.params, "Parameter value name=value (repeatable)");
  sub->add_option("--mode", f.mode, "symbolic, numeric or both");
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_option("--tol", f.tol, "Tolerance");
  sub->add_option("--out", f.out, "Report path (JSON); the text summary goes to <out>.txt");
  sub->add_option("--jobs", f.jobs, "Worker threads");
  sub->add_option("--probes", f.probes, "Numeric probe functions");
  sub->add_option("--points", f.points, "Sample points");
  sub->add_option("--fd-order", f.fd_order, "Finite difference order");
}

void apply_flags(RunConfig& cfg, const Flags& f) {
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorKind::usage, "cannot read config '" + f.config + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::usage, std::string("config: ") + e.what());
    }
    apply_config_json(cfg, doc);
  }
  if (!f.catalogs.empty()) cfg.catalogs = f.catalogs;
  if (!f.relations.empty()) cfg.relations_file = f.relations;
  if (!f.blocks.empty() || !f.family.empty()) {
    const auto blocks = f.blocks.empty() ? cfg.model.partition.sizes() : parse_ints(f.blocks, "--blocks");
    const std::string fam = !f.family.empty() ? f.family
                            : cfg.model_given ? (cfg.model.family == Family::coulomb ? "coulomb" : "oscillator")
                                              : "";
    if (fam == "coulomb")
      cfg.model = ModelSpec::coulomb_model1(blocks);
    else if (fam == "oscillator" || fam.empty())
      cfg.model = ModelSpec::oscillator_model1(blocks);
    else
      throw Error(ErrorKind::usage, "unknown family '" + fam + "'");
    cfg.model_given = cfg.model_given || !fam.empty();
  }
  if (!f.model2.empty()) {
    const auto ab = parse_ints(f.model2, "--model2");
    if (ab.size() != 2) throw Error(ErrorKind::usage, "--model2 needs A,B");
    place_model2(cfg.model, {Rational(ab[0]), Rational(ab[1])});
    cfg.model_given = true;
  }
  for (const auto& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::usage, "--param expects name=value");
    try {
      cfg.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::usage, "--param '" + p + "' has no numeric value");
    }
  }
  if (!f.mode.empty()) cfg.mode = f.mode;
  if (f.seed) cfg.numeric.seed = *f.seed;
  if (f.tol) {
    cfg.tol = *f.tol;
    cfg.numeric.tol = *f.tol;
  }
  if (cfg.tol && *cfg.tol <= 0) throw Error(ErrorKind::usage, "tolerances must be positive");
  if (f.jobs) cfg.jobs = *f.jobs;
  if (!f.out.empty()) cfg.out = f.out;
  if (f.kmax) cfg.kmax = *f.kmax;
  if (f.nr_max) cfg.nr_max = *f.nr_max;
  if (f.j_max) cfg.j_max = *f.j_max;
  if (f.nr) cfg.nr = *f.nr;
  if (f.probes) cfg.numeric.probes = *f.probes;
  if (f.fd_order) cfg.numeric.scheme.order = *f.fd_order;
  if (f.points) {
    cfg.points = *f.points;
    cfg.numeric.points = *f.points;
  }
  if (!f.k.empty()) cfg.k = parse_ints(f.k, "--k");
  if (!f.J.empty()) cfg.J = parse_ints(f.J, "--J");
  if (!f.levels.empty()) {
    cfg.levels.clear();
    std::stringstream ss(f.levels);
    std::string block;
    while (std::getline(ss, block, '|')) cfg.levels.push_back(parse_ints(block, "--levels"));
  }
}

void write_outputs(const RunConfig& cfg, const json& report, const std::string& summary) {
  std::cout << summary;
  const std::string path = cfg.out.empty() ? "blocksep-" + cfg.command + ".json" : cfg.out;
  std::ofstream js(path);
  js << report.dump(2) << "\n";
  std::ofstream txt(path + ".txt");
  txt << summary;
  if (!js || !txt) std::cerr << "blocksep: could not write report to " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blocksep: block-separated superintegrable systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "Check operator relations");
  add_common(verify, f);
  verify->add_option("--catalog", f.catalogs, "Relation catalog (repeatable)");
  verify->add_option("--relations", f.relations, "Relation file");

  auto* spectrum = app.add_subcommand("spectrum", "Tabulate printed and oracle energies");
  add_common(spectrum, f);
  spectrum->add_option("--kmax", f.kmax, "Bound on the sum of k_i");
  spectrum->add_option("--nr-max", f.nr_max, "Bound on N_r");
  spectrum->add_option("--j-max", f.j_max, "Bound on every J_s");
  spectrum->add_option("--levels", f.levels, "Angular levels per block, blocks separated by |");

  auto* eigen = app.add_subcommand("eigencheck", "Residual check of an assembled eigenfunction");
  add_common(eigen, f);
  eigen->add_option("--levels", f.levels, "Angular levels per block, blocks separated by |");
  eigen->add_option("--k", f.k, "Radial k_i per block");
  eigen->add_option("--nr", f.nr, "Radial N_r");
  eigen->add_option("--J", f.J, "J_1..J_{N-1}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  cfg.model = ModelSpec::oscillator_model1({2, 2});
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    apply_flags(cfg, f);
    cfg.command = app.get_subcommands().front()->get_name();
    RunResult res = cfg.command == "verify"     ? run_verify(cfg)
                    : cfg.command == "spectrum" ? run_spectrum(cfg)
                                                : run_eigencheck(cfg);
    write_outputs(cfg, res.report, res.summary);
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << "blocksep: " << e.what() << "\n";
    const bool config = is_config_error(e.kind());
    if (!config) {
      json report{{"artifact", "blocksep"},
                  {"version", kVersion},
                  {"command", cfg.command},
                  {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
                  {"summary", {{"checks", 0}, {"failures", 1}, {"pass", false}}}};
      write_outputs(cfg, report, std::string("error: ") + e.what() + "\n");
    }
    return config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "blocksep: " << e.what() << "\n";
    return 2;
  }
}
