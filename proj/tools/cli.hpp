#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blocksep/error.hpp"
#include "blocksep/numerics.hpp"
#include "blocksep/spectra.hpp"

namespace blocksep::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Everything a run needs; filled from a config file and then from flags.
struct RunConfig {
  std::string command;
  ModelSpec model;
  bool model_given = false;
  std::vector<std::string> catalogs;
  std::string relations_file;
  std::string mode = "symbolic";
  /// Numeric values of symbolic parameters; missing ones get defaults.
  std::map<std::string, double> params;
  NumericOptions numeric;
  std::optional<double> tol;
  int jobs = 1;
  std::string out;
  int kmax = 2, nr_max = 2, j_max = 1;
  std::vector<std::vector<int>> levels;
  std::vector<int> k;
  int nr = 0;
  std::vector<int> J;
  int points = 10;
};

/// Applies a config document; unknown keys raise a usage error.
void apply_config_json(RunConfig& cfg, const json& doc);
ModelSpec model_from_json(const json& j);
json model_to_json(const ModelSpec& m);
/// Effective configuration, as echoed in reports.
json config_to_json(const RunConfig& cfg);

/// Default model for a catalog when none is configured: Model 1 of the
/// catalog's family on the given blocks.
ModelSpec default_model(const std::string& catalog, const std::vector<int>& blocks);

/// Parameter values for every symbolic parameter of `names`, falling back
/// to 0.75 + 0.25 * position for names without a configured value.
std::map<std::string, double> parameter_values(const RunConfig& cfg, const std::vector<std::string>& names);

bool has_model2(const ModelSpec& m);
/// Model 2 on block 1, zero potentials on the other blocks.
void place_model2(ModelSpec& m, const Model2Params& p);

/// Errors that mean the run could not be configured (exit 2).
bool is_config_error(ErrorKind kind);

struct RunResult {
  json report;
  std::string summary;
  /// 0 all pass, 1 some check failed.
  int exit_code = 0;
};

/// Each throws blocksep::Error for invalid configurations.
RunResult run_verify(const RunConfig& cfg);
RunResult run_spectrum(const RunConfig& cfg);
RunResult run_eigencheck(const RunConfig& cfg);

}  // namespace blocksep::cli
