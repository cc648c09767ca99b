#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sealoss/config.hpp"
#include "sealoss/errors.hpp"
#include "sealoss/models.hpp"

namespace sealoss {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitModelDomain = 3,
  kExitNoSamples = 4,
  kExitNoCoverage = 5,
};

int exit_code_for(ErrorCode code);

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;
  std::string report;
};

/// Explicit path, else $SEALOSS_CONFIG, else built-in defaults (campaign 2).
CampaignConfig resolve_config(const std::optional<std::filesystem::path>& path);

/// Empty list selects comparison_models().
std::vector<ModelId> parse_model_list(const std::vector<std::string>& names);

struct CurvesRequest {
  std::optional<std::filesystem::path> config;
  std::vector<std::string> models;
  double d_min = 100.0;
  double d_max = 10'000.0;
  std::size_t points = 200;
  Spacing spacing = Spacing::Log;
  std::filesystem::path out = "out";
  unsigned threads = 1;
};

struct AnalyzeRequest {
  std::optional<std::filesystem::path> config;
  std::filesystem::path log;
  std::optional<std::filesystem::path> calibration;
  std::vector<std::string> models;
  std::size_t bins = 0;
  std::filesystem::path out = "out";
  unsigned threads = 1;
};

struct RangeRequest {
  std::optional<std::filesystem::path> config;
  std::vector<std::string> models;
  std::optional<double> sensitivity;  // dBm, replaces the config value
  double cap = 100'000.0;             // m
  std::optional<std::filesystem::path> out;
};

struct SynthRequest {
  std::optional<std::filesystem::path> config;
  std::string model = "bullington";
  std::size_t samples = 325;
  double d_min = 200.0;
  double d_max = 9'800.0;
  double noise_sigma = 2.0;  // dB
  double bearing = 90.0;     // degrees from north
  std::uint64_t seed = 1;
  std::string start = "2019-08-14T09:00:00Z";
  double interval = 10.0;    // s between rows
  std::filesystem::path out = "log.csv";
};

CommandResult cmd_curves(const CurvesRequest& req);
CommandResult cmd_analyze(const AnalyzeRequest& req);
CommandResult cmd_range(const RangeRequest& req);
CommandResult cmd_synth(const SynthRequest& req);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace sealoss
