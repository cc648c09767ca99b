#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sealoss/models.hpp"

namespace sealoss {

struct Sample {
  double distance;  // m
  double loss;      // dB
};

struct SampleSet {
  std::vector<Sample> samples;
  std::string source_id;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] std::vector<double> distances() const;
  [[nodiscard]] std::vector<double> losses() const;
};

struct LogDistanceFit {
  LogDistanceParams params;
  double n_standard_error = 0.0;   // NaN with only two samples
  double residual_std = 0.0;       // dB
  std::size_t n_samples = 0;
};

/// Ordinary least squares of loss against 10 log10(d / d_0).
/// Throws DegenerateFit when fewer than two distinct distances are present.
LogDistanceFit fit_log_distance(const SampleSet& samples, double d_0 = 100.0);

/// Root mean square of predicted - measured.
double rmse(std::span<const double> predicted, std::span<const double> measured);
/// Mean absolute value of predicted - measured.
double mae(std::span<const double> predicted, std::span<const double> measured);
/// Mean of predicted - measured.
double mean_error(std::span<const double> predicted, std::span<const double> measured);

/// One row of the model comparison table. rmse >= mae is checked on construction.
class ErrorReport {
 public:
  ErrorReport(std::string model_id, double rmse, double mae, double bias, std::size_t n_samples,
              std::size_t n_excluded);

  [[nodiscard]] const std::string& model_id() const { return model_id_; }
  [[nodiscard]] double rmse() const { return rmse_; }
  [[nodiscard]] double mae() const { return mae_; }
  [[nodiscard]] double bias() const { return bias_; }
  [[nodiscard]] std::size_t n_samples() const { return n_samples_; }
  [[nodiscard]] std::size_t n_excluded() const { return n_excluded_; }

 private:
  std::string model_id_;
  double rmse_;
  double mae_;
  double bias_;
  std::size_t n_samples_;
  std::size_t n_excluded_;
};

struct ModelFailure {
  std::string model_id;
  std::string reason;
};

struct ModelComparison {
  std::vector<ErrorReport> reports;   // sorted by RMSE, ties by model id
  std::vector<ModelFailure> failures; // models with no evaluable sample
  std::vector<ModelCurve> predictions;
};

struct CompareOptions {
  /// 0 compares raw samples; otherwise samples are averaged into this many
  /// log-spaced distance bins first.
  std::size_t bins = 0;
  /// Reference distance for the log-distance fit used when the context has no
  /// log-distance parameters.
  double fit_reference_distance = 100.0;
  unsigned threads = 1;
};

/// Averages samples into log-spaced distance bins; empty bins are dropped.
SampleSet bin_samples(const SampleSet& samples, std::size_t bins);

ModelComparison compare_models(const SampleSet& samples, std::span<const ModelId> models,
                               const ModelContext& ctx, const CompareOptions& options = {});

}  // namespace sealoss
