#include "sealoss/fit_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;

std::vector<double> SampleSet::distances() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.distance);
  return out;
}

std::vector<double> SampleSet::losses() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.loss);
  return out;
}

LogDistanceFit fit_log_distance(const SampleSet& set, double d_0) {
  if (!(d_0 > 0.0)) fail(ErrorCode::InvalidArgument, "reference distance must be positive");
  const std::size_t n = set.samples.size();
  if (n < 2) fail(ErrorCode::DegenerateFit, "at least two samples are required");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : set.samples) {
    if (!(s.distance > 0.0)) fail(ErrorCode::InvalidArgument, "sample distances must be positive");
    mean_x += 10.0 * std::log10(s.distance / d_0);
    mean_y += s.loss;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : set.samples) {
    const double dx = 10.0 * std::log10(s.distance / d_0) - mean_x;
    sxx += dx * dx;
    sxy += dx * (s.loss - mean_y);
  }
  const auto [lo, hi] = std::minmax_element(
      set.samples.begin(), set.samples.end(),
      [](const Sample& a, const Sample& b) { return a.distance < b.distance; });
  if (lo->distance == hi->distance || !(sxx > 0.0)) {
    fail(ErrorCode::DegenerateFit, "all sample distances are equal");
  }

  LogDistanceFit fit;
  fit.params.d_0 = d_0;
  fit.params.n = sxy / sxx;
  fit.params.l_p0 = mean_y - fit.params.n * mean_x;
  fit.n_samples = n;

  double ssr = 0.0;
  for (const auto& s : set.samples) {
    const double r = s.loss - log_distance_loss(s.distance, fit.params);
    ssr += r * r;
  }
  if (n > 2) {
    const double s2 = ssr / static_cast<double>(n - 2);
    fit.residual_std = std::sqrt(s2);
    fit.n_standard_error = std::sqrt(s2 / sxx);
  } else {
    fit.residual_std = 0.0;
    fit.n_standard_error = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

namespace {

void check_pair(std::span<const double> predicted, std::span<const double> measured) {
  if (predicted.size() != measured.size()) {
    fail(ErrorCode::LengthMismatch, "predicted and measured differ in length");
  }
  if (predicted.empty()) fail(ErrorCode::LengthMismatch, "empty vectors");
}

}  // namespace

double rmse(std::span<const double> predicted, std::span<const double> measured) {
  check_pair(predicted, measured);
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - measured[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(predicted.size()));
}

double mae(std::span<const double> predicted, std::span<const double> measured) {
  check_pair(predicted, measured);
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) sum += std::abs(predicted[i] - measured[i]);
  return sum / static_cast<double>(predicted.size());
}

double mean_error(std::span<const double> predicted, std::span<const double> measured) {
  check_pair(predicted, measured);
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) sum += predicted[i] - measured[i];
  return sum / static_cast<double>(predicted.size());
}

ErrorReport::ErrorReport(std::string model_id, double rmse, double mae, double bias,
                         std::size_t n_samples, std::size_t n_excluded)
    : model_id_(std::move(model_id)),
      rmse_(rmse),
      mae_(mae),
      bias_(bias),
      n_samples_(n_samples),
      n_excluded_(n_excluded) {
  if (n_samples == 0) fail(ErrorCode::InvalidArgument, "error report needs samples");
  if (!(mae >= 0.0) || rmse < mae * (1.0 - 1e-12)) {
    fail(ErrorCode::InvalidArgument, "rmse must be >= mae >= 0");
  }
}

SampleSet bin_samples(const SampleSet& set, std::size_t bins) {
  if (bins == 0 || set.samples.empty()) return set;
  const auto [lo_it, hi_it] = std::minmax_element(
      set.samples.begin(), set.samples.end(),
      [](const Sample& a, const Sample& b) { return a.distance < b.distance; });
  const double lo = lo_it->distance;
  const double hi = hi_it->distance;
  SampleSet out;
  out.source_id = set.source_id + "/binned" + std::to_string(bins);
  if (lo == hi) {
    double sum = 0.0;
    for (const auto& s : set.samples) sum += s.loss;
    out.samples.push_back({lo, sum / static_cast<double>(set.samples.size())});
    return out;
  }
  std::vector<double> sum_d(bins, 0.0);
  std::vector<double> sum_l(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  const double span = std::log(hi / lo);
  for (const auto& s : set.samples) {
    auto idx = static_cast<std::size_t>(std::log(s.distance / lo) / span * static_cast<double>(bins));
    idx = std::min(idx, bins - 1);
    sum_d[idx] += s.distance;
    sum_l[idx] += s.loss;
    ++count[idx];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const auto c = static_cast<double>(count[b]);
    out.samples.push_back({sum_d[b] / c, sum_l[b] / c});
  }
  return out;
}

ModelComparison compare_models(const SampleSet& input, std::span<const ModelId> models,
                               const ModelContext& base, const CompareOptions& options) {
  if (input.samples.empty()) fail(ErrorCode::NoValidSamples, "no samples to compare against");
  if (models.empty()) fail(ErrorCode::InvalidArgument, "no models selected");

  const SampleSet set = bin_samples(input, options.bins);
  ModelContext ctx = base;
  const bool wants_log_distance =
      std::find(models.begin(), models.end(), ModelId::LogDistance) != models.end();
  std::string fit_failure;
  if (wants_log_distance && !ctx.log_distance) {
    try {
      ctx.log_distance = fit_log_distance(set, options.fit_reference_distance).params;
    } catch (const Error& e) {
      fit_failure = e.what();
    }
  }

  const std::vector<double> distances = set.distances();
  const std::vector<double> measured = set.losses();

  ModelComparison out;
  for (ModelId id : models) {
    if (id == ModelId::LogDistance && !ctx.log_distance) {
      out.failures.push_back({std::string(to_string(id)), fit_failure});
      continue;
    }
    ModelCurve curve = sweep(id, ctx, distances, options.threads);
    std::vector<double> matched;
    matched.reserve(curve.distances.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < distances.size() && j < curve.distances.size(); ++i) {
      if (distances[i] == curve.distances[j]) {
        matched.push_back(measured[i]);
        ++j;
      }
    }
    if (curve.losses.empty()) {
      out.failures.push_back({std::string(to_string(id)),
                              curve.skipped.empty() ? "no samples" : curve.skipped.front().reason});
      out.predictions.push_back(std::move(curve));
      continue;
    }
    out.reports.emplace_back(std::string(to_string(id)), rmse(curve.losses, matched),
                             mae(curve.losses, matched), mean_error(curve.losses, matched),
                             curve.losses.size(), curve.skipped.size());
    out.predictions.push_back(std::move(curve));
  }
  std::stable_sort(out.reports.begin(), out.reports.end(),
                   [](const ErrorReport& a, const ErrorReport& b) {
                     if (a.rmse() != b.rmse()) return a.rmse() < b.rmse();
                     return a.model_id() < b.model_id();
                   });
  return out;
}

}  // namespace sealoss
