#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sealoss/errors.hpp"
#include "sealoss/propagation.hpp"

namespace sealoss {

enum class ModelId {
  FreeSpace,
  TwoRayFlat,
  TwoRayRoundEarth,
  Rel,
  Bullington,
  Itu,
  LogDistance,
};

std::string_view to_string(ModelId id);
/// Accepts the identifiers printed by to_string (e.g. "free_space", "rel").
ModelId parse_model_id(std::string_view name);
/// free_space, rel, bullington, itu, log_distance.
std::vector<ModelId> comparison_models();
std::vector<ModelId> all_models();

/// Everything a model needs besides the distance.
struct ModelContext {
  double tx_height = 0.35;
  double rx_height = 5.2;
  double frequency = 869.5e6;
  EarthModel earth;
  SeaState sea;
  Polarization polarization = Polarization::Vertical;
  ReflectionOptions reflection;
  ItuParams itu;
  std::optional<LogDistanceParams> log_distance;

  [[nodiscard]] LinkGeometry geometry(double distance) const {
    return {tx_height, rx_height, distance, earth};
  }
};

/// Path loss (dB) of one model at one distance. Domain errors are thrown.
double evaluate(ModelId id, const ModelContext& ctx, double distance);

/// Advisory flags attached to a model's output (ceiling warnings, T_pc).
std::vector<std::string> model_notes(ModelId id, const ModelContext& ctx);

enum class Spacing { Linear, Log };
Spacing parse_spacing(std::string_view name);
std::string_view to_string(Spacing s);

std::vector<double> distance_grid(double d_min, double d_max, std::size_t n_points,
                                  Spacing spacing);

struct SkippedPoint {
  double distance;
  ErrorCode code;
  std::string reason;
};

/// A model evaluated on a grid; points the model cannot evaluate are listed in
/// `skipped` and absent from distances/losses.
struct ModelCurve {
  ModelId model;
  std::vector<double> distances;
  std::vector<double> losses;
  std::vector<SkippedPoint> skipped;
};

/// Evaluates `id` at each grid distance. With threads > 1 the grid is split
/// into contiguous chunks; output is identical for any thread count.
ModelCurve sweep(ModelId id, const ModelContext& ctx, std::span<const double> grid,
                 unsigned threads = 1);
ModelCurve sweep(ModelId id, const ModelContext& ctx, double d_min, double d_max,
                 std::size_t n_points, Spacing spacing, unsigned threads = 1);

struct RangeResult {
  double distance;   // m; equals the cap when `capped`
  bool capped;       // the budget still holds at the cap
  double budget;     // dB
};

/// Largest distance where tx power + gains - polarization loss - loss(d) stays
/// at or above the sensitivity. A log-spaced scan locates the last covered
/// sample, then bisection refines the crossing. Throws NoCoverage when even
/// `d_floor` fails.
RangeResult max_range(ModelId id, const ModelContext& ctx, const RadioConfig& radio,
                      double cap = 100'000.0, double d_floor = 1.0);

}  // namespace sealoss
