#include "sealoss/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>
#include <utility>

namespace sealoss {

using detail::fail;

namespace {

constexpr std::array<std::pair<ModelId, std::string_view>, 7> kModelNames{{
    {ModelId::FreeSpace, "free_space"},
    {ModelId::TwoRayFlat, "two_ray_flat"},
    {ModelId::TwoRayRoundEarth, "two_ray_round_earth"},
    {ModelId::Rel, "rel"},
    {ModelId::Bullington, "bullington"},
    {ModelId::Itu, "itu"},
    {ModelId::LogDistance, "log_distance"},
}};

}  // namespace

std::string_view to_string(ModelId id) {
  for (const auto& [model, name] : kModelNames) {
    if (model == id) return name;
  }
  return "unknown";
}

ModelId parse_model_id(std::string_view name) {
  for (const auto& [model, known] : kModelNames) {
    if (known == name) return model;
  }
  fail(ErrorCode::InvalidArgument, "unknown model '" + std::string(name) + "'");
}

std::vector<ModelId> comparison_models() {
  return {ModelId::FreeSpace, ModelId::Rel, ModelId::Bullington, ModelId::Itu,
          ModelId::LogDistance};
}

std::vector<ModelId> all_models() {
  std::vector<ModelId> out;
  for (const auto& entry : kModelNames) out.push_back(entry.first);
  return out;
}

double evaluate(ModelId id, const ModelContext& ctx, double distance) {
  const double f = ctx.frequency;
  switch (id) {
    case ModelId::FreeSpace:
      return free_space_loss(distance, f);
    case ModelId::TwoRayFlat:
      return two_ray_flat(distance, ctx.tx_height, ctx.rx_height, f, -1.0);
    case ModelId::TwoRayRoundEarth: {
      const LinkGeometry g = ctx.geometry(distance);
      return two_ray_round_earth(
          g, f, effective_reflection(g, f, ctx.sea, ctx.polarization, ctx.reflection));
    }
    case ModelId::Rel:
      return rel_loss(ctx.geometry(distance), f, ctx.sea, ctx.polarization, ctx.reflection);
    case ModelId::Bullington:
      return bullington_loss(ctx.geometry(distance), f, ctx.sea, ctx.polarization);
    case ModelId::Itu:
      return itu_p2001_reduced_loss(ctx.geometry(distance), f, ctx.itu, ctx.sea,
                                    ctx.polarization);
    case ModelId::LogDistance:
      if (!ctx.log_distance) {
        fail(ErrorCode::MissingParameters, "log-distance model needs fitted parameters");
      }
      return log_distance_loss(distance, *ctx.log_distance);
  }
  fail(ErrorCode::InvalidArgument, "unknown model");
}

std::vector<std::string> model_notes(ModelId id, const ModelContext& ctx) {
  std::vector<std::string> notes;
  if (id == ModelId::Bullington) {
    const LinkGeometry g = ctx.geometry(1.0);
    if (bullington_height_exceeded(g, ctx.frequency) &&
        bullington_ceiling_is_advisory(ctx.frequency)) {
      notes.emplace_back("antenna above the scaled height ceiling; ceiling is advisory off 868 MHz");
    }
  }
  if (id == ModelId::Itu) {
    notes.emplace_back("time_percentage=" + std::to_string(ctx.itu.time_percentage) +
                       " (median path only)");
  }
  if (id == ModelId::Rel && ctx.polarization == Polarization::Circular) {
    notes.emplace_back("circular polarization evaluated with the vertical Fresnel coefficient");
  }
  return notes;
}

Spacing parse_spacing(std::string_view name) {
  if (name == "linear") return Spacing::Linear;
  if (name == "log") return Spacing::Log;
  fail(ErrorCode::InvalidArgument, "spacing must be 'linear' or 'log'");
}

std::string_view to_string(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

std::vector<double> distance_grid(double d_min, double d_max, std::size_t n_points,
                                  Spacing spacing) {
  if (!(d_min > 0.0) || !(d_max > d_min)) {
    fail(ErrorCode::InvalidArgument, "distance range must satisfy 0 < d_min < d_max");
  }
  if (n_points < 2) fail(ErrorCode::InvalidArgument, "at least 2 grid points required");
  std::vector<double> grid(n_points);
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / last;
    grid[i] = spacing == Spacing::Linear ? d_min + t * (d_max - d_min)
                                         : d_min * std::pow(d_max / d_min, t);
  }
  grid.front() = d_min;
  grid.back() = d_max;
  return grid;
}

namespace {

struct PointResult {
  double loss = 0.0;
  bool ok = false;
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string reason;
};

PointResult evaluate_point(ModelId id, const ModelContext& ctx, double d) {
  PointResult r;
  try {
    r.loss = evaluate(id, ctx, d);
    r.ok = std::isfinite(r.loss);
    if (!r.ok) {
      r.code = ErrorCode::NumericalFailure;
      r.reason = "non-finite loss";
    }
  } catch (const Error& e) {
    r.code = e.code();
    r.reason = e.what();
  }
  return r;
}

}  // namespace

ModelCurve sweep(ModelId id, const ModelContext& ctx, std::span<const double> grid,
                 unsigned threads) {
  std::vector<PointResult> results(grid.size());
  const std::size_t n = grid.size();
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = evaluate_point(id, ctx, grid[i]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) results[i] = evaluate_point(id, ctx, grid[i]);
      });
    }
  }

  ModelCurve curve{id, {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].ok) {
      curve.distances.push_back(grid[i]);
      curve.losses.push_back(results[i].loss);
    } else {
      curve.skipped.push_back({grid[i], results[i].code, std::move(results[i].reason)});
    }
  }
  return curve;
}

ModelCurve sweep(ModelId id, const ModelContext& ctx, double d_min, double d_max,
                 std::size_t n_points, Spacing spacing, unsigned threads) {
  const std::vector<double> grid = distance_grid(d_min, d_max, n_points, spacing);
  return sweep(id, ctx, grid, threads);
}

RangeResult max_range(ModelId id, const ModelContext& ctx, const RadioConfig& radio, double cap,
                      double d_floor) {
  radio.validate();
  if (!(d_floor > 0.0) || !(cap > d_floor)) {
    fail(ErrorCode::InvalidArgument, "range search needs 0 < floor < cap");
  }
  const double budget = radio.link_budget();
  auto covered = [&](double d) {
    const PointResult r = evaluate_point(id, ctx, d);
    if (!r.ok && r.code != ErrorCode::NoSpecularPoint && r.code != ErrorCode::NumericalFailure) {
      throw Error(r.code, r.reason);
    }
    return r.ok && r.loss <= budget;
  };

  if (!covered(d_floor)) {
    fail(ErrorCode::NoCoverage, "link budget of " + std::to_string(budget) +
                                    " dB fails at " + std::to_string(d_floor) + " m");
  }
  if (covered(cap)) return {cap, true, budget};

  // Oscillating two-ray models may dip below the budget before the final
  // crossing, so scan the whole axis instead of bisecting from the ends.
  constexpr std::size_t kScanPoints = 4000;
  const std::vector<double> grid = distance_grid(d_floor, cap, kScanPoints, Spacing::Log);
  std::size_t last_ok = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (covered(grid[i])) last_ok = i;
  }
  double lo = grid[last_ok];
  double hi = grid[last_ok + 1];
  for (int iter = 0; iter < 100 && hi - lo > 1e-9 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (covered(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false, budget};
}

}  // namespace sealoss
