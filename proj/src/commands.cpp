#include "sealoss/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "sealoss/fit_metrics.hpp"
#include "sealoss/ingest.hpp"

namespace sealoss {

namespace fs = std::filesystem;
using detail::fail;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
      return kExitConfig;
    case ErrorCode::NoSpecularPoint:
    case ErrorCode::NumericalFailure:
    case ErrorCode::AntennaTooHigh:
    case ErrorCode::FrequencyOutOfRange:
    case ErrorCode::NotImplemented:
    case ErrorCode::MissingParameters:
      return kExitModelDomain;
    case ErrorCode::EmptyLog:
    case ErrorCode::NoValidSamples:
    case ErrorCode::DegenerateFit:
      return kExitNoSamples;
    case ErrorCode::NoCoverage:
      return kExitNoCoverage;
    default:
      return kExitFailure;
  }
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) fail(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

CampaignConfig resolve_config(const std::optional<fs::path>& path) {
  if (path) return load_config(*path);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return load_config(env);
  }
  CampaignConfig cfg;
  cfg.name = "default";
  cfg.validate();
  return cfg;
}

std::vector<ModelId> parse_model_list(const std::vector<std::string>& names) {
  if (names.empty()) return comparison_models();
  std::vector<ModelId> out;
  for (const auto& raw : names) {
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (item == "all") {
        for (ModelId id : comparison_models()) out.push_back(id);
        continue;
      }
      out.push_back(parse_model_id(item));
    }
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "empty model list");
  std::vector<ModelId> unique;
  for (ModelId id : out) {
    if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
  }
  return unique;
}

namespace {

std::string num(double v) { return fmt::format("{:.6f}", v); }

std::string json_text(const json& doc) { return doc.dump(2) + "\n"; }

template <typename Body>
CommandResult guarded(Body&& body) {
  CommandResult result;
  try {
    body(result);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.code());
    result.report += fmt::format("error [{}]: {}\n", to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    result.exit_code = kExitFailure;
    result.report += fmt::format("error: {}\n", e.what());
  }
  return result;
}

std::string curve_csv(const ModelCurve& c) {
  std::string out = "distance_m,loss_db,model_id\n";
  const std::string_view id = to_string(c.model);
  for (std::size_t i = 0; i < c.distances.size(); ++i) {
    out += fmt::format("{},{},{}\n", num(c.distances[i]), num(c.losses[i]), id);
  }
  return out;
}

json curve_json(const ModelCurve& c, const ModelContext& ctx) {
  json skipped = json::array();
  for (const auto& s : c.skipped) {
    skipped.push_back(
        {{"distance_m", s.distance}, {"error", to_string(s.code)}, {"reason", s.reason}});
  }
  return {{"model_id", to_string(c.model)},
          {"notes", model_notes(c.model, ctx)},
          {"distance_m", c.distances},
          {"loss_db", c.losses},
          {"skipped", skipped}};
}

std::string budget_table(const RadioConfig& r) {
  std::string out;
  out += fmt::format("  {:<22}{:>10.2f} dBm\n", "tx power", r.tx_power);
  out += fmt::format("  {:<22}{:>10.2f} dBi\n", "tx antenna gain", r.tx_antenna_gain);
  out += fmt::format("  {:<22}{:>10.2f} dBi\n", "rx antenna gain", r.rx_antenna_gain);
  out += fmt::format("  {:<22}{:>10.2f} dB\n", "polarization loss", r.polarization_loss);
  out += fmt::format("  {:<22}{:>10.2f} dBm\n", "rx sensitivity", r.rx_sensitivity);
  out += fmt::format("  {:<22}{:>10.2f} dB\n", "max path loss", r.link_budget());
  return out;
}

std::string sample_status(const MeasurementRecord& r) {
  if (r.below_minimum) return "below_minimum";
  if (r.excluded) return "excluded:" + r.exclusion_label;
  return "used";
}

}  // namespace

CommandResult cmd_curves(const CurvesRequest& req) {
  return guarded([&](CommandResult& result) {
    const CampaignConfig cfg = resolve_config(req.config);
    std::vector<ModelId> models = parse_model_list(req.models);
    const ModelContext ctx = cfg.model_context();
    if (req.models.empty() && !ctx.log_distance) {
      std::erase(models, ModelId::LogDistance);
      result.report += "log_distance: omitted, config has no log_distance parameters\n";
    }
    const std::vector<double> grid = distance_grid(req.d_min, req.d_max, req.points, req.spacing);

    json curves = json::array();
    std::vector<std::string> empty_models;
    for (ModelId id : models) {
      const ModelCurve curve = sweep(id, ctx, grid, req.threads);
      curves.push_back(curve_json(curve, ctx));
      if (curve.distances.empty()) {
        const std::string why = curve.skipped.empty() ? "no points" : curve.skipped.front().reason;
        result.report += fmt::format("{}: no evaluable point ({})\n", to_string(id), why);
        empty_models.emplace_back(to_string(id));
        continue;
      }
      const fs::path csv = req.out / fmt::format("curve_{}.csv", to_string(id));
      write_file_atomic(csv, curve_csv(curve));
      result.artifacts.push_back(csv);
      result.report += fmt::format("{}: {} points, {} skipped\n", to_string(id),
                                   curve.distances.size(), curve.skipped.size());
    }

    const json doc = {
        {"command", "curves"},
        {"config", to_json(cfg)},
        {"grid",
         {{"d_min_m", req.d_min},
          {"d_max_m", req.d_max},
          {"points", req.points},
          {"spacing", to_string(req.spacing)}}},
        {"curves", curves},
    };
    const fs::path combined = req.out / "curves.json";
    write_file_atomic(combined, json_text(doc));
    result.artifacts.push_back(combined);
    if (!empty_models.empty()) result.exit_code = kExitModelDomain;
  });
}

CommandResult cmd_analyze(const AnalyzeRequest& req) {
  return guarded([&](CommandResult& result) {
    const CampaignConfig cfg = resolve_config(req.config);
    const std::vector<ModelId> models = parse_model_list(req.models);

    std::ifstream log_in(req.log);
    if (!log_in) fail(ErrorCode::InvalidArgument, "cannot open log " + req.log.string());
    ParsedLog parsed = parse_log(log_in);

    CalibrationTable table = CalibrationTable::identity();
    if (req.calibration) {
      std::ifstream cal_in(*req.calibration);
      if (!cal_in) {
        fail(ErrorCode::InvalidArgument, "cannot open calibration " + req.calibration->string());
      }
      table = CalibrationTable::from_csv(cal_in);
    }

    auto records = apply_calibration(std::move(parsed.records), table);
    records = geolocate(std::move(records), cfg);
    records = rssi_to_pathloss(std::move(records), cfg.radio);

    // The scatter file and rejects are useful even when the fit fails.
    std::string samples_csv =
        "line,timestamp,lat,lon,raw_rssi_dbm,calibrated_rssi_dbm,calibration_clamped,distance_m,"
        "path_loss_db,status\n";
    for (const auto& r : records) {
      samples_csv += fmt::format("{},{},{:.7f},{:.7f},{},{},{},{},{},{}\n", r.line,
                                 format_iso8601_utc(r.timestamp), r.position.latitude,
                                 r.position.longitude, num(r.raw_rssi), num(*r.calibrated_rssi),
                                 r.calibration_clamped ? 1 : 0, num(*r.distance),
                                 num(*r.path_loss), sample_status(r));
    }
    const fs::path samples_path = req.out / "samples.csv";
    write_file_atomic(samples_path, samples_csv);
    result.artifacts.push_back(samples_path);

    std::string rejects_csv = "line,reason\n";
    for (const auto& r : parsed.rejects) rejects_csv += fmt::format("{},\"{}\"\n", r.line, r.reason);
    const fs::path rejects_path = req.out / "rejects.csv";
    write_file_atomic(rejects_path, rejects_csv);
    result.artifacts.push_back(rejects_path);

    const SampleSet samples = to_sample_set(records, req.log.filename().string());
    const LogDistanceFit fit = fit_log_distance(samples, cfg.analysis.fit_reference_distance);

    ModelContext ctx = cfg.model_context();
    ctx.log_distance = fit.params;
    CompareOptions options;
    options.bins = req.bins;
    options.fit_reference_distance = cfg.analysis.fit_reference_distance;
    options.threads = req.threads;
    const ModelComparison cmp = compare_models(samples, models, ctx, options);

    const json inputs = {
        {"log", req.log.generic_string()},
        {"calibration", req.calibration ? json(req.calibration->generic_string()) : json()},
        {"bins", req.bins},
    };
    const std::size_t n_excluded = static_cast<std::size_t>(std::count_if(
        records.begin(), records.end(), [](const auto& r) { return r.excluded || r.below_minimum; }));

    const json fit_doc = {
        {"command", "analyze"},
        {"config", to_json(cfg)},
        {"inputs", inputs},
        {"log_distance", to_json(fit.params)},
        {"n_standard_error", std::isfinite(fit.n_standard_error) ? json(fit.n_standard_error) : json()},
        {"residual_std_db", fit.residual_std},
        {"n_samples", fit.n_samples},
        {"n_records", records.size()},
        {"n_excluded_records", n_excluded},
        {"n_rejected_rows", parsed.rejects.size()},
    };
    const fs::path fit_path = req.out / "fit.json";
    write_file_atomic(fit_path, json_text(fit_doc));
    result.artifacts.push_back(fit_path);

    std::string report_csv = "model_id,rmse_db,mae_db,bias_db,n_samples,n_excluded\n";
    json rows = json::array();
    for (const auto& r : cmp.reports) {
      report_csv += fmt::format("{},{},{},{},{},{}\n", r.model_id(), num(r.rmse()), num(r.mae()),
                                num(r.bias()), r.n_samples(), r.n_excluded());
      rows.push_back({{"model_id", r.model_id()},
                      {"rmse_db", r.rmse()},
                      {"mae_db", r.mae()},
                      {"bias_db", r.bias()},
                      {"n_samples", r.n_samples()},
                      {"n_excluded", r.n_excluded()}});
    }
    json failures = json::array();
    for (const auto& f : cmp.failures) {
      failures.push_back({{"model_id", f.model_id}, {"reason", f.reason}});
    }
    const fs::path report_csv_path = req.out / "report.csv";
    write_file_atomic(report_csv_path, report_csv);
    result.artifacts.push_back(report_csv_path);
    const json report_doc = {
        {"command", "analyze"},
        {"config", to_json(cfg)},
        {"inputs", inputs},
        {"reports", rows},
        {"failures", failures},
    };
    const fs::path report_json_path = req.out / "report.json";
    write_file_atomic(report_json_path, json_text(report_doc));
    result.artifacts.push_back(report_json_path);

    // Curves over the sample span, for plotting against the scatter.
    const double d_lo = samples.samples.front().distance;
    const double d_hi = samples.samples.back().distance;
    std::string curves_csv = "distance_m,loss_db,model_id\n";
    if (d_hi > d_lo) {
      const auto grid = distance_grid(d_lo, d_hi, 200, Spacing::Log);
      for (ModelId id : models) {
        const ModelCurve c = sweep(id, ctx, grid, req.threads);
        const std::string csv = curve_csv(c);
        curves_csv += csv.substr(csv.find('\n') + 1);
      }
    }
    const fs::path curves_path = req.out / "model_curves.csv";
    write_file_atomic(curves_path, curves_csv);
    result.artifacts.push_back(curves_path);

    std::string& rep = result.report;
    rep += fmt::format("campaign {}: {} records, {} rejected, {} excluded, {} samples\n", cfg.name,
                       records.size(), parsed.rejects.size(), n_excluded, samples.size());
    rep += fmt::format("log-distance fit: n = {:.3f}, L_p0 = {:.2f} dB at d0 = {:g} m\n",
                       fit.params.n, fit.params.l_p0, fit.params.d_0);
    rep += fmt::format("{:<14}{:>10}{:>10}{:>10}\n", "model", "RMSE", "MAE", "bias");
    for (const auto& r : cmp.reports) {
      rep += fmt::format("{:<14}{:>10.2f}{:>10.2f}{:>10.2f}\n", r.model_id(), r.rmse(), r.mae(),
                         r.bias());
    }
    for (const auto& f : cmp.failures) rep += fmt::format("{:<14} failed: {}\n", f.model_id, f.reason);
    for (const auto& w : parsed.warnings) rep += "warning: " + w + "\n";
  });
}

CommandResult cmd_range(const RangeRequest& req) {
  return guarded([&](CommandResult& result) {
    CampaignConfig cfg = resolve_config(req.config);
    if (req.sensitivity) {
      cfg.radio.rx_sensitivity = *req.sensitivity;
      cfg.validate();
    }
    std::vector<ModelId> models = parse_model_list(req.models);
    const ModelContext ctx = cfg.model_context();
    if (req.models.empty() && !ctx.log_distance) {
      std::erase(models, ModelId::LogDistance);
    }

    std::string& rep = result.report;
    rep += fmt::format("link budget ({})\n", cfg.name);
    rep += budget_table(cfg.radio);
    rep += fmt::format("{:<20}{:>14}\n", "model", "max range");

    json rows = json::array();
    bool domain_error = false;
    bool no_coverage = false;
    for (ModelId id : models) {
      const std::string name(to_string(id));
      try {
        const RangeResult r = max_range(id, ctx, cfg.radio, req.cap);
        if (r.capped) {
          rep += fmt::format("{:<20}{:>11.3f} km (limit reached)\n", name, r.distance / 1000.0);
        } else {
          rep += fmt::format("{:<20}{:>11.3f} km\n", name, r.distance / 1000.0);
        }
        rows.push_back({{"model_id", name}, {"max_range_m", r.distance}, {"capped", r.capped}});
      } catch (const Error& e) {
        rep += fmt::format("{:<20}{:>14}  {}\n", name, to_string(e.code()), e.what());
        rows.push_back({{"model_id", name}, {"error", to_string(e.code())}, {"reason", e.what()}});
        if (e.code() == ErrorCode::NoCoverage) {
          no_coverage = true;
        } else {
          domain_error = true;
        }
      }
    }
    if (req.out) {
      const json doc = {
          {"command", "range"},
          {"config", to_json(cfg)},
          {"budget_db", cfg.radio.link_budget()},
          {"cap_m", req.cap},
          {"models", rows},
      };
      const fs::path path = *req.out / "range.json";
      write_file_atomic(path, json_text(doc));
      result.artifacts.push_back(path);
    }
    if (no_coverage) {
      result.exit_code = kExitNoCoverage;
    } else if (domain_error) {
      result.exit_code = kExitModelDomain;
    }
  });
}

CommandResult cmd_synth(const SynthRequest& req) {
  return guarded([&](CommandResult& result) {
    const CampaignConfig cfg = resolve_config(req.config);
    const ModelId model = parse_model_id(req.model);
    const ModelContext ctx = cfg.model_context();
    if (req.samples < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
    if (!(req.noise_sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
    const auto start = parse_iso8601_utc(req.start);
    if (!start) fail(ErrorCode::InvalidArgument, "bad start timestamp");

    const auto grid = distance_grid(req.d_min, req.d_max, req.samples, Spacing::Linear);
    std::mt19937_64 rng(req.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double gain = cfg.radio.tx_power + cfg.radio.tx_antenna_gain +
                        cfg.radio.rx_antenna_gain - cfg.radio.polarization_loss;

    std::string csv = "timestamp,lat,lon,rssi_dbm\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double loss = evaluate(model, ctx, grid[i]) + req.noise_sigma * noise(rng);
      const GeoPoint p = destination_point(cfg.bs_position, req.bearing, grid[i], cfg.earth);
      csv += fmt::format("{},{:.7f},{:.7f},{:.2f}\n",
                         format_iso8601_utc(*start + static_cast<double>(i) * req.interval),
                         p.latitude, p.longitude, gain - loss);
    }
    write_file_atomic(req.out, csv);
    result.artifacts.push_back(req.out);
    result.report = fmt::format("{} rows from {} (sigma {:g} dB, seed {}) -> {}\n", grid.size(),
                                to_string(model), req.noise_sigma, req.seed, req.out.string());
  });
}

}  // namespace sealoss
