#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sealoss/commands.hpp"
#include "sealoss/fit_metrics.hpp"
#include "sealoss/models.hpp"
#include "sealoss/units.hpp"

namespace py = pybind11;
using namespace sealoss;

namespace {

CampaignConfig config_from(const std::string& json_text) {
  if (json_text.empty()) return parse_config(nlohmann::json::object());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return parse_config(doc);
}

SampleSet samples_from(const std::vector<double>& distances, const std::vector<double>& losses) {
  if (distances.size() != losses.size()) {
    throw Error(ErrorCode::LengthMismatch, "distances and losses differ in length");
  }
  SampleSet set;
  for (std::size_t i = 0; i < distances.size(); ++i) set.samples.push_back({distances[i], losses[i]});
  return set;
}

py::dict result_dict(const CommandResult& r) {
  py::dict out;
  out["exit_code"] = r.exit_code;
  out["artifacts"] = r.artifacts;
  out["report"] = r.report;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Over-sea path-loss models and measurement analysis";

  static py::exception<Error> error_type(m, "SealossError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  m.def("wavelength", &wavelength, py::arg("frequency"));
  m.def("free_space_loss", &free_space_loss, py::arg("distance"), py::arg("frequency"));
  m.def(
      "two_ray_flat",
      [](double d, double ht, double hr, double f, std::complex<double> r) {
        return two_ray_flat(d, ht, hr, f, r);
      },
      py::arg("distance"), py::arg("tx_height"), py::arg("rx_height"), py::arg("frequency"),
      py::arg("reflection") = std::complex<double>(-1.0, 0.0));
  m.def(
      "great_circle_distance",
      [](double lat1, double lon1, double lat2, double lon2) {
        return great_circle_distance(GeoPoint::make(lat1, lon1), GeoPoint::make(lat2, lon2));
      },
      py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));

  m.def(
      "characteristic_distances",
      [](const std::string& config) {
        const CampaignConfig cfg = config_from(config);
        const LinkGeometry g = cfg.model_context().geometry(1.0);
        py::dict out;
        out["critical_m"] = critical_distance(g, wavelength(cfg.radio.frequency));
        out["fresnel60_m"] = fresnel60_distance(g, cfg.radio.frequency);
        out["horizon_m"] = horizon_distance(g);
        return out;
      },
      py::arg("config") = "");

  m.def("model_ids", [] {
    std::vector<std::string> out;
    for (ModelId id : all_models()) out.emplace_back(to_string(id));
    return out;
  });

  m.def(
      "curve",
      [](const std::string& model, const std::vector<double>& distances, const std::string& config,
         unsigned threads) {
        const CampaignConfig cfg = config_from(config);
        const ModelCurve c = sweep(parse_model_id(model), cfg.model_context(), distances, threads);
        py::list skipped;
        for (const auto& s : c.skipped) {
          skipped.append(py::make_tuple(s.distance, std::string(to_string(s.code)), s.reason));
        }
        py::dict out;
        out["distances"] = c.distances;
        out["losses"] = c.losses;
        out["skipped"] = skipped;
        return out;
      },
      py::arg("model"), py::arg("distances"), py::arg("config") = "", py::arg("threads") = 1);

  m.def(
      "fit_log_distance",
      [](const std::vector<double>& distances, const std::vector<double>& losses, double d0) {
        const LogDistanceFit fit = fit_log_distance(samples_from(distances, losses), d0);
        py::dict out;
        out["n"] = fit.params.n;
        out["l_p0"] = fit.params.l_p0;
        out["d0"] = fit.params.d_0;
        out["n_standard_error"] = fit.n_standard_error;
        out["residual_std"] = fit.residual_std;
        return out;
      },
      py::arg("distances"), py::arg("losses"), py::arg("d0") = 100.0);

  m.def(
      "rmse",
      [](const std::vector<double>& p, const std::vector<double>& q) { return rmse(p, q); },
      py::arg("predicted"), py::arg("measured"));
  m.def(
      "mae",
      [](const std::vector<double>& p, const std::vector<double>& q) { return mae(p, q); },
      py::arg("predicted"), py::arg("measured"));

  m.def(
      "compare_models",
      [](const std::vector<double>& distances, const std::vector<double>& losses,
         const std::vector<std::string>& models, const std::string& config, std::size_t bins) {
        const CampaignConfig cfg = config_from(config);
        CompareOptions opts;
        opts.bins = bins;
        opts.fit_reference_distance = cfg.analysis.fit_reference_distance;
        const std::vector<ModelId> ids = parse_model_list(models);
        const ModelComparison cmp =
            compare_models(samples_from(distances, losses), ids, cfg.model_context(), opts);
        py::list rows;
        for (const auto& r : cmp.reports) {
          py::dict row;
          row["model_id"] = r.model_id();
          row["rmse"] = r.rmse();
          row["mae"] = r.mae();
          row["bias"] = r.bias();
          row["n_samples"] = r.n_samples();
          row["n_excluded"] = r.n_excluded();
          rows.append(row);
        }
        py::list failures;
        for (const auto& f : cmp.failures) failures.append(py::make_tuple(f.model_id, f.reason));
        py::dict out;
        out["reports"] = rows;
        out["failures"] = failures;
        return out;
      },
      py::arg("distances"), py::arg("losses"), py::arg("models") = std::vector<std::string>{},
      py::arg("config") = "", py::arg("bins") = 0);

  m.def(
      "max_range",
      [](const std::string& model, const std::string& config, double cap) {
        const CampaignConfig cfg = config_from(config);
        const RangeResult r = max_range(parse_model_id(model), cfg.model_context(), cfg.radio, cap);
        py::dict out;
        out["distance"] = r.distance;
        out["capped"] = r.capped;
        out["budget"] = r.budget;
        return out;
      },
      py::arg("model"), py::arg("config") = "", py::arg("cap") = 100'000.0);

  m.def(
      "run_curves",
      [](std::optional<std::filesystem::path> config, std::vector<std::string> models, double d_min,
         double d_max, std::size_t points, const std::string& spacing, std::filesystem::path out,
         unsigned threads) {
        CurvesRequest req;
        req.config = std::move(config);
        req.models = std::move(models);
        req.d_min = d_min;
        req.d_max = d_max;
        req.points = points;
        req.spacing = parse_spacing(spacing);
        req.out = std::move(out);
        req.threads = threads;
        return result_dict(cmd_curves(req));
      },
      py::arg("config"), py::arg("models") = std::vector<std::string>{}, py::arg("d_min") = 100.0,
      py::arg("d_max") = 10'000.0, py::arg("points") = 200, py::arg("spacing") = "log",
      py::arg("out") = "out", py::arg("threads") = 1);

  m.def(
      "run_analyze",
      [](std::optional<std::filesystem::path> config, std::filesystem::path log,
         std::optional<std::filesystem::path> calibration, std::filesystem::path out,
         std::size_t bins, unsigned threads) {
        AnalyzeRequest req;
        req.config = std::move(config);
        req.log = std::move(log);
        req.calibration = std::move(calibration);
        req.out = std::move(out);
        req.bins = bins;
        req.threads = threads;
        return result_dict(cmd_analyze(req));
      },
      py::arg("config"), py::arg("log"), py::arg("calibration") = py::none(),
      py::arg("out") = "out", py::arg("bins") = 0, py::arg("threads") = 1);

  m.def(
      "run_range",
      [](std::optional<std::filesystem::path> config, std::vector<std::string> models,
         std::optional<double> sensitivity, double cap) {
        RangeRequest req;
        req.config = std::move(config);
        req.models = std::move(models);
        req.sensitivity = sensitivity;
        req.cap = cap;
        return result_dict(cmd_range(req));
      },
      py::arg("config"), py::arg("models") = std::vector<std::string>{},
      py::arg("sensitivity") = py::none(), py::arg("cap") = 100'000.0);
}
