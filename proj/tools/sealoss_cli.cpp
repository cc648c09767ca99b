#include <CLI11.hpp>

#include <iostream>

#include "sealoss/commands.hpp"

namespace {

int finish(const sealoss::CommandResult& r) {
  std::cout << r.report;
  for (const auto& a : r.artifacts) std::cout << "wrote " << a.generic_string() << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sealoss;
  CLI::App app{"Over-sea path-loss models and measurement analysis"};
  app.require_subcommand(1);

  std::string config;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "campaign JSON (default: $SEALOSS_CONFIG)");
  };
  auto config_path = [&]() -> std::optional<std::filesystem::path> {
    if (config.empty()) return std::nullopt;
    return std::filesystem::path(config);
  };

  CurvesRequest curves;
  std::string spacing = "log";
  auto* c = app.add_subcommand("curves", "write model curves over a distance grid");
  add_config(c);
  c->add_option("--models", curves.models, "comma-separated model ids or 'all'")->delimiter(',');
  c->add_option("--dmin", curves.d_min, "m")->capture_default_str();
  c->add_option("--dmax", curves.d_max, "m")->capture_default_str();
  c->add_option("--points", curves.points)->capture_default_str();
  c->add_option("--spacing", spacing, "log or linear")->capture_default_str();
  c->add_option("--out", curves.out, "output directory")->capture_default_str();
  c->add_option("--threads", curves.threads)->capture_default_str();

  AnalyzeRequest analyze;
  std::string cal;
  auto* a = app.add_subcommand("analyze", "fit and compare models against a measurement log");
  add_config(a);
  a->add_option("--log", analyze.log, "measurement CSV")->required();
  a->add_option("--cal", cal, "calibration CSV (default: identity)");
  a->add_option("--models", analyze.models)->delimiter(',');
  a->add_option("--bins", analyze.bins, "average into N log-spaced bins first")
      ->capture_default_str();
  a->add_option("--out", analyze.out, "output directory")->capture_default_str();
  a->add_option("--threads", analyze.threads)->capture_default_str();

  RangeRequest range;
  double sensitivity = 0.0;
  std::string range_out;
  auto* r = app.add_subcommand("range", "maximum range per model from the link budget");
  add_config(r);
  r->add_option("--models", range.models)->delimiter(',');
  auto* sens = r->add_option("--sensitivity", sensitivity, "dBm, overrides the config");
  r->add_option("--dmax", range.cap, "search limit (m)")->capture_default_str();
  r->add_option("--out", range_out, "write range.json here");

  SynthRequest synth;
  auto* s = app.add_subcommand("synth", "generate a synthetic measurement log");
  add_config(s);
  s->add_option("--model", synth.model)->capture_default_str();
  s->add_option("--samples", synth.samples)->capture_default_str();
  s->add_option("--dmin", synth.d_min)->capture_default_str();
  s->add_option("--dmax", synth.d_max)->capture_default_str();
  s->add_option("--sigma", synth.noise_sigma, "noise (dB)")->capture_default_str();
  s->add_option("--bearing", synth.bearing, "degrees from north")->capture_default_str();
  s->add_option("--seed", synth.seed)->capture_default_str();
  s->add_option("--start", synth.start)->capture_default_str();
  s->add_option("--out", synth.out, "output CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (c->parsed()) {
      curves.config = config_path();
      curves.spacing = parse_spacing(spacing);
      return finish(cmd_curves(curves));
    }
    if (a->parsed()) {
      analyze.config = config_path();
      if (!cal.empty()) analyze.calibration = cal;
      return finish(cmd_analyze(analyze));
    }
    if (r->parsed()) {
      range.config = config_path();
      if (*sens) range.sensitivity = sensitivity;
      if (!range_out.empty()) range.out = range_out;
      return finish(cmd_range(range));
    }
    if (s->parsed()) {
      synth.config = config_path();
      return finish(cmd_synth(synth));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitFailure;
}
