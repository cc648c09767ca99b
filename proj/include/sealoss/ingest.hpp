#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sealoss/fit_metrics.hpp"
#include "sealoss/geometry.hpp"
#include "sealoss/models.hpp"
#include "sealoss/propagation.hpp"

namespace sealoss {

struct MeasurementRecord {
  std::size_t line = 0;       // 1-based line in the source log
  double timestamp = 0.0;     // UTC seconds since the epoch
  GeoPoint position;
  double raw_rssi = 0.0;      // dBm
  std::optional<double> calibrated_rssi;
  std::optional<double> distance;
  std::optional<double> path_loss;
  bool calibration_clamped = false;
  bool excluded = false;
  bool below_minimum = false;
  std::string exclusion_label;
};

struct RejectedRow {
  std::size_t line;
  std::string reason;
};

struct ParsedLog {
  std::vector<MeasurementRecord> records;
  std::vector<RejectedRow> rejects;
  std::vector<std::string> warnings;
};

/// Parses ISO-8601 UTC timestamps ("2019-08-14T10:23:45Z", optional fraction,
/// optional "Z" or "+00:00"). Returns nullopt on malformed input.
std::optional<double> parse_iso8601_utc(std::string_view text);
std::string format_iso8601_utc(double seconds);

/// CSV with header timestamp,lat,lon,rssi_dbm (any order, extra columns
/// ignored). Malformed rows go to `rejects`, never silently dropped.
/// Throws EmptyLog without a header line and HeaderMismatch when a required
/// column is missing.
ParsedLog parse_log(std::istream& in);

/// Per-level RSSI corrections measured against a step attenuator.
class CalibrationTable {
 public:
  struct Entry {
    double reported_rssi;  // dBm
    double correction;     // dB
  };

  explicit CalibrationTable(std::vector<Entry> entries);
  static CalibrationTable identity();
  /// CSV with header reported_rssi_dbm,correction_db.
  static CalibrationTable from_csv(std::istream& in);

  /// Linear interpolation between entries, clamped to the end entries outside
  /// the table. `clamped` reports the latter.
  [[nodiscard]] double correction_at(double reported_rssi, bool* clamped = nullptr) const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

struct ExclusionZone {
  enum class Kind { Time, Distance };
  Kind kind = Kind::Distance;
  double begin = 0.0;  // UTC seconds or metres
  double end = 0.0;
  std::string label;

  [[nodiscard]] bool contains(const MeasurementRecord& r) const;
};

struct AnalysisOptions {
  double fit_reference_distance = 100.0;  // m
  double min_distance = 1.0;              // m; closer records are flagged below-minimum
};

/// One measurement campaign: hardware, geometry, sea and exclusions.
struct CampaignConfig {
  std::string name = "campaign";
  GeoPoint bs_position;
  RadioConfig radio;
  double tx_height = 0.35;  // mobile unit antenna (m)
  double rx_height = 5.2;   // base-station antenna (m)
  EarthModel earth;
  SeaState sea;
  Polarization polarization = Polarization::Vertical;
  ReflectionOptions reflection;
  ItuParams itu;
  std::optional<LogDistanceParams> log_distance;
  AnalysisOptions analysis;
  std::vector<ExclusionZone> exclusion_zones;

  void validate() const;
  [[nodiscard]] ModelContext model_context() const;
};

/// raw -> calibrated RSSI. Throws AlreadyCalibrated when a non-identity table
/// meets records that already carry a calibrated value.
std::vector<MeasurementRecord> apply_calibration(std::vector<MeasurementRecord> records,
                                                 const CalibrationTable& table);

/// Attaches the great-circle distance to the base station and flags exclusions.
std::vector<MeasurementRecord> geolocate(std::vector<MeasurementRecord> records,
                                         const CampaignConfig& cfg);

/// path loss = tx power + tx gain + (rx gain - polarization loss) - calibrated RSSI.
/// Throws MissingCalibration on uncalibrated records.
std::vector<MeasurementRecord> rssi_to_pathloss(std::vector<MeasurementRecord> records,
                                                const RadioConfig& radio);

/// (distance, path loss) of the usable records, sorted by distance.
/// Throws NoValidSamples when nothing survives.
SampleSet to_sample_set(const std::vector<MeasurementRecord>& records,
                        std::string source_id = "measurements");

}  // namespace sealoss
